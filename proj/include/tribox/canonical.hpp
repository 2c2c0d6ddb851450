// Copyright 2026 The tribox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIBOX_CANONICAL_HPP
#define TRIBOX_CANONICAL_HPP

#include <array>
#include <charconv>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tribox/box.hpp"
#include "tribox/measures.hpp"

namespace tribox {

// Canonical vertex tags. Bits are stored packed, most significant first in
// the order the parameters are named, so "det:100000" is α=1.

struct DeterministicTag {
    unsigned bits = 0;  // αβγεζη
    bool operator==(const DeterministicTag &) const = default;
};
struct PrTag {
    Pairing pairing = Pairing::AB;
    unsigned bits = 0;  // αβγεη
    bool operator==(const PrTag &) const = default;
};
struct SvetlichnyTag {
    unsigned bits = 0;  // αβγε
    bool operator==(const SvetlichnyTag &) const = default;
};
struct Class8Tag {
    bool operator==(const Class8Tag &) const = default;
};
struct MerminMmTag {
    unsigned variant = 0;
    bool operator==(const MerminMmTag &) const = default;
};
struct MerminNmmTag {
    unsigned variant = 0;
    bool operator==(const MerminNmmTag &) const = default;
};
struct NoiseTag {
    bool operator==(const NoiseTag &) const = default;
};

using CanonicalVertex =
    std::variant<DeterministicTag, PrTag, SvetlichnyTag, Class8Tag, MerminMmTag, MerminNmmTag, NoiseTag>;

inline constexpr unsigned kMerminVariants = 16;
inline constexpr unsigned kNmmPerMermin = 12;
inline constexpr unsigned kNmmVariants = kMerminVariants * kNmmPerMermin;

namespace detail {
constexpr unsigned bit(unsigned word, unsigned width, unsigned pos) noexcept { return (word >> (width - 1 - pos)) & 1u; }
}  // namespace detail

inline Behavior to_behavior(const DeterministicTag &t) {
    auto b = [&](unsigned p) { return detail::bit(t.bits, 6, p); };
    return deterministic_box(b(0), b(1), b(2), b(3), b(4), b(5));
}
inline Behavior to_behavior(const PrTag &t) {
    auto b = [&](unsigned p) { return detail::bit(t.bits, 5, p); };
    return pr_box(t.pairing, b(0), b(1), b(2), b(3), b(4));
}
inline Behavior to_behavior(const SvetlichnyTag &t) {
    auto b = [&](unsigned p) { return detail::bit(t.bits, 4, p); };
    return svetlichny_box(b(0), b(1), b(2), b(3));
}

/// 64 deterministic vertices in tag order.
inline const std::vector<DeterministicTag> &deterministic_tags() {
    static const std::vector<DeterministicTag> tags = [] {
        std::vector<DeterministicTag> v;
        for (unsigned t = 0; t < 64; ++t) v.push_back({t});
        return v;
    }();
    return tags;
}

/// 96 bipartite PR vertices: 3 pairings x 8 PR boxes x 4 deterministic
/// boxes of the remaining party.
inline const std::vector<PrTag> &pr_tags() {
    static const std::vector<PrTag> tags = [] {
        std::vector<PrTag> v;
        for (Pairing p : {Pairing::AB, Pairing::AC, Pairing::BC})
            for (unsigned t = 0; t < 32; ++t) v.push_back({p, t});
        return v;
    }();
    return tags;
}

inline const std::vector<SvetlichnyTag> &svetlichny_tags() {
    static const std::vector<SvetlichnyTag> tags = [] {
        std::vector<SvetlichnyTag> v;
        for (unsigned t = 0; t < 16; ++t) v.push_back({t});
        return v;
    }();
    return tags;
}

/// The Mermin functional (packed αβγε) that variant v saturates at +4.
constexpr unsigned mermin_functional_of_variant(unsigned v) noexcept { return (v & 15u) ^ 0b1110u; }

namespace detail {

struct MerminTable {
    std::vector<Behavior> boxes;
    std::vector<LocalReversibleOp> ops;
    std::vector<std::pair<unsigned, unsigned>> sv_pairs;
    std::vector<std::array<std::pair<unsigned, unsigned>, kNmmPerMermin>> nmm_pairs;  // indices into pr_tags()
};

inline bool same_triples(const CorrelatorVector &x, const CorrelatorVector &y, double tol = kExactTol) {
    for (int t = 0; t < 8; ++t)
        if (std::abs(x.abc[t] - y.abc[t]) > tol) return false;
    return true;
}

inline LocalReversibleOp lro_from_masks(unsigned swaps, unsigned flips) {
    LocalReversibleOp op;
    for (unsigned q = 0; q < 3; ++q) {
        op.input_swap[q] = (swaps >> (2 - q)) & 1u;
        op.output_flip[q][0] = (flips >> (5 - 2 * q)) & 1u;
        op.output_flip[q][1] = (flips >> (4 - 2 * q)) & 1u;
    }
    return op;
}

inline MerminTable build_mermin_table() {
    MerminTable t;
    Behavior sv0 = to_behavior(SvetlichnyTag{0b0000});
    Behavior sv14 = to_behavior(SvetlichnyTag{0b1110});
    Behavior base = mix({{0.5, sv0}, {0.5, sv14}});

    std::vector<Behavior> svs;
    for (auto tag : svetlichny_tags()) svs.push_back(to_behavior(tag));
    std::vector<Behavior> prs;
    for (auto tag : pr_tags()) prs.push_back(to_behavior(tag));

    for (unsigned v = 0; v < kMerminVariants; ++v) {
        unsigned f = mermin_functional_of_variant(v);
        bool found = false;
        // Output flips first; input swaps are needed for half the variants.
        for (unsigned swaps = 0; swaps < 8 && !found; ++swaps) {
            for (unsigned flips = 0; flips < 64 && !found; ++flips) {
                auto op = lro_from_masks(swaps, flips);
                Behavior b = apply_lro(base, op);
                if (mermin_value(b, f >> 3, (f >> 2) & 1u, (f >> 1) & 1u, f & 1u) > 4 - kExactTol) {
                    t.boxes.push_back(b);
                    t.ops.push_back(op);
                    found = true;
                }
            }
        }
        if (!found) throw Error(ErrorKind::ConstructionFailure, strfmt("no relabeling reaches Mermin variant %u", v));

        const Behavior &b = t.boxes.back();
        found = false;
        for (unsigned s = 0; s < 16 && !found; ++s)
            for (unsigned u = s + 1; u < 16 && !found; ++u) {
                double err = 0;
                for (std::size_t c = 0; c < kCells; ++c)
                    err = std::max(err, std::abs(0.5 * svs[s][c] + 0.5 * svs[u][c] - b[c]));
                if (err <= kExactTol) {
                    t.sv_pairs.emplace_back(s, u);
                    found = true;
                }
            }
        if (!found) throw Error(ErrorKind::ConstructionFailure, strfmt("Mermin variant %u has no Svetlichny pair", v));

        std::array<std::pair<unsigned, unsigned>, kNmmPerMermin> pairs{};
        unsigned count = 0;
        for (unsigned p = 0; p < prs.size(); ++p)
            for (unsigned q = p + 1; q < prs.size(); ++q) {
                CorrelatorVector c = 0.5 * prs[p].correlators() + 0.5 * prs[q].correlators();
                if (!same_triples(c, b.correlators())) continue;
                if (count < kNmmPerMermin) pairs[count] = {p, q};
                ++count;
            }
        if (count != kNmmPerMermin) {
            throw Error(ErrorKind::ConstructionFailure,
                        strfmt("Mermin variant %u has %u two-PR realizations, expected %u", v, count, kNmmPerMermin));
        }
        t.nmm_pairs.push_back(pairs);
    }
    return t;
}

inline const MerminTable &mermin_table() {
    static const MerminTable table = build_mermin_table();
    return table;
}

}  // namespace detail

/// Mermin box with maximally mixed marginals. Variant 0 is the GHZ-paradox
/// box (Sv0000 + Sv1110)/2; the rest are relabelings of it.
inline Behavior mermin_box_mm(unsigned variant) {
    if (variant >= kMerminVariants) throw Error(ErrorKind::UnknownVariant, detail::strfmt("mm:%u", variant));
    return detail::mermin_table().boxes[variant];
}

/// The relabeling taking variant 0 to `variant`.
inline LocalReversibleOp mermin_variant_op(unsigned variant) {
    if (variant >= kMerminVariants) throw Error(ErrorKind::UnknownVariant, detail::strfmt("mm:%u", variant));
    return detail::mermin_table().ops[variant];
}

/// Packed Svetlichny tags (s, t) with mermin_box_mm(v) = (Sv_s + Sv_t)/2.
inline std::pair<SvetlichnyTag, SvetlichnyTag> mermin_svetlichny_pair(unsigned variant) {
    if (variant >= kMerminVariants) throw Error(ErrorKind::UnknownVariant, detail::strfmt("mm:%u", variant));
    auto [s, t] = detail::mermin_table().sv_pairs[variant];
    return {SvetlichnyTag{s}, SvetlichnyTag{t}};
}

/// The two PR vertices whose uniform mixture is nmm variant `variant`.
/// Variant 12*v + r has the triples of mermin_box_mm(v).
inline std::pair<PrTag, PrTag> mermin_nmm_pair(unsigned variant) {
    if (variant >= kNmmVariants) throw Error(ErrorKind::UnknownVariant, detail::strfmt("nmm:%u", variant));
    auto [p, q] = detail::mermin_table().nmm_pairs[variant / kNmmPerMermin][variant % kNmmPerMermin];
    return {pr_tags()[p], pr_tags()[q]};
}

inline Behavior mermin_box_nmm(unsigned variant) {
    auto [p, q] = mermin_nmm_pair(variant);
    return mix({{0.5, to_behavior(p)}, {0.5, to_behavior(q)}});
}

inline Behavior to_behavior(const Class8Tag &) { return class8_box(); }
inline Behavior to_behavior(const MerminMmTag &t) { return mermin_box_mm(t.variant); }
inline Behavior to_behavior(const MerminNmmTag &t) { return mermin_box_nmm(t.variant); }
inline Behavior to_behavior(const NoiseTag &) { return white_noise(); }
inline Behavior to_behavior(const CanonicalVertex &v) {
    return std::visit([](const auto &t) { return to_behavior(t); }, v);
}

namespace detail {
inline std::string bits_string(unsigned word, unsigned width) {
    std::string s(width, '0');
    for (unsigned p = 0; p < width; ++p)
        if (bit(word, width, p)) s[p] = '1';
    return s;
}

inline unsigned parse_bits(std::string_view s, unsigned width, std::string_view whole) {
    if (s.size() != width || s.find_first_not_of("01") != std::string_view::npos) {
        throw Error(ErrorKind::ParseError,
                    strfmt("'%s': expected %u bits", std::string(whole).c_str(), width));
    }
    unsigned w = 0;
    for (char c : s) w = (w << 1) | unsigned(c - '0');
    return w;
}

inline unsigned parse_uint(std::string_view s, std::string_view whole) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(ErrorKind::ParseError, "'" + std::string(whole) + "': expected a variant number");
    }
    return v;
}
}  // namespace detail

inline std::string to_string(const CanonicalVertex &v) {
    struct Visitor {
        std::string operator()(const DeterministicTag &t) const { return "det:" + detail::bits_string(t.bits, 6); }
        std::string operator()(const PrTag &t) const {
            std::string bits = detail::bits_string(t.bits, 5);
            if (bits.back() == '0') bits.pop_back();
            return "pr:" + std::string(to_string(t.pairing)) + ":" + bits;
        }
        std::string operator()(const SvetlichnyTag &t) const { return "sv:" + detail::bits_string(t.bits, 4); }
        std::string operator()(const Class8Tag &) const { return "class8"; }
        std::string operator()(const MerminMmTag &t) const { return "mm:" + std::to_string(t.variant); }
        std::string operator()(const MerminNmmTag &t) const { return "nmm:" + std::to_string(t.variant); }
        std::string operator()(const NoiseTag &) const { return "noise"; }
    };
    return std::visit(Visitor{}, v);
}

/// Accepts det:αβγεζη, pr:{12,13,23}:αβγε[η], sv:αβγε, class8, mm:N, nmm:N, noise.
inline CanonicalVertex parse_canonical(std::string_view s) {
    auto colon = s.find(':');
    std::string_view head = s.substr(0, colon);
    std::string_view rest = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
    if (head == "class8" && rest.empty()) return Class8Tag{};
    if (head == "noise" && rest.empty()) return NoiseTag{};
    if (head == "det") return DeterministicTag{detail::parse_bits(rest, 6, s)};
    if (head == "sv") return SvetlichnyTag{detail::parse_bits(rest, 4, s)};
    if (head == "pr") {
        auto c2 = rest.find(':');
        if (c2 == std::string_view::npos) throw Error(ErrorKind::ParseError, "'" + std::string(s) + "': pr:PAIR:BITS");
        Pairing p = parse_pairing(rest.substr(0, c2));
        std::string_view bits = rest.substr(c2 + 1);
        unsigned w = bits.size() == 4 ? detail::parse_bits(bits, 4, s) << 1 : detail::parse_bits(bits, 5, s);
        return PrTag{p, w};
    }
    if (head == "mm") {
        unsigned v = detail::parse_uint(rest, s);
        if (v >= kMerminVariants) throw Error(ErrorKind::UnknownVariant, std::string(s));
        return MerminMmTag{v};
    }
    if (head == "nmm") {
        unsigned v = detail::parse_uint(rest, s);
        if (v >= kNmmVariants) throw Error(ErrorKind::UnknownVariant, std::string(s));
        return MerminNmmTag{v};
    }
    throw Error(ErrorKind::ParseError, "unknown canonical box '" + std::string(s) + "'");
}

}  // namespace tribox

#endif
