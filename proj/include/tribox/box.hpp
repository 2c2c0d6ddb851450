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

#ifndef TRIBOX_BOX_HPP
#define TRIBOX_BOX_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tribox/error.hpp"

namespace tribox {

// Representation error of dyadic constructions vs. error of trig-based ones.
inline constexpr double kExactTol = 1e-12;
inline constexpr double kQuantumTol = 1e-9;

inline constexpr std::size_t kCells = 64;
using ProbTable = std::array<double, kCells>;

/// Flat index of P(m,n,o | i,j,k). Inputs occupy the high bits.
constexpr std::size_t cell(unsigned i, unsigned j, unsigned k, unsigned m, unsigned n, unsigned o) noexcept {
    return ((i & 1u) << 5) | ((j & 1u) << 4) | ((k & 1u) << 3) | ((m & 1u) << 2) | ((n & 1u) << 1) | (o & 1u);
}

struct Cell {
    unsigned i, j, k, m, n, o;
};

constexpr Cell decode(std::size_t idx) noexcept {
    return {unsigned(idx >> 5) & 1u, unsigned(idx >> 4) & 1u, unsigned(idx >> 3) & 1u,
            unsigned(idx >> 2) & 1u, unsigned(idx >> 1) & 1u, unsigned(idx) & 1u};
}

constexpr double sign(unsigned bit) noexcept { return (bit & 1u) ? -1.0 : 1.0; }

/// Expectation values of the +1/-1 outcomes (-1)^m.
/// Two-party entries are indexed x*2+y, three-party entries i*4+j*2+k.
struct CorrelatorVector {
    std::array<double, 2> a{}, b{}, c{};
    std::array<double, 4> ab{}, ac{}, bc{};
    std::array<double, 8> abc{};

    static constexpr std::size_t kSize = 26;

    static constexpr std::array<std::string_view, kSize> keys() {
        return {"A0",     "A1",     "B0",     "B1",     "C0",     "C1",     "A0B0",   "A0B1",   "A1B0",
                "A1B1",   "A0C0",   "A0C1",   "A1C0",   "A1C1",   "B0C0",   "B0C1",   "B1C0",   "B1C1",
                "A0B0C0", "A0B0C1", "A0B1C0", "A0B1C1", "A1B0C0", "A1B0C1", "A1B1C0", "A1B1C1"};
    }

    double &at(std::size_t flat) {
        if (flat < 2) return a[flat];
        if (flat < 4) return b[flat - 2];
        if (flat < 6) return c[flat - 4];
        if (flat < 10) return ab[flat - 6];
        if (flat < 14) return ac[flat - 10];
        if (flat < 18) return bc[flat - 14];
        if (flat < 26) return abc[flat - 18];
        throw Error(ErrorKind::BadParameters, detail::strfmt("correlator index %zu out of range", flat));
    }
    double at(std::size_t flat) const { return const_cast<CorrelatorVector &>(*this).at(flat); }

    static std::size_t index_of(std::string_view key) {
        auto ks = keys();
        for (std::size_t t = 0; t < kSize; ++t) {
            if (ks[t] == key) return t;
        }
        throw Error(ErrorKind::ParseError, "unknown correlator key '" + std::string(key) + "'");
    }
    double get(std::string_view key) const { return at(index_of(key)); }
    void set(std::string_view key, double v) { at(index_of(key)) = v; }

    std::array<double, kSize> flat() const {
        std::array<double, kSize> out{};
        for (std::size_t t = 0; t < kSize; ++t) out[t] = at(t);
        return out;
    }

    friend CorrelatorVector operator+(CorrelatorVector x, const CorrelatorVector &y) {
        for (std::size_t t = 0; t < kSize; ++t) x.at(t) += y.at(t);
        return x;
    }
    friend CorrelatorVector operator*(double s, CorrelatorVector x) {
        for (std::size_t t = 0; t < kSize; ++t) x.at(t) *= s;
        return x;
    }
    friend CorrelatorVector operator-(const CorrelatorVector &x, const CorrelatorVector &y) {
        return x + (-1.0) * y;
    }
    bool operator==(const CorrelatorVector &) const = default;
};

/// Linear map from a probability table to correlators. Single and two-party
/// terms are averaged over the remaining parties' inputs, which is exact for
/// nonsignaling tables and symmetric otherwise.
inline CorrelatorVector correlators_of(const ProbTable &p) {
    CorrelatorVector v;
    for (std::size_t idx = 0; idx < kCells; ++idx) {
        auto [i, j, k, m, n, o] = decode(idx);
        double q = p[idx];
        v.a[i] += sign(m) * q / 4;
        v.b[j] += sign(n) * q / 4;
        v.c[k] += sign(o) * q / 4;
        v.ab[i * 2 + j] += sign(m ^ n) * q / 2;
        v.ac[i * 2 + k] += sign(m ^ o) * q / 2;
        v.bc[j * 2 + k] += sign(n ^ o) * q / 2;
        v.abc[i * 4 + j * 2 + k] += sign(m ^ n ^ o) * q;
    }
    return v;
}

/// Inverse of correlators_of on the nonsignaling subspace.
inline ProbTable probabilities_of(const CorrelatorVector &v) {
    ProbTable p{};
    for (std::size_t idx = 0; idx < kCells; ++idx) {
        auto [i, j, k, m, n, o] = decode(idx);
        double s = 1.0 + sign(m) * v.a[i] + sign(n) * v.b[j] + sign(o) * v.c[k] + sign(m ^ n) * v.ab[i * 2 + j] +
                   sign(m ^ o) * v.ac[i * 2 + k] + sign(n ^ o) * v.bc[j * 2 + k] +
                   sign(m ^ n ^ o) * v.abc[i * 4 + j * 2 + k];
        p[idx] = s / 8;
    }
    return p;
}

/// Throws on negativity, normalization or signaling beyond tol.
inline void validate_table(std::span<const double> p, double tol = kExactTol) {
    if (p.size() != kCells) {
        throw Error(ErrorKind::BadParameters, detail::strfmt("expected 64 probabilities, got %zu", p.size()));
    }
    for (std::size_t idx = 0; idx < kCells; ++idx) {
        if (!std::isfinite(p[idx]) || p[idx] < -tol) {
            auto c = decode(idx);
            throw Error(ErrorKind::NegativeProbability,
                        detail::strfmt("P(%u%u%u|%u%u%u) = %.3g at index %zu", c.m, c.n, c.o, c.i, c.j, c.k,
                                       p[idx], idx));
        }
    }
    for (unsigned x = 0; x < 8; ++x) {
        double s = 0;
        for (unsigned y = 0; y < 8; ++y) s += p[x * 8 + y];
        if (std::abs(s - 1.0) > tol) {
            throw Error(ErrorKind::NotNormalized, detail::strfmt("P(.|A%u,B%u,C%u) sums to %.15g", x >> 2,
                                                                 (x >> 1) & 1u, x & 1u, s));
        }
    }
    // Marginal of two parties must not depend on the third party's input.
    auto marginal = [&](int drop, unsigned x_drop, unsigned x1, unsigned x2, unsigned y1, unsigned y2) {
        double s = 0;
        for (unsigned y = 0; y < 2; ++y) {
            unsigned in[3], out[3];
            unsigned keep[2] = {0, 0};
            int t = 0;
            for (int q = 0; q < 3; ++q) {
                if (q == drop) {
                    in[q] = x_drop;
                    out[q] = y;
                } else {
                    keep[t++] = unsigned(q);
                }
            }
            in[keep[0]] = x1;
            in[keep[1]] = x2;
            out[keep[0]] = y1;
            out[keep[1]] = y2;
            s += p[cell(in[0], in[1], in[2], out[0], out[1], out[2])];
        }
        return s;
    };
    static constexpr std::string_view pair_names[3] = {"BC", "AC", "AB"};
    static constexpr char party_names[3] = {'A', 'B', 'C'};
    for (int drop = 0; drop < 3; ++drop) {
        for (unsigned x1 = 0; x1 < 2; ++x1)
            for (unsigned x2 = 0; x2 < 2; ++x2)
                for (unsigned y1 = 0; y1 < 2; ++y1)
                    for (unsigned y2 = 0; y2 < 2; ++y2) {
                        double d = marginal(drop, 0, x1, x2, y1, y2) - marginal(drop, 1, x1, x2, y1, y2);
                        if (std::abs(d) > tol) {
                            throw Error(ErrorKind::SignalingDetected,
                                        detail::strfmt("%s marginal P(%u%u|%u%u) changes by %.3g with %c's input",
                                                       std::string(pair_names[drop]).c_str(), y1, y2, x1, x2, d,
                                                       party_names[drop]));
                        }
                    }
    }
}

/// A validated tripartite nonsignaling box. Immutable; probabilities are the
/// source of truth and correlators are computed once at construction.
class Behavior {
   public:
    static Behavior from_probabilities(std::span<const double> table, double tol = kExactTol) {
        validate_table(table, tol);
        ProbTable p{};
        std::copy(table.begin(), table.end(), p.begin());
        return Behavior(p);
    }

    static Behavior from_correlators(const CorrelatorVector &v, double tol = kExactTol) {
        auto p = probabilities_of(v);
        validate_table(p, tol);
        return Behavior(p);
    }

    double operator()(unsigned i, unsigned j, unsigned k, unsigned m, unsigned n, unsigned o) const {
        return p_[cell(i, j, k, m, n, o)];
    }
    double operator[](std::size_t idx) const { return p_[idx]; }
    const ProbTable &probs() const noexcept { return p_; }
    const CorrelatorVector &correlators() const noexcept { return c_; }
    double triple(unsigned i, unsigned j, unsigned k) const { return c_.abc[(i & 1u) * 4 + (j & 1u) * 2 + (k & 1u)]; }

    bool operator==(const Behavior &o) const { return p_ == o.p_; }

   private:
    explicit Behavior(const ProbTable &p) : p_(p), c_(correlators_of(p)) {}

    ProbTable p_;
    CorrelatorVector c_;
};

inline Behavior from_probabilities(std::span<const double> table, double tol = kExactTol) {
    return Behavior::from_probabilities(table, tol);
}
inline CorrelatorVector to_correlators(const Behavior &b) { return b.correlators(); }
inline Behavior from_correlators(const CorrelatorVector &v, double tol = kExactTol) {
    return Behavior::from_correlators(v, tol);
}

inline double max_abs_diff(const Behavior &x, const Behavior &y) {
    double d = 0;
    for (std::size_t t = 0; t < kCells; ++t) d = std::max(d, std::abs(x[t] - y[t]));
    return d;
}

namespace detail {

inline void require_bits(std::initializer_list<unsigned> bits, const char *what) {
    for (unsigned b : bits) {
        if (b > 1) throw Error(ErrorKind::BadParameters, std::string(what) + " parameters must be bits");
    }
}

template <class Pred>
Behavior uniform_on(Pred pred, double mass) {
    ProbTable p{};
    for (std::size_t idx = 0; idx < kCells; ++idx) {
        auto [i, j, k, m, n, o] = decode(idx);
        p[idx] = pred(i, j, k, m, n, o) ? mass : 0.0;
    }
    return Behavior::from_probabilities(p);
}

}  // namespace detail

/// m = αi⊕β, n = γj⊕ε, o = ζk⊕η.
inline Behavior deterministic_box(unsigned alpha, unsigned beta, unsigned gamma, unsigned epsilon, unsigned zeta,
                                  unsigned eta) {
    detail::require_bits({alpha, beta, gamma, epsilon, zeta, eta}, "deterministic_box");
    return detail::uniform_on(
        [=](unsigned i, unsigned j, unsigned k, unsigned m, unsigned n, unsigned o) {
            return m == ((alpha & i) ^ beta) && n == ((gamma & j) ^ epsilon) && o == ((zeta & k) ^ eta);
        },
        1.0);
}

enum class Pairing { AB, AC, BC };

constexpr std::string_view to_string(Pairing p) noexcept {
    switch (p) {
        case Pairing::AB: return "12";
        case Pairing::AC: return "13";
        case Pairing::BC: return "23";
    }
    return "?";
}

inline Pairing parse_pairing(std::string_view s) {
    if (s == "12" || s == "AB") return Pairing::AB;
    if (s == "13" || s == "AC") return Pairing::AC;
    if (s == "23" || s == "BC") return Pairing::BC;
    throw Error(ErrorKind::ParseError, "unknown pairing '" + std::string(s) + "' (expected 12, 13 or 23)");
}

/// Bipartite PR box on `pairing`, x⊕y = xy⊕αx⊕βy⊕γ for the pair's inputs x<y,
/// with the third party deterministic: output = εz⊕η.
inline Behavior pr_box(Pairing pairing, unsigned alpha, unsigned beta, unsigned gamma, unsigned epsilon,
                       unsigned eta = 0) {
    detail::require_bits({alpha, beta, gamma, epsilon, eta}, "pr_box");
    return detail::uniform_on(
        [=](unsigned i, unsigned j, unsigned k, unsigned m, unsigned n, unsigned o) {
            unsigned x, y, z, a, b, c;
            switch (pairing) {
                case Pairing::AB: x = i, y = j, z = k, a = m, b = n, c = o; break;
                case Pairing::AC: x = i, y = k, z = j, a = m, b = o, c = n; break;
                default: x = j, y = k, z = i, a = n, b = o, c = m; break;
            }
            return (a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma) && c == ((epsilon & z) ^ eta);
        },
        0.5);
}

/// P = 1/4 iff m⊕n⊕o = ij⊕ik⊕jk⊕αi⊕βj⊕γk⊕ε.
inline Behavior svetlichny_box(unsigned alpha, unsigned beta, unsigned gamma, unsigned epsilon) {
    detail::require_bits({alpha, beta, gamma, epsilon}, "svetlichny_box");
    return detail::uniform_on(
        [=](unsigned i, unsigned j, unsigned k, unsigned m, unsigned n, unsigned o) {
            unsigned rhs = (i & j) ^ (i & k) ^ (j & k) ^ (alpha & i) ^ (beta & j) ^ (gamma & k) ^ epsilon;
            return (m ^ n ^ o) == rhs;
        },
        0.25);
}

inline Behavior white_noise() {
    ProbTable p;
    p.fill(0.125);
    return Behavior::from_probabilities(p);
}

/// Extremal box of class 8, rebuilt from its nonzero expectations.
inline Behavior class8_box() {
    CorrelatorVector v;
    v.set("A0B0", 1);
    v.set("A0B1", 1);
    v.set("A0C0", 1);
    v.set("B0C0", 1);
    v.set("B1C0", 1);
    v.set("A1B0C1", 1);
    v.set("A1B1C1", -1);
    try {
        return Behavior::from_correlators(v);
    } catch (const Error &e) {
        throw Error(ErrorKind::ConstructionFailure, std::string("class-8 reconstruction: ") + e.what());
    }
}

struct WeightedBox {
    double weight;
    Behavior box;
};

inline void check_weights(std::span<const WeightedBox> terms, double tol = kExactTol) {
    if (terms.empty()) throw Error(ErrorKind::BadWeights, "empty mixture");
    double s = 0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        if (!std::isfinite(terms[t].weight) || terms[t].weight < -tol) {
            throw Error(ErrorKind::BadWeights, detail::strfmt("weight %zu is %.17g", t, terms[t].weight));
        }
        s += terms[t].weight;
    }
    if (std::abs(s - 1.0) > tol) throw Error(ErrorKind::BadWeights, detail::strfmt("weights sum to %.17g", s));
}

/// Entrywise convex combination. Validated at the quantum tier since the
/// weights are arbitrary reals.
inline Behavior mix(std::span<const WeightedBox> terms) {
    check_weights(terms);
    ProbTable p{};
    for (const auto &t : terms) {
        for (std::size_t idx = 0; idx < kCells; ++idx) p[idx] += t.weight * t.box[idx];
    }
    return Behavior::from_probabilities(p, kQuantumTol);
}

inline Behavior mix(std::initializer_list<WeightedBox> terms) {
    return mix(std::span<const WeightedBox>(terms.begin(), terms.size()));
}

/// p*b + (1-p)*white noise.
inline Behavior isotropic(const Behavior &b, double p) {
    if (!(p >= 0 && p <= 1)) throw Error(ErrorKind::BadWeights, detail::strfmt("isotropic weight %.17g", p));
    return mix({{p, b}, {1 - p, white_noise()}});
}

/// New party q holds old party source[q].
struct PartyPermutation {
    std::array<unsigned, 3> source{0, 1, 2};

    bool operator==(const PartyPermutation &) const = default;
    static std::array<PartyPermutation, 6> all() {
        return {PartyPermutation{{0, 1, 2}}, PartyPermutation{{0, 2, 1}}, PartyPermutation{{1, 0, 2}},
                PartyPermutation{{1, 2, 0}}, PartyPermutation{{2, 0, 1}}, PartyPermutation{{2, 1, 0}}};
    }
};

/// Local relabeling: each party first maps (x, y) to (x⊕swap, y⊕flip[x]),
/// with flip indexed by the original input; then parties are permuted.
struct LocalReversibleOp {
    std::array<bool, 3> input_swap{};
    std::array<std::array<bool, 2>, 3> output_flip{};
    PartyPermutation permutation{};

    bool operator==(const LocalReversibleOp &) const = default;
};

inline Behavior apply_lro(const Behavior &b, const LocalReversibleOp &op) {
    ProbTable p{};
    for (std::size_t idx = 0; idx < kCells; ++idx) {
        auto c = decode(idx);
        unsigned x[3] = {c.i, c.j, c.k}, y[3] = {c.m, c.n, c.o};
        unsigned x2[3], y2[3];
        for (int q = 0; q < 3; ++q) {
            x2[q] = x[q] ^ unsigned(op.input_swap[q]);
            y2[q] = y[q] ^ unsigned(op.output_flip[q][x[q]]);
        }
        const auto &s = op.permutation.source;
        p[cell(x2[s[0]], x2[s[1]], x2[s[2]], y2[s[0]], y2[s[1]], y2[s[2]])] = b[idx];
    }
    // A bijection of cells preserves validity exactly.
    return Behavior::from_probabilities(p, kQuantumTol);
}

inline Behavior permute_parties(const Behavior &b, const PartyPermutation &sigma) {
    LocalReversibleOp op;
    op.permutation = sigma;
    return apply_lro(b, op);
}

/// The op equivalent to applying `first`, then `second`.
inline LocalReversibleOp compose(const LocalReversibleOp &second, const LocalReversibleOp &first) {
    LocalReversibleOp r;
    const auto &s1 = first.permutation.source;
    const auto &s2 = second.permutation.source;
    for (unsigned p = 0; p < 3; ++p) {
        unsigned q = s1[p];  // old party that sits at slot p after `first`
        bool sw1 = first.input_swap[q], sw2 = second.input_swap[p];
        r.input_swap[q] = sw1 != sw2;
        for (unsigned x = 0; x < 2; ++x) {
            r.output_flip[q][x] = first.output_flip[q][x] != second.output_flip[p][x ^ unsigned(sw1)];
        }
    }
    for (unsigned p = 0; p < 3; ++p) r.permutation.source[p] = s1[s2[p]];
    return r;
}

inline LocalReversibleOp inverse(const LocalReversibleOp &op) {
    LocalReversibleOp r;
    const auto &s = op.permutation.source;
    for (unsigned p = 0; p < 3; ++p) {
        unsigned q = s[p];
        r.input_swap[p] = op.input_swap[q];
        for (unsigned x = 0; x < 2; ++x) r.output_flip[p][x] = op.output_flip[q][x ^ unsigned(op.input_swap[q])];
        r.permutation.source[q] = p;
    }
    return r;
}

/// Every LRO in a fixed order: permutation, then input swaps, then flips.
inline std::vector<LocalReversibleOp> all_lros() {
    std::vector<LocalReversibleOp> out;
    out.reserve(6 * 8 * 64);
    for (const auto &perm : PartyPermutation::all())
        for (unsigned swaps = 0; swaps < 8; ++swaps)
            for (unsigned flips = 0; flips < 64; ++flips) {
                LocalReversibleOp op;
                for (unsigned q = 0; q < 3; ++q) {
                    op.input_swap[q] = (swaps >> (2 - q)) & 1u;
                    op.output_flip[q][0] = (flips >> (5 - 2 * q)) & 1u;
                    op.output_flip[q][1] = (flips >> (4 - 2 * q)) & 1u;
                }
                op.permutation = perm;
                out.push_back(op);
            }
    return out;
}

/// First op with apply_lro(from, op) equal to `to` within tol, if any.
inline std::optional<LocalReversibleOp> find_relabeling(const Behavior &from, const Behavior &to, double tol = kQuantumTol) {
    for (const auto &op : all_lros()) {
        if (max_abs_diff(apply_lro(from, op), to) <= tol) return op;
    }
    return std::nullopt;
}

}  // namespace tribox

#endif
