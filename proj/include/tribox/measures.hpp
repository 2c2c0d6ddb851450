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

#ifndef TRIBOX_MEASURES_HPP
#define TRIBOX_MEASURES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tribox/box.hpp"

namespace tribox {

// Functionals are linear in the correlators, so each has a CorrelatorVector
// overload; the Behavior overloads just forward.

/// Signed S_{αβγε} = Σ (-1)^{ij⊕ik⊕jk⊕αi⊕βj⊕γk⊕ε} <A_i B_j C_k>, |S| <= 8.
inline double svetlichny_value(const CorrelatorVector &v, unsigned alpha, unsigned beta, unsigned gamma,
                               unsigned epsilon) {
    double s = 0;
    for (unsigned i = 0; i < 2; ++i)
        for (unsigned j = 0; j < 2; ++j)
            for (unsigned k = 0; k < 2; ++k) {
                unsigned e = (i & j) ^ (i & k) ^ (j & k) ^ (alpha & i) ^ (beta & j) ^ (gamma & k) ^ epsilon;
                s += sign(e) * v.abc[i * 4 + j * 2 + k];
            }
    return s;
}

inline double svetlichny_value(const Behavior &b, unsigned alpha, unsigned beta, unsigned gamma, unsigned epsilon) {
    return svetlichny_value(b.correlators(), alpha, beta, gamma, epsilon);
}

/// |S_{αβγ0}| at index α*4+β*2+γ.
inline std::array<double, 8> svetlichny_moduli(const CorrelatorVector &v) {
    std::array<double, 8> out{};
    for (unsigned t = 0; t < 8; ++t) out[t] = std::abs(svetlichny_value(v, t >> 2, (t >> 1) & 1u, t & 1u, 0));
    return out;
}
inline std::array<double, 8> svetlichny_moduli(const Behavior &b) { return svetlichny_moduli(b.correlators()); }

/// Signed Mermin functional. The selector bit α⊕β⊕γ chooses which half of
/// the triples enters, so each functional sees four of the eight.
inline double mermin_value(const CorrelatorVector &v, unsigned alpha, unsigned beta, unsigned gamma,
                           unsigned epsilon) {
    const auto &t = v.abc;
    auto T = [&](unsigned i, unsigned j, unsigned k) { return t[i * 4 + j * 2 + k]; };
    unsigned a = alpha & 1u, b = beta & 1u, g = gamma & 1u, e = epsilon & 1u;
    if (((a ^ b ^ g) & 1u) == 0) {
        return sign(g ^ e) * T(0, 0, 1) + sign(b ^ e) * T(0, 1, 0) + sign(a ^ e) * T(1, 0, 0) +
               sign(a ^ b ^ g ^ e ^ 1u) * T(1, 1, 1);
    }
    return sign(a ^ b ^ e ^ 1u) * T(1, 1, 0) + sign(a ^ g ^ e ^ 1u) * T(1, 0, 1) + sign(b ^ g ^ e ^ 1u) * T(0, 1, 1) +
           sign(e) * T(0, 0, 0);
}

inline double mermin_value(const Behavior &b, unsigned alpha, unsigned beta, unsigned gamma, unsigned epsilon) {
    return mermin_value(b.correlators(), alpha, beta, gamma, epsilon);
}

inline std::array<double, 8> mermin_moduli(const CorrelatorVector &v) {
    std::array<double, 8> out{};
    for (unsigned t = 0; t < 8; ++t) out[t] = std::abs(mermin_value(v, t >> 2, (t >> 1) & 1u, t & 1u, 0));
    return out;
}
inline std::array<double, 8> mermin_moduli(const Behavior &b) { return mermin_moduli(b.correlators()); }

/// Two-party correlators E[x*2+y] of a pair, x the lower-numbered party.
inline std::array<double, 4> pair_correlators(const CorrelatorVector &v, Pairing pair) {
    switch (pair) {
        case Pairing::AB: return v.ab;
        case Pairing::AC: return v.ac;
        default: return v.bc;
    }
}

/// CHSH functionals B_{αβγ} on a pair, index α*4+β*2+γ. |B| <= 2 locally,
/// 2√2 quantumly, 4 for a PR box.
inline std::array<double, 8> chsh_values(const CorrelatorVector &v, Pairing pair) {
    auto E = pair_correlators(v, pair);
    std::array<double, 8> out{};
    for (unsigned t = 0; t < 8; ++t) {
        unsigned a = t >> 2, b = (t >> 1) & 1u, g = t & 1u;
        out[t] = sign(g) * E[0] + sign(b ^ g) * E[1] + sign(a ^ g) * E[2] + sign(a ^ b ^ g ^ 1u) * E[3];
    }
    return out;
}
inline std::array<double, 8> chsh_values(const Behavior &b, Pairing pair) { return chsh_values(b.correlators(), pair); }

/// Representative facet of class 99 of the two-way local polytope (bound 3).
inline double class99_value(const CorrelatorVector &v) {
    return v.get("A0B0") + v.get("A0C0") + v.get("B1C0") + v.get("A1B0C1") - v.get("A1B1C1");
}
inline double class99_value(const Behavior &b) { return class99_value(b.correlators()); }

// ---------------------------------------------------------------------------
// Discord.
//
// The eight moduli live on Z2^3 (bits α,β,γ). A pairing structure picks an
// inner axis to difference first, leaving four classes on the quotient Z2^2;
// a nonzero element of Z2^2 then matches those classes into two pairs, and the
// outer difference is forced.

enum class Axis : unsigned { Alpha = 0, Beta = 1, Gamma = 2 };

struct PairingStructure {
    Axis inner_axis = Axis::Gamma;
    unsigned matching = 0;  // 0: flip later remaining axis, 1: flip earlier, 2: flip both

    int index() const;
    static PairingStructure from_index(int idx);
    std::string to_string() const;
    bool operator==(const PairingStructure &) const = default;
};

// Order: inner γ, then β, then α. Structure 0 is (γ, flip β).
inline constexpr std::array<Axis, 3> kInnerOrder = {Axis::Gamma, Axis::Beta, Axis::Alpha};

inline int PairingStructure::index() const {
    int slot = 0;
    for (int t = 0; t < 3; ++t)
        if (kInnerOrder[t] == inner_axis) slot = t;
    return slot * 3 + int(matching);
}

inline PairingStructure PairingStructure::from_index(int idx) {
    if (idx < 0 || idx >= 9) throw Error(ErrorKind::BadParameters, detail::strfmt("pairing structure %d", idx));
    return {kInnerOrder[idx / 3], unsigned(idx % 3)};
}

inline std::string PairingStructure::to_string() const {
    static constexpr const char *names[3] = {"alpha", "beta", "gamma"};
    unsigned ax = unsigned(inner_axis);
    unsigned r1 = ax == 0 ? 1 : 0, r2 = ax == 2 ? 1 : 2;
    std::string flip = matching == 0 ? names[r2] : matching == 1 ? names[r1] : std::string(names[r1]) + "+" + names[r2];
    return std::string("inner=") + names[ax] + ",flip=" + flip;
}

inline std::array<PairingStructure, 9> pairing_structures() {
    std::array<PairingStructure, 9> out;
    for (int t = 0; t < 9; ++t) out[t] = PairingStructure::from_index(t);
    return out;
}

namespace detail {
constexpr unsigned axis_bit(unsigned axis) noexcept { return 1u << (2 - axis); }
}  // namespace detail

/// | ||d(0)-d(f)| - |d(x)-d(x⊕f)|| | with d(q) = |mod[q] - mod[q ⊕ inner]|.
inline double nested_difference(const std::array<double, 8> &mod, PairingStructure s) {
    unsigned ax = unsigned(s.inner_axis);
    unsigned r1 = ax == 0 ? 1 : 0, r2 = ax == 2 ? 1 : 2;
    unsigned u = detail::axis_bit(ax), b1 = detail::axis_bit(r1), b2 = detail::axis_bit(r2);
    unsigned f = s.matching == 0 ? b2 : s.matching == 1 ? b1 : (b1 | b2);
    auto d = [&](unsigned q) { return std::abs(mod[q] - mod[q | u]); };
    unsigned x = (f == b1) ? b2 : b1;  // a class outside the pair {0, f}
    return std::abs(std::abs(d(0) - d(f)) - std::abs(d(x) - d(x ^ f)));
}

inline std::array<double, 9> nested_differences(const std::array<double, 8> &mod) {
    std::array<double, 9> out{};
    for (int t = 0; t < 9; ++t) out[t] = nested_difference(mod, PairingStructure::from_index(t));
    return out;
}

struct DiscordReport {
    double G = 0, Q = 0;
    std::array<double, 9> g_values{}, q_values{};
    PairingStructure argmin_g{}, argmin_q{};
};

namespace detail {
inline std::pair<double, int> min_lowest(const std::array<double, 9> &v) {
    int best = 0;
    for (int t = 1; t < 9; ++t)
        if (v[t] < v[best]) best = t;
    return {v[best], best};
}
}  // namespace detail

inline DiscordReport discord_report(const CorrelatorVector &v) {
    DiscordReport r;
    r.g_values = nested_differences(svetlichny_moduli(v));
    r.q_values = nested_differences(mermin_moduli(v));
    auto [g, ig] = detail::min_lowest(r.g_values);
    auto [q, iq] = detail::min_lowest(r.q_values);
    r.G = g;
    r.Q = q;
    r.argmin_g = PairingStructure::from_index(ig);
    r.argmin_q = PairingStructure::from_index(iq);
    return r;
}
inline DiscordReport discord_report(const Behavior &b) { return discord_report(b.correlators()); }

inline double svetlichny_discord(const CorrelatorVector &v) {
    return detail::min_lowest(nested_differences(svetlichny_moduli(v))).first;
}
inline double svetlichny_discord(const Behavior &b) { return svetlichny_discord(b.correlators()); }

inline double mermin_discord(const CorrelatorVector &v) {
    return detail::min_lowest(nested_differences(mermin_moduli(v))).first;
}
inline double mermin_discord(const Behavior &b) { return mermin_discord(b.correlators()); }

struct MonogamyResult {
    double lhs;
    bool holds;
};

/// G + 2Q <= 8 for boxes of the Svetlichny-box polytope. The caller is
/// responsible for membership; outside it the bound need not hold.
inline MonogamyResult monogamy_check(const Behavior &b) {
    auto r = discord_report(b);
    double lhs = r.G + 2 * r.Q;
    return {lhs, lhs <= 8 + 1e-9};
}

}  // namespace tribox

#endif
