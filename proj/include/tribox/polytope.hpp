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

#ifndef TRIBOX_POLYTOPE_HPP
#define TRIBOX_POLYTOPE_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tribox/box.hpp"
#include "tribox/canonical.hpp"
#include "tribox/measures.hpp"
#include "tribox/simplex.hpp"

namespace tribox {

enum class SetName { L, L2, R };

constexpr std::string_view to_string(SetName s) noexcept {
    switch (s) {
        case SetName::L: return "L";
        case SetName::L2: return "L2";
        case SetName::R: return "R";
    }
    return "?";
}

inline SetName parse_set_name(std::string_view s) {
    if (s == "L") return SetName::L;
    if (s == "L2") return SetName::L2;
    if (s == "R") return SetName::R;
    throw Error(ErrorKind::ParseError, "unknown vertex set '" + std::string(s) + "' (expected L, L2 or R)");
}

/// A linear functional of the correlators with a human-readable name.
struct NamedFunctional {
    std::string name;
    std::function<double(const CorrelatorVector &)> eval;
};

/// Functionals scanned for an outside witness: 16 Svetlichny, 16 Mermin,
/// the class-99 facet and 24 CHSH functionals.
inline const std::vector<NamedFunctional> &witness_functionals() {
    static const std::vector<NamedFunctional> fs = [] {
        std::vector<NamedFunctional> v;
        for (unsigned t = 0; t < 16; ++t) {
            unsigned a = t >> 3, b = (t >> 2) & 1u, g = (t >> 1) & 1u, e = t & 1u;
            v.push_back({"S_" + detail::bits_string(t, 4),
                         [=](const CorrelatorVector &c) { return svetlichny_value(c, a, b, g, e); }});
        }
        for (unsigned t = 0; t < 16; ++t) {
            unsigned a = t >> 3, b = (t >> 2) & 1u, g = (t >> 1) & 1u, e = t & 1u;
            v.push_back({"M_" + detail::bits_string(t, 4),
                         [=](const CorrelatorVector &c) { return mermin_value(c, a, b, g, e); }});
        }
        v.push_back({"L99", [](const CorrelatorVector &c) { return class99_value(c); }});
        for (Pairing p : {Pairing::AB, Pairing::AC, Pairing::BC})
            for (unsigned t = 0; t < 8; ++t)
                v.push_back({"CHSH_" + std::string(to_string(p)) + "_" + detail::bits_string(t, 3),
                             [=](const CorrelatorVector &c) { return chsh_values(c, p)[t]; }});
        return v;
    }();
    return fs;
}

struct VertexSet {
    SetName name;
    std::vector<CanonicalVertex> tags;
    std::vector<Behavior> vertices;
    std::vector<double> functional_bounds;  // max of each witness functional over the vertices

    std::size_t size() const { return vertices.size(); }
};

namespace detail {

inline VertexSet build_vertex_set(SetName name) {
    VertexSet vs{name, {}, {}, {}};
    for (auto t : deterministic_tags()) vs.tags.emplace_back(t);
    if (name != SetName::L)
        for (auto t : pr_tags()) vs.tags.emplace_back(t);
    if (name == SetName::R)
        for (auto t : svetlichny_tags()) vs.tags.emplace_back(t);
    for (const auto &t : vs.tags) vs.vertices.push_back(to_behavior(t));
    for (const auto &f : witness_functionals()) {
        double m = -1e300;
        for (const auto &v : vs.vertices) m = std::max(m, f.eval(v.correlators()));
        vs.functional_bounds.push_back(m);
    }
    return vs;
}

}  // namespace detail

/// L: 64 deterministic vertices. L2: plus 96 bipartite PR vertices.
/// R: plus 16 Svetlichny boxes. Built once, shared read-only.
inline const VertexSet &vertex_set(SetName name) {
    static const VertexSet L = detail::build_vertex_set(SetName::L);
    static const VertexSet L2 = detail::build_vertex_set(SetName::L2);
    static const VertexSet R = detail::build_vertex_set(SetName::R);
    switch (name) {
        case SetName::L: return L;
        case SetName::L2: return L2;
        default: return R;
    }
}

struct FunctionalWitness {
    std::string name;
    double value;
    double bound;
};

struct MembershipResult {
    SetName set = SetName::L;
    bool inside = false;
    std::vector<double> weights;                 // convex certificate, iff inside
    std::optional<FunctionalWitness> violation;  // named separating functional, if one is found
    std::vector<double> farkas;                  // iff outside: y.[v;1] <= 0 on vertices, > 0 on the box
    double infeasibility = 0;                    // phase-1 optimum (L1 residual)
    double recombination_error = 0;              // max entry error of the certificate
    std::size_t pivots = 0;
};

struct MembershipOptions {
    double feasibility_tol = 1e-8;
    double recombination_tol = 1e-8;
};

/// Largest violation among the witness functionals, if any exceeds its bound.
inline std::optional<FunctionalWitness> find_witness(const Behavior &b, const VertexSet &vs, double slack = 1e-9) {
    const auto &fs = witness_functionals();
    std::optional<FunctionalWitness> best;
    double best_excess = slack;
    for (std::size_t t = 0; t < fs.size(); ++t) {
        double v = fs[t].eval(b.correlators());
        double excess = v - vs.functional_bounds[t];
        if (excess > best_excess) {
            best_excess = excess;
            best = FunctionalWitness{fs[t].name, v, vs.functional_bounds[t]};
        }
    }
    return best;
}

namespace detail {

template <class Scalar>
lp::DenseMatrix<Scalar> membership_matrix(const VertexSet &vs) {
    lp::DenseMatrix<Scalar> A(kCells + 1, vs.size());
    for (std::size_t c = 0; c < vs.size(); ++c) {
        for (std::size_t r = 0; r < kCells; ++r) A(r, c) = Scalar(vs.vertices[c][r]);
        A(kCells, c) = Scalar(1);
    }
    return A;
}

inline double recombination_error(const Behavior &b, const VertexSet &vs, const std::vector<double> &w) {
    double err = 0;
    for (std::size_t r = 0; r < kCells; ++r) {
        double s = 0;
        for (std::size_t c = 0; c < vs.size(); ++c) s += w[c] * vs.vertices[c][r];
        err = std::max(err, std::abs(s - b[r]));
    }
    return err;
}

template <class Scalar>
MembershipResult finish_membership(const Behavior &b, const VertexSet &vs, const lp::Result<Scalar> &res,
                                   bool inside, const MembershipOptions &opt) {
    MembershipResult out;
    out.set = vs.name;
    out.pivots = res.pivots;
    out.infeasibility = static_cast<double>(res.infeasibility);
    if (res.status == lp::Status::PivotLimit || res.status == lp::Status::Unbounded) {
        throw Error(ErrorKind::LPNumericalFailure,
                    strfmt("membership in %s did not converge after %zu pivots", to_string(vs.name).data(),
                           res.pivots));
    }
    out.inside = inside;
    if (inside) {
        out.weights.resize(vs.size());
        double sum = 0;
        for (std::size_t c = 0; c < vs.size(); ++c) {
            out.weights[c] = static_cast<double>(res.x[c]);
            sum += out.weights[c];
            if (out.weights[c] < -1e-9) {
                throw Error(ErrorKind::LPNumericalFailure, strfmt("certificate weight %zu is %.3g", c, out.weights[c]));
            }
        }
        out.recombination_error = recombination_error(b, vs, out.weights);
        if (out.recombination_error > opt.recombination_tol || std::abs(sum - 1) > opt.recombination_tol) {
            throw Error(ErrorKind::LPNumericalFailure,
                        strfmt("certificate for %s reproduces the box only to %.3g (weight sum %.17g)",
                               to_string(vs.name).data(), out.recombination_error, sum));
        }
    } else {
        out.farkas.reserve(res.farkas.size());
        for (const auto &y : res.farkas) out.farkas.push_back(static_cast<double>(y));
        out.violation = find_witness(b, vs);
    }
    return out;
}

}  // namespace detail

/// Convex weights over the vertex set reproducing all 64 probabilities, or
/// an infeasibility certificate plus a named witness when one separates.
inline MembershipResult membership(const Behavior &b, const VertexSet &vs, const MembershipOptions &opt = {}) {
    static const lp::DenseMatrix<double> AL = detail::membership_matrix<double>(vertex_set(SetName::L));
    static const lp::DenseMatrix<double> AL2 = detail::membership_matrix<double>(vertex_set(SetName::L2));
    static const lp::DenseMatrix<double> AR = detail::membership_matrix<double>(vertex_set(SetName::R));
    const auto &A = vs.name == SetName::L ? AL : vs.name == SetName::L2 ? AL2 : AR;
    std::vector<double> rhs(b.probs().begin(), b.probs().end());
    rhs.push_back(1.0);
    auto tol = lp::Tolerances<double>::defaults();
    tol.feasibility = opt.feasibility_tol;
    auto res = lp::find_feasible(A, rhs, tol);
    bool inside = res.status == lp::Status::Optimal;
    return detail::finish_membership(b, vs, res, inside, opt);
}

inline MembershipResult membership(const Behavior &b, SetName s, const MembershipOptions &opt = {}) {
    return membership(b, vertex_set(s), opt);
}

using Rational = boost::multiprecision::cpp_rational;

/// Same LP in exact rational arithmetic. Every double converts exactly, so
/// the verdict is exact for the given table; intended for dyadic boxes.
inline MembershipResult membership_exact(const Behavior &b, const VertexSet &vs) {
    auto A = detail::membership_matrix<Rational>(vs);
    std::vector<Rational> rhs;
    for (double p : b.probs()) rhs.emplace_back(p);
    rhs.emplace_back(1);
    auto res = lp::find_feasible(A, rhs);
    bool inside = res.status == lp::Status::Optimal;
    MembershipOptions opt;
    opt.recombination_tol = 1e-12;
    return detail::finish_membership(b, vs, res, inside, opt);
}

/// Vertices carrying weight above `floor`, as (tag, weight).
inline std::vector<std::pair<CanonicalVertex, double>> certificate_support(const MembershipResult &r,
                                                                            double floor = 1e-12) {
    std::vector<std::pair<CanonicalVertex, double>> out;
    const auto &vs = vertex_set(r.set);
    for (std::size_t c = 0; c < r.weights.size(); ++c)
        if (r.weights[c] > floor) out.emplace_back(vs.tags[c], r.weights[c]);
    return out;
}

enum class Region { BellLocal, TwoWayNonlocal, ThreeWayNonlocalInR, OutsideR };

constexpr std::string_view to_string(Region r) noexcept {
    switch (r) {
        case Region::BellLocal: return "BellLocal";
        case Region::TwoWayNonlocal: return "TwoWayNonlocal";
        case Region::ThreeWayNonlocalInR: return "ThreeWayNonlocalInR";
        case Region::OutsideR: return "OutsideR";
    }
    return "?";
}

inline Region classify_region(const Behavior &b) {
    if (membership(b, SetName::L).inside) return Region::BellLocal;
    if (membership(b, SetName::L2).inside) return Region::TwoWayNonlocal;
    if (membership(b, SetName::R).inside) return Region::ThreeWayNonlocalInR;
    return Region::OutsideR;
}

/// Mixture of the terms reproduces b within 1e-8 per probability.
inline bool verify_decomposition(const Behavior &b, std::span<const WeightedBox> terms, double tol = 1e-8) {
    check_weights(terms);
    for (std::size_t r = 0; r < kCells; ++r) {
        double s = 0;
        for (const auto &t : terms) s += t.weight * t.box[r];
        if (std::abs(s - b[r]) > tol) return false;
    }
    return true;
}
inline bool verify_decomposition(const Behavior &b, std::initializer_list<WeightedBox> terms, double tol = 1e-8) {
    return verify_decomposition(b, std::span<const WeightedBox>(terms.begin(), terms.size()), tol);
}

struct ThreeDecomposition {
    double mu = 0, nu = 0;
    SvetlichnyTag svet_tag{};
    MerminMmTag mermin_tag{};
    ProbTable residual_probs{};        // raw (b - μ Sv - ν M)/(1-μ-ν); white noise when μ+ν ≈ 1
    bool residual_defined = true;      // false when μ+ν ≈ 1 and nothing remains
    bool residual_valid = true;
    std::string residual_error;        // validation message when invalid
    std::optional<Behavior> residual;  // present iff valid
    double residual_G = 0, residual_Q = 0;
    double recombination_error = 0;
};

struct DecompositionOptions {
    bool throw_on_invalid_residual = true;
    double residual_tol = 1e-8;
};

/// b = μ Sv + ν M + (1-μ-ν) residual with μ = G/8 and ν = Q/4. The
/// Svetlichny tag maximizes the signed S_{αβγε} of b; the Mermin tag
/// maximizes the signed Mermin functional of b - μ Sv.
inline ThreeDecomposition three_decomposition(const Behavior &b, const DecompositionOptions &opt = {}) {
    if (!membership(b, SetName::R).inside) throw Error(ErrorKind::NotInR, "box is outside the Svetlichny-box polytope");
    ThreeDecomposition d;
    auto rep = discord_report(b);
    d.mu = rep.G / 8;
    d.nu = rep.Q / 4;

    const auto &cv = b.correlators();
    double best = -1e300;
    for (unsigned t = 0; t < 16; ++t) {
        double s = svetlichny_value(cv, t >> 3, (t >> 2) & 1u, (t >> 1) & 1u, t & 1u);
        if (s > best + 1e-12) best = s, d.svet_tag = {t};
    }
    Behavior sv = to_behavior(d.svet_tag);
    CorrelatorVector rem = cv - d.mu * sv.correlators();
    best = -1e300;
    unsigned f_best = 0;
    for (unsigned f = 0; f < 16; ++f) {
        double m = mermin_value(rem, f >> 3, (f >> 2) & 1u, (f >> 1) & 1u, f & 1u);
        if (m > best + 1e-12) best = m, f_best = f;
    }
    d.mermin_tag = {mermin_functional_of_variant(f_best)};  // the map is an involution
    Behavior mm = to_behavior(d.mermin_tag);

    double rest = 1 - d.mu - d.nu;
    if (rest < -1e-9) {
        throw Error(ErrorKind::ResidualInvalid, detail::strfmt("mu + nu = %.17g exceeds 1", d.mu + d.nu));
    }
    if (rest > 1e-9) {
        for (std::size_t r = 0; r < kCells; ++r) d.residual_probs[r] = (b[r] - d.mu * sv[r] - d.nu * mm[r]) / rest;
        try {
            d.residual = Behavior::from_probabilities(d.residual_probs, opt.residual_tol);
            auto rr = discord_report(*d.residual);
            d.residual_G = rr.G;
            d.residual_Q = rr.Q;
        } catch (const Error &e) {
            d.residual_valid = false;
            d.residual_error = e.what();
            if (opt.throw_on_invalid_residual) throw Error(ErrorKind::ResidualInvalid, e.what());
            auto rr = discord_report(CorrelatorVector(correlators_of(d.residual_probs)));
            d.residual_G = rr.G;
            d.residual_Q = rr.Q;
        }
    } else {
        d.residual_defined = false;
        d.residual_probs = white_noise().probs();
    }
    double w = std::max(rest, 0.0);
    for (std::size_t r = 0; r < kCells; ++r) {
        double s = d.mu * sv[r] + d.nu * mm[r] + w * d.residual_probs[r];
        d.recombination_error = std::max(d.recombination_error, std::abs(s - b[r]));
    }
    return d;
}

}  // namespace tribox

#endif
