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

#ifndef TRIBOX_QUANTUM_HPP
#define TRIBOX_QUANTUM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tribox/box.hpp"

namespace tribox::quantum {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;
using Vec3 = std::array<double, 3>;

inline constexpr double kPi = std::numbers::pi;

// Qubit 0 is the most significant bit of a basis index, so for three qubits
// the tensor order is A ⊗ B ⊗ C.

class DensityOperator {
   public:
    static DensityOperator from_matrix(const Matrix &m) {
        if (m.rows() != m.cols() || m.rows() < 2 || (m.rows() & (m.rows() - 1)) != 0 || m.rows() > 64) {
            throw Error(ErrorKind::InvalidState, tribox::detail::strfmt("dimension %ld is not 2^n with n <= 6", long(m.rows())));
        }
        double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (herm > 1e-12) throw Error(ErrorKind::InvalidState, tribox::detail::strfmt("not Hermitian (%.3g)", herm));
        cplx tr = m.trace();
        if (std::abs(tr - cplx(1, 0)) > 1e-12) {
            throw Error(ErrorKind::InvalidState, tribox::detail::strfmt("trace %.17g%+.3gi", tr.real(), tr.imag()));
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
        double lo = es.eigenvalues().minCoeff();
        if (lo < -1e-10) throw Error(ErrorKind::InvalidState, tribox::detail::strfmt("negative eigenvalue %.3g", lo));
        return DensityOperator(m);
    }

    static DensityOperator from_ket(const Ket &psi) {
        double n = psi.norm();
        if (std::abs(n - 1) > 1e-12) throw Error(ErrorKind::InvalidState, tribox::detail::strfmt("ket norm %.17g", n));
        return from_matrix(psi * psi.adjoint());
    }

    const Matrix &matrix() const noexcept { return rho_; }
    int qubits() const noexcept {
        int n = 0;
        while ((Eigen::Index(1) << n) < rho_.rows()) ++n;
        return n;
    }

   private:
    explicit DensityOperator(const Matrix &m) : rho_(m) {}
    Matrix rho_;
};

/// Six unit Bloch vectors: a[i], b[j], c[k].
struct MeasurementSettings {
    std::array<Vec3, 2> a{}, b{}, c{};

    void validate() const {
        const char names[3] = {'a', 'b', 'c'};
        const std::array<Vec3, 2> *all[3] = {&a, &b, &c};
        for (int p = 0; p < 3; ++p)
            for (int x = 0; x < 2; ++x) {
                const Vec3 &v = (*all[p])[x];
                double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
                if (!(std::abs(n - 1) <= 1e-12)) {
                    throw Error(ErrorKind::InvalidSettings, tribox::detail::strfmt("%c%d has norm %.17g", names[p], x, n));
                }
            }
    }
};

namespace detail {

inline Matrix pauli(int axis) {
    Matrix s(2, 2);
    switch (axis) {
        case 0: s << 0, 1, 1, 0; break;
        case 1: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

/// (1 + (-1)^outcome n.σ)/2; outcome 0 is the +1 eigenvalue.
inline Matrix projector(const Vec3 &n, unsigned outcome) {
    Matrix p = Matrix::Identity(2, 2);
    double s = outcome ? -1.0 : 1.0;
    for (int ax = 0; ax < 3; ++ax) p += s * n[ax] * pauli(ax);
    return p / 2.0;
}

inline Matrix kron(const Matrix &x, const Matrix &y) {
    Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index r = 0; r < x.rows(); ++r)
        for (Eigen::Index c = 0; c < x.cols(); ++c) out.block(r * y.rows(), c * y.cols(), y.rows(), y.cols()) = x(r, c) * y;
    return out;
}

inline Ket basis_ket(int qubits, unsigned index) {
    Ket k = Ket::Zero(Eigen::Index(1) << qubits);
    k(index) = 1;
    return k;
}

// Born-rule table on a three-qubit operator, no validation.
inline ProbTable born_table(const Matrix &rho, const MeasurementSettings &s, unsigned only_i = 2) {
    ProbTable p{};
    std::array<std::array<Matrix, 2>, 2> PA, PB, PC;
    for (unsigned x = 0; x < 2; ++x)
        for (unsigned y = 0; y < 2; ++y) {
            PA[x][y] = projector(s.a[x], y);
            PB[x][y] = projector(s.b[x], y);
            PC[x][y] = projector(s.c[x], y);
        }
    for (std::size_t idx = 0; idx < kCells; ++idx) {
        auto c = decode(idx);
        if (only_i < 2 && c.i != only_i) continue;
        Matrix op = kron(kron(PA[c.i][c.m], PB[c.j][c.n]), PC[c.k][c.o]);
        p[idx] = (rho * op).trace().real();
    }
    return p;
}

}  // namespace detail

/// P(mno|ijk) = Tr(ρ Π_a ⊗ Π_b ⊗ Π_c), validated at the quantum tolerance.
inline Behavior born_box(const DensityOperator &rho, const MeasurementSettings &s) {
    if (rho.qubits() != 3) throw Error(ErrorKind::InvalidState, "born_box needs a three-qubit state");
    s.validate();
    return Behavior::from_probabilities(detail::born_table(rho.matrix(), s), kQuantumTol);
}

/// Reduced state on `keep`, in the listed order.
inline Matrix partial_trace(const Matrix &rho, int qubits, const std::vector<int> &keep) {
    int nk = int(keep.size());
    std::vector<int> rest;
    for (int q = 0; q < qubits; ++q)
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
    auto full_index = [&](unsigned kept, unsigned traced) {
        unsigned idx = 0;
        for (int t = 0; t < nk; ++t)
            if ((kept >> (nk - 1 - t)) & 1u) idx |= 1u << (qubits - 1 - keep[t]);
        for (int t = 0; t < int(rest.size()); ++t)
            if ((traced >> t) & 1u) idx |= 1u << (qubits - 1 - rest[t]);
        return idx;
    };
    Eigen::Index dk = Eigen::Index(1) << nk;
    Matrix out = Matrix::Zero(dk, dk);
    for (unsigned r = 0; r < dk; ++r)
        for (unsigned c = 0; c < dk; ++c)
            for (unsigned t = 0; t < (1u << rest.size()); ++t) out(r, c) += rho(full_index(r, t), full_index(c, t));
    return out;
}

/// Reorders qubits: new qubit q is old qubit order[q].
inline Matrix permute_qubits(const Matrix &rho, const std::vector<int> &order) {
    return partial_trace(rho, int(order.size()), order);
}

/// Alice's input selects a block of three qubits (measured by A, B, C in that
/// order); directions are shared by both blocks.
struct BlockStrategy {
    std::array<std::array<int, 3>, 2> qubits{};
    MeasurementSettings directions{};
};

inline Behavior born_box_blocked(const DensityOperator &rho, const BlockStrategy &strat) {
    strat.directions.validate();
    ProbTable p{};
    for (unsigned i = 0; i < 2; ++i) {
        const auto &q = strat.qubits[i];
        for (int t : q)
            if (t < 0 || t >= rho.qubits()) throw Error(ErrorKind::InvalidSettings, tribox::detail::strfmt("qubit %d", t));
        Matrix red = partial_trace(rho.matrix(), rho.qubits(), {q[0], q[1], q[2]});
        ProbTable part = detail::born_table(red, strat.directions, i);
        for (std::size_t idx = 0; idx < kCells; ++idx)
            if (decode(idx).i == i) p[idx] = part[idx];
    }
    return Behavior::from_probabilities(p, kQuantumTol);
}

// ---------------------------------------------------------------------------
// States.

inline DensityOperator ghz_class(double theta, double theta3) {
    Ket psi = std::cos(theta) * detail::basis_ket(3, 0b000) +
              std::sin(theta) * (std::cos(theta3) * detail::basis_ket(3, 0b110) +
                                 std::sin(theta3) * detail::basis_ket(3, 0b111));
    return DensityOperator::from_ket(psi);
}

/// cosθ|000> + sinθ|111>.
inline DensityOperator gghz(double theta) { return ghz_class(theta, kPi / 2); }
inline DensityOperator ghz() {
    Ket psi = (detail::basis_ket(3, 0) + detail::basis_ket(3, 7)) / std::sqrt(2.0);
    return DensityOperator::from_ket(psi);
}

/// α|100> + β|010> + γ|001> with real amplitudes.
inline DensityOperator w_class(double alpha, double beta, double gamma) {
    double n = alpha * alpha + beta * beta + gamma * gamma;
    if (std::abs(n - 1) > 1e-12) {
        throw Error(ErrorKind::BadParameters, tribox::detail::strfmt("W amplitudes have squared norm %.17g", n));
    }
    Ket psi = alpha * detail::basis_ket(3, 0b100) + beta * detail::basis_ket(3, 0b010) + gamma * detail::basis_ket(3, 0b001);
    return DensityOperator::from_ket(psi);
}
inline DensityOperator w() {
    double a = 1 / std::sqrt(3.0);
    Ket psi = a * (detail::basis_ket(3, 0b100) + detail::basis_ket(3, 0b010) + detail::basis_ket(3, 0b001));
    return DensityOperator::from_ket(psi);
}

namespace detail {
inline void require_unit_interval(double p, const char *name) {
    if (!(p >= 0 && p <= 1)) throw Error(ErrorKind::BadParameters, tribox::detail::strfmt("%s = %.17g outside [0,1]", name, p));
}
}  // namespace detail

/// p GHZ + (1-p) 1/8.
inline DensityOperator werner(double p) {
    detail::require_unit_interval(p, "p");
    return DensityOperator::from_matrix(p * ghz().matrix() + (1 - p) * Matrix::Identity(8, 8) / 8.0);
}

/// Equal mixture of the three two-party W states (|10>+|01>)/√2 with the
/// third party in |0>.
inline DensityOperator bisep_w() {
    double r = 1 / std::sqrt(2.0);
    Ket ab = r * (detail::basis_ket(3, 0b100) + detail::basis_ket(3, 0b010));
    Ket ac = r * (detail::basis_ket(3, 0b100) + detail::basis_ket(3, 0b001));
    Ket bc = r * (detail::basis_ket(3, 0b010) + detail::basis_ket(3, 0b001));
    Matrix m = (ab * ab.adjoint() + ac * ac.adjoint() + bc * bc.adjoint()) / 3.0;
    return DensityOperator::from_matrix(m);
}

inline DensityOperator ghz_w(double p, double q) {
    detail::require_unit_interval(p, "p");
    detail::require_unit_interval(q, "q");
    if (std::abs(p + q - 1) > 1e-12) throw Error(ErrorKind::BadParameters, tribox::detail::strfmt("p + q = %.17g", p + q));
    return DensityOperator::from_matrix(p * ghz().matrix() + q * w().matrix());
}

namespace detail {

// Single-qubit pure states: eigenstates of x and y.
inline Ket x_plus() { return (basis_ket(1, 0) + basis_ket(1, 1)) / std::sqrt(2.0); }
inline Ket x_minus() { return (basis_ket(1, 0) - basis_ket(1, 1)) / std::sqrt(2.0); }
inline Ket y_plus() { return (basis_ket(1, 0) + cplx(0, 1) * basis_ket(1, 1)) / std::sqrt(2.0); }
inline Ket y_minus() { return (basis_ket(1, 0) - cplx(0, 1) * basis_ket(1, 1)) / std::sqrt(2.0); }
inline Matrix proj(const Ket &k) { return k * k.adjoint(); }

// Appendix blocks on qubits (1,2,3) and (4,5,6).
inline Matrix appendix_block_x() {
    double r = 1 / std::sqrt(2.0);
    Ket phi_p = r * (basis_ket(2, 0b00) + basis_ket(2, 0b11));
    Ket phi_m = r * (basis_ket(2, 0b00) - basis_ket(2, 0b11));
    return (kron(proj(x_plus()), proj(phi_p)) + kron(proj(x_minus()), proj(phi_m))) / 2.0;
}
inline Ket appendix_psi(bool plus) {
    double r = 1 / std::sqrt(2.0);
    return r * (basis_ket(2, 0b01) + cplx(0, plus ? 1.0 : -1.0) * basis_ket(2, 0b10));
}

}  // namespace detail

/// Six-qubit 4-separable state. Alice holds qubits 0 and 3, Bob 1 and 4,
/// Charlie 2 and 5.
inline DensityOperator sixqubit_4sep() {
    using namespace detail;
    Matrix second = (kron(proj(y_plus()), proj(appendix_psi(true))) + kron(proj(y_minus()), proj(appendix_psi(false)))) / 2.0;
    return DensityOperator::from_matrix(kron(appendix_block_x(), second));
}

/// Variant whose second block is the single term |0>_y ⊗ |ψ+>, normalized.
inline DensityOperator sixqubit_partial() {
    using namespace detail;
    Matrix second = kron(proj(y_plus()), proj(appendix_psi(true)));
    return DensityOperator::from_matrix(kron(appendix_block_x(), second));
}

// ---------------------------------------------------------------------------
// Settings.

inline constexpr Vec3 kX{1, 0, 0}, kY{0, 1, 0}, kZ{0, 0, 1};

namespace detail {
inline Vec3 combo(double s, const Vec3 &u, double t, const Vec3 &v) {
    return {s * u[0] + t * v[0], s * u[1] + t * v[1], s * u[2] + t * v[2]};
}
}  // namespace detail

/// a = (x, y), b_j = (x + (-1)^{j⊕1} y)/√2, c = (x, y).
inline MeasurementSettings settings_sd_xy() {
    double r = 1 / std::sqrt(2.0);
    return {{kX, kY}, {detail::combo(r, kX, -r, kY), detail::combo(r, kX, r, kY)}, {kX, kY}};
}
/// a = (z, x), b_j = (z + (-1)^j x)/√2, c = (z, x).
inline MeasurementSettings settings_sd_xz() {
    double r = 1 / std::sqrt(2.0);
    return {{kZ, kX}, {detail::combo(r, kZ, r, kX), detail::combo(r, kZ, -r, kX)}, {kZ, kX}};
}
inline MeasurementSettings settings_md_xy() { return {{kX, kY}, {kX, kY}, {kX, kY}}; }
inline MeasurementSettings settings_md_xz() { return {{kZ, kX}, {kZ, kX}, {kZ, kX}}; }

/// Bob's pair rotated by 2θ in the xy-plane.
inline MeasurementSettings settings_gghz_dependent(double theta) {
    double s = std::sin(2 * theta), c = std::cos(2 * theta);
    return {{kX, kY}, {detail::combo(s, kX, -c, kY), detail::combo(c, kX, s, kY)}, {kX, kY}};
}

/// b_j = cos t z + (-1)^j sin t x with cos t = 1/√(1+sin²2θ).
inline MeasurementSettings settings_class99(double theta) {
    double s2 = std::sin(2 * theta);
    double ct = 1 / std::sqrt(1 + s2 * s2);
    double st = std::sqrt(1 - ct * ct);
    return {{kZ, kX}, {detail::combo(ct, kZ, st, kX), detail::combo(ct, kZ, -st, kX)}, {kZ, kX}};
}

/// b_0 = √p x - √(1-p) y, b_1 = √(1-p) x + √p y.
inline MeasurementSettings settings_mixed_p(double p) {
    detail::require_unit_interval(p, "p");
    double a = std::sqrt(p), b = std::sqrt(1 - p);
    return {{kX, kY}, {detail::combo(a, kX, -b, kY), detail::combo(b, kX, a, kY)}, {kX, kY}};
}

/// Alice's input picks block (0,1,2) or (3,4,5); everyone measures x then y.
inline BlockStrategy appendix_strategy() { return {{{{0, 1, 2}, {3, 4, 5}}}, settings_md_xy()}; }

// ---------------------------------------------------------------------------
// Closed forms.

inline double tau3_ghz_class(double theta, double theta3) {
    double v = std::sin(2 * theta) * std::sin(theta3);
    return v * v;
}

struct Concurrences {
    double c12, c13, c23;
};

inline Concurrences concurrences_w_class(double alpha, double beta, double gamma) {
    return {2 * std::abs(alpha * beta), 2 * std::abs(alpha * gamma), 2 * std::abs(beta * gamma)};
}

inline double ca_min(double alpha, double beta, double gamma) {
    auto c = concurrences_w_class(alpha, beta, gamma);
    return std::min({c.c12, c.c13, c.c23});
}

// ---------------------------------------------------------------------------
// Random states and settings.

inline Ket haar_ket(int qubits, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0, 1);
    Ket k(Eigen::Index(1) << qubits);
    for (Eigen::Index t = 0; t < k.size(); ++t) k(t) = cplx(g(rng), g(rng));
    return k / k.norm();
}

inline Vec3 random_direction(std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0, 1);
    for (;;) {
        Vec3 v{g(rng), g(rng), g(rng)};
        double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (n > 1e-6) return {v[0] / n, v[1] / n, v[2] / n};
    }
}

inline Vec3 random_xy_direction(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 2 * kPi);
    double phi = u(rng);
    return {std::cos(phi), std::sin(phi), 0};
}

inline MeasurementSettings random_settings(std::mt19937_64 &rng) {
    MeasurementSettings s;
    for (auto *side : {&s.a, &s.b, &s.c})
        for (auto &v : *side) v = random_direction(rng);
    return s;
}

inline MeasurementSettings random_xy_settings(std::mt19937_64 &rng) {
    MeasurementSettings s;
    for (auto *side : {&s.a, &s.b, &s.c})
        for (auto &v : *side) v = random_xy_direction(rng);
    return s;
}

enum class CqQcKind { CQ, QC12_3, QC13_2 };

inline std::string_view to_string(CqQcKind k) noexcept {
    switch (k) {
        case CqQcKind::CQ: return "CQ";
        case CqQcKind::QC12_3: return "QC12|3";
        case CqQcKind::QC13_2: return "QC13|2";
    }
    return "?";
}

/// One term p_i ρ_pair ⊗ ρ_single of a sampled state. For CQ the pair is
/// (B,C) and the single party A; for QC12|3 the pair is (A,B); for QC13|2
/// it is (A,C).
struct CqQcTerm {
    double weight;
    Matrix pair;    // 4x4
    Matrix single;  // 2x2
};

struct CqQcSample {
    CqQcKind kind;
    std::vector<CqQcTerm> terms;
    DensityOperator state;
};

/// Haar-random pure two-qubit blocks times random pure single-qubit states,
/// mixed with flat Dirichlet weights.
inline CqQcSample sample_cq_qc_terms(CqQcKind kind, std::uint64_t seed, int n_terms = 3) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> w(n_terms);
    double tot = 0;
    for (auto &x : w) tot += (x = ex(rng));
    std::vector<CqQcTerm> terms;
    Matrix rho = Matrix::Zero(8, 8);
    for (int t = 0; t < n_terms; ++t) {
        Ket pk = haar_ket(2, rng), sk = haar_ket(1, rng);
        CqQcTerm term{w[t] / tot, pk * pk.adjoint(), sk * sk.adjoint()};
        Matrix full;
        switch (kind) {
            case CqQcKind::CQ: full = detail::kron(term.single, term.pair); break;
            case CqQcKind::QC12_3: full = detail::kron(term.pair, term.single); break;
            default: full = permute_qubits(detail::kron(term.pair, term.single), {0, 2, 1}); break;
        }
        rho += term.weight * full;
        terms.push_back(std::move(term));
    }
    // Hermitian to rounding; symmetrize before validation.
    Matrix sym = (rho + rho.adjoint()) / 2.0;
    sym /= sym.trace().real();
    return {kind, std::move(terms), DensityOperator::from_matrix(sym)};
}

inline DensityOperator sample_cq_qc(CqQcKind kind, std::uint64_t seed) { return sample_cq_qc_terms(kind, seed).state; }

/// <σ_n> on a single-qubit operator, and <σ_u ⊗ σ_v> on a two-qubit one.
inline double expect1(const Matrix &rho, const Vec3 &n) {
    Matrix op = n[0] * detail::pauli(0) + n[1] * detail::pauli(1) + n[2] * detail::pauli(2);
    return (rho * op).trace().real();
}
inline double expect2(const Matrix &rho, const Vec3 &u, const Vec3 &v) {
    Matrix a = u[0] * detail::pauli(0) + u[1] * detail::pauli(1) + u[2] * detail::pauli(2);
    Matrix b = v[0] * detail::pauli(0) + v[1] * detail::pauli(1) + v[2] * detail::pauli(2);
    return (rho * detail::kron(a, b)).trace().real();
}

}  // namespace tribox::quantum

#endif
