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

#ifndef TRIBOX_SIMPLEX_HPP
#define TRIBOX_SIMPLEX_HPP

// Dense two-phase tableau simplex with Bland's rule, for
//
//     minimize c.x  subject to  A x = b,  x >= 0.
//
// Problems here are tiny (65 rows, <= 176 columns), so a dense tableau is
// simplest and fully deterministic. Scalar may be double or an exact type
// such as boost::multiprecision::cpp_rational; tolerances are zero for
// exact types.

#include <cstddef>
#include <limits>
#include <type_traits>
#include <vector>

#include "tribox/error.hpp"

namespace tribox::lp {

template <class Scalar>
struct DenseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Scalar> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Scalar(0)) {}
    Scalar &operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const Scalar &operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

template <class Scalar>
struct Tolerances {
    Scalar pivot;        // smallest usable pivot magnitude
    Scalar optimality;   // reduced cost must be below -optimality to enter
    Scalar feasibility;  // phase-1 optimum at or below this counts as feasible
    std::size_t max_pivots = 20000;

    static Tolerances defaults() {
        if constexpr (std::is_floating_point_v<Scalar>) {
            return {Scalar(1e-11), Scalar(1e-12), Scalar(1e-9)};
        } else {
            return {Scalar(0), Scalar(0), Scalar(0)};
        }
    }
};

enum class Status { Optimal, Infeasible, Unbounded, PivotLimit };

template <class Scalar>
struct Result {
    Status status = Status::PivotLimit;
    std::vector<Scalar> x;        // primal solution (size = cols of A)
    Scalar objective{0};
    Scalar infeasibility{0};      // phase-1 optimum: sum of artificials
    std::vector<Scalar> farkas;   // when infeasible: y with y.A <= 0 and y.b > 0
    std::size_t pivots = 0;
};

template <class Scalar>
class TableauSolver {
   public:
    TableauSolver(const DenseMatrix<Scalar> &A, const std::vector<Scalar> &b, Tolerances<Scalar> tol)
        : m_(A.rows), n_(A.cols), tol_(tol), T_(A.rows + 1, A.cols + A.rows + 1), flipped_(A.rows, false),
          basis_(A.rows) {
        if (b.size() != m_) throw Error(ErrorKind::BadParameters, "rhs size does not match constraint rows");
        for (std::size_t r = 0; r < m_; ++r) {
            flipped_[r] = b[r] < Scalar(0);
            for (std::size_t c = 0; c < n_; ++c) T_(r, c) = flipped_[r] ? Scalar(-A(r, c)) : A(r, c);
            T_(r, n_ + r) = Scalar(1);
            T_(r, rhs()) = flipped_[r] ? Scalar(-b[r]) : b[r];
            basis_[r] = n_ + r;
        }
    }

    Result<Scalar> solve(const std::vector<Scalar> *cost) {
        Result<Scalar> res;
        // Phase 1: minimize the sum of artificials.
        for (std::size_t c = 0; c <= rhs(); ++c) T_(m_, c) = Scalar(0);
        for (std::size_t r = 0; r < m_; ++r) {
            for (std::size_t c = 0; c < n_; ++c) T_(m_, c) -= T_(r, c);
            T_(m_, rhs()) -= T_(r, rhs());
        }
        Status s = iterate(n_ + m_, res.pivots);
        if (s == Status::PivotLimit) {
            res.status = s;
            return res;
        }
        res.infeasibility = -T_(m_, rhs());
        if (res.infeasibility > tol_.feasibility) {
            res.status = Status::Infeasible;
            // Reduced cost of artificial r is 1 - y_r.
            res.farkas.resize(m_);
            for (std::size_t r = 0; r < m_; ++r) {
                Scalar y = Scalar(1) - T_(m_, n_ + r);
                res.farkas[r] = flipped_[r] ? Scalar(-y) : y;
            }
            res.x = primal();
            return res;
        }
        drive_out_artificials(res.pivots);

        if (cost) {
            for (std::size_t c = 0; c <= rhs(); ++c) T_(m_, c) = Scalar(0);
            for (std::size_t c = 0; c < n_; ++c) T_(m_, c) = (*cost)[c];
            for (std::size_t r = 0; r < m_; ++r) {
                if (basis_[r] >= n_) continue;
                Scalar cb = (*cost)[basis_[r]];
                if (cb == Scalar(0)) continue;
                for (std::size_t c = 0; c <= rhs(); ++c) T_(m_, c) -= cb * T_(r, c);
            }
            s = iterate(n_, res.pivots);
            if (s != Status::Optimal) {
                res.status = s;
                return res;
            }
            res.objective = -T_(m_, rhs());
        }
        res.status = Status::Optimal;
        res.x = primal();
        return res;
    }

   private:
    std::size_t rhs() const { return n_ + m_; }

    std::vector<Scalar> primal() const {
        std::vector<Scalar> x(n_, Scalar(0));
        for (std::size_t r = 0; r < m_; ++r)
            if (basis_[r] < n_) x[basis_[r]] = T_(r, rhs());
        return x;
    }

    void pivot(std::size_t pr, std::size_t pc) {
        Scalar inv = Scalar(1) / T_(pr, pc);
        for (std::size_t c = 0; c <= rhs(); ++c) {
            if (T_(pr, c) != Scalar(0)) T_(pr, c) *= inv;
        }
        T_(pr, pc) = Scalar(1);
        for (std::size_t r = 0; r <= m_; ++r) {
            if (r == pr) continue;
            Scalar f = T_(r, pc);
            if (f == Scalar(0)) continue;
            for (std::size_t c = 0; c <= rhs(); ++c) {
                if (T_(pr, c) != Scalar(0)) T_(r, c) -= f * T_(pr, c);
            }
            T_(r, pc) = Scalar(0);
        }
        basis_[pr] = pc;
    }

    // Bland's rule: lowest-index entering column, lowest-index leaving basis
    // variable among ratio ties. Columns >= limit never enter.
    Status iterate(std::size_t limit, std::size_t &pivots) {
        for (;;) {
            std::size_t enter = limit;
            for (std::size_t c = 0; c < limit; ++c) {
                if (T_(m_, c) < -tol_.optimality) {
                    enter = c;
                    break;
                }
            }
            if (enter == limit) return Status::Optimal;
            std::size_t leave = m_;
            Scalar best{0};
            for (std::size_t r = 0; r < m_; ++r) {
                if (!(T_(r, enter) > tol_.pivot)) continue;
                Scalar ratio = T_(r, rhs()) / T_(r, enter);
                if (leave == m_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == m_) return Status::Unbounded;
            if (++pivots > tol_.max_pivots) return Status::PivotLimit;
            pivot(leave, enter);
        }
    }

    void drive_out_artificials(std::size_t &pivots) {
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < n_) continue;
            std::size_t best = n_;
            for (std::size_t c = 0; c < n_; ++c) {
                Scalar a = T_(r, c) < Scalar(0) ? Scalar(-T_(r, c)) : T_(r, c);
                if (a > tol_.pivot) {
                    best = c;
                    break;
                }
            }
            // A row with no usable entry is redundant; its artificial stays
            // basic at zero and never blocks a ratio test.
            if (best < n_) {
                ++pivots;
                pivot(r, best);
            }
        }
    }

    std::size_t m_, n_;
    Tolerances<Scalar> tol_;
    DenseMatrix<Scalar> T_;
    std::vector<bool> flipped_;
    std::vector<std::size_t> basis_;
};

/// Find x >= 0 with A x = b, or a Farkas certificate that none exists.
template <class Scalar>
Result<Scalar> find_feasible(const DenseMatrix<Scalar> &A, const std::vector<Scalar> &b,
                             Tolerances<Scalar> tol = Tolerances<Scalar>::defaults()) {
    TableauSolver<Scalar> s(A, b, tol);
    return s.solve(nullptr);
}

template <class Scalar>
Result<Scalar> minimize(const DenseMatrix<Scalar> &A, const std::vector<Scalar> &b, const std::vector<Scalar> &c,
                        Tolerances<Scalar> tol = Tolerances<Scalar>::defaults()) {
    if (c.size() != A.cols) throw Error(ErrorKind::BadParameters, "cost size does not match columns");
    TableauSolver<Scalar> s(A, b, tol);
    return s.solve(&c);
}

}  // namespace tribox::lp

#endif
