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

#ifndef TRIBOX_REPRO_HPP
#define TRIBOX_REPRO_HPP

// Named reproduction suites. Each evaluates an analytic law on a grid, emits
// a table carrying both the measured value and the target, and a list of
// checks whose conjunction is the suite verdict.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "tribox/io.hpp"
#include "tribox/polytope.hpp"
#include "tribox/quantum.hpp"

namespace tribox::repro {

using io::Json;

/// Order-preserving parallel map over [0, n).
template <class F>
auto parallel_map(std::size_t n, F f, unsigned threads = 0) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    std::vector<std::optional<R>> slots(n);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = unsigned(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (;;) {
            std::size_t t = next.fetch_add(1);
            if (t >= n || failed.load()) return;
            try {
                slots[t].emplace(f(t));
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto &th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    std::vector<R> out;
    out.reserve(n);
    for (auto &s : slots) out.push_back(std::move(*s));
    return out;
}

struct Check {
    std::string name;
    double value;      // measured error or quantity
    double tolerance;  // pass iff value <= tolerance
    bool pass;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

struct SuiteResult {
    std::string suite;
    std::string law;
    Table table;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
    }
};

struct SuiteOptions {
    int grid = 0;  // 0 selects the suite default
    std::uint64_t seed = 1;
    double tol = 1e-7;
    unsigned threads = 0;
};

inline const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names = {"ghz-class-sweep", "w-class-sweep",  "werner-sweep", "gghz-dependent",
                                                   "class99-sweep",   "monogamy-scan",  "cqqc-null",    "bisep-w",
                                                   "ghz-w-mix",       "appendix-sixqubit"};
    return names;
}

namespace detail {

inline Check le(std::string name, double value, double tol) { return {std::move(name), value, tol, value <= tol}; }

inline double grid_point(int t, int n, double lo, double hi) { return n <= 1 ? lo : lo + (hi - lo) * t / (n - 1); }

inline int nonzero_count(const std::array<double, 8> &v, double floor = 1e-9) {
    return int(std::count_if(v.begin(), v.end(), [&](double x) { return x > floor; }));
}

inline double max_entry_diff(const Behavior &a, const Behavior &b) { return max_abs_diff(a, b); }

}  // namespace detail

/// The local part of the GHZ class-99 decomposition: the Born box of
/// ρ_AC ⊗ 1/2 (ρ_AC the GHZ two-party marginal) under class-99 settings.
inline Behavior ghz_class99_local_box(double theta = quantum::kPi / 4) {
    using namespace quantum;
    Matrix rho_ac = partial_trace(gghz(theta).matrix(), 3, {0, 2});
    Matrix full = permute_qubits(quantum::detail::kron(rho_ac, Matrix::Identity(2, 2) / 2.0), {0, 2, 1});
    return born_box(DensityOperator::from_matrix(full), settings_class99(theta));
}

inline SuiteResult ghz_class_sweep(const SuiteOptions &opt) {
    using namespace quantum;
    int n = opt.grid > 0 ? opt.grid : 15;
    SuiteResult r{"ghz-class-sweep", "G = 4 sqrt(2 tau3) at sd_xy, Q = 4 sqrt(tau3) at md_xy", {}, {}, {}};
    r.table.columns = {"theta", "theta3", "tau3", "G", "G_law", "Q", "Q_law", "nonzero_S_moduli"};
    struct Row {
        double th, th3, tau, G, Gl, Q, Ql;
        int nz;
    };
    auto rows = parallel_map(std::size_t(n * n), [&](std::size_t t) {
        double th = detail::grid_point(int(t) / n, n, 0, kPi / 2), th3 = detail::grid_point(int(t) % n, n, 0, kPi / 2);
        auto rho = ghz_class(th, th3);
        double tau = tau3_ghz_class(th, th3);
        auto bs = born_box(rho, settings_sd_xy());
        auto bm = born_box(rho, settings_md_xy());
        return Row{th, th3, tau, svetlichny_discord(bs), 4 * std::sqrt(2 * tau), mermin_discord(bm), 4 * std::sqrt(tau),
                   detail::nonzero_count(svetlichny_moduli(bs))};
    }, opt.threads);
    double eg = 0, eq = 0;
    int worst_nz = 0;
    for (const auto &x : rows) {
        r.table.rows.push_back({x.th, x.th3, x.tau, x.G, x.Gl, x.Q, x.Ql, x.nz});
        eg = std::max(eg, std::abs(x.G - x.Gl));
        eq = std::max(eq, std::abs(x.Q - x.Ql));
        worst_nz = std::max(worst_nz, x.nz);
    }
    r.checks.push_back(detail::le("max |G - 4 sqrt(2 tau3)|", eg, opt.tol));
    r.checks.push_back(detail::le("max |Q - 4 sqrt(tau3)|", eq, opt.tol));
    r.checks.push_back(detail::le("max number of nonzero Svetlichny moduli", worst_nz, 1));
    return r;
}

inline SuiteResult w_class_sweep(const SuiteOptions &opt) {
    using namespace quantum;
    int n = opt.grid > 0 ? opt.grid : 10;
    SuiteResult r{"w-class-sweep", "G = 4 sqrt2 Ca_min at sd_xz, Q = 4 Ca_min at md_xz, zero iff C12 C23 = 0", {}, {}, {}};
    r.table.columns = {"alpha", "beta", "gamma", "Ca_min", "G", "G_law", "Q", "Q_law"};
    std::vector<std::array<double, 3>> pts;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b) {
            int c = n - a - b;
            pts.push_back({std::sqrt(double(a) / n), std::sqrt(double(b) / n), std::sqrt(double(c) / n)});
        }
    struct Row {
        double a, b, c, cmin, G, Gl, Q, Ql;
        bool zero_ok;
    };
    auto rows = parallel_map(pts.size(), [&](std::size_t t) {
        auto [a, b, c] = pts[t];
        // Renormalize away the rounding of the square roots.
        double nrm = std::sqrt(a * a + b * b + c * c);
        a /= nrm, b /= nrm, c /= nrm;
        auto rho = w_class(a, b, c);
        double cm = ca_min(a, b, c);
        double G = svetlichny_discord(born_box(rho, settings_sd_xz()));
        double Q = mermin_discord(born_box(rho, settings_md_xz()));
        auto cc = concurrences_w_class(a, b, c);
        bool nonzero = cc.c12 * cc.c23 > 0;
        bool zero_ok = nonzero ? (G > opt.tol && Q > opt.tol) : (G <= opt.tol && Q <= opt.tol);
        return Row{a, b, c, cm, G, 4 * std::sqrt(2.0) * cm, Q, 4 * cm, zero_ok};
    }, opt.threads);
    double eg = 0, eq = 0;
    int bad_zero = 0;
    for (const auto &x : rows) {
        r.table.rows.push_back({x.a, x.b, x.c, x.cmin, x.G, x.Gl, x.Q, x.Ql});
        eg = std::max(eg, std::abs(x.G - x.Gl));
        eq = std::max(eq, std::abs(x.Q - x.Ql));
        bad_zero += x.zero_ok ? 0 : 1;
    }
    r.checks.push_back(detail::le("max |G - 4 sqrt2 Ca_min|", eg, opt.tol));
    r.checks.push_back(detail::le("max |Q - 4 Ca_min|", eq, opt.tol));
    r.checks.push_back(detail::le("grid points violating zero iff C12 C23 = 0", bad_zero, 0));
    return r;
}

inline SuiteResult werner_sweep(const SuiteOptions &opt) {
    using namespace quantum;
    int n = opt.grid > 0 ? opt.grid : 21;
    SuiteResult r{"werner-sweep", "G = 4 sqrt2 p at sd_xy, Q = 4 p at md_xy, boxes isotropic", {}, {}, {}};
    r.table.columns = {"p", "G", "G_law", "Q", "Q_law", "sd_xy_box_vs_isotropic_svetlichny", "md_xy_box_vs_isotropic_mermin"};
    Behavior sv = svetlichny_box(0, 0, 0, 0), mm = mermin_box_mm(0);
    struct Row {
        double p, G, Gl, Q, Ql, ds, dm;
    };
    auto rows = parallel_map(std::size_t(n), [&](std::size_t t) {
        double p = detail::grid_point(int(t), n, 0, 1);
        auto rho = werner(p);
        auto bs = born_box(rho, settings_sd_xy());
        auto bm = born_box(rho, settings_md_xy());
        return Row{p,
                   svetlichny_discord(bs),
                   4 * std::sqrt(2.0) * p,
                   mermin_discord(bm),
                   4 * p,
                   max_abs_diff(bs, isotropic(sv, p / std::sqrt(2.0))),
                   max_abs_diff(bm, isotropic(mm, p))};
    }, opt.threads);
    double eg = 0, eq = 0, es = 0, em = 0;
    for (const auto &x : rows) {
        r.table.rows.push_back({x.p, x.G, x.Gl, x.Q, x.Ql, x.ds, x.dm});
        eg = std::max(eg, std::abs(x.G - x.Gl));
        eq = std::max(eq, std::abs(x.Q - x.Ql));
        es = std::max(es, x.ds);
        em = std::max(em, x.dm);
    }
    r.checks.push_back(detail::le("max |G - 4 sqrt2 p|", eg, opt.tol));
    r.checks.push_back(detail::le("max |Q - 4 p|", eq, opt.tol));
    r.checks.push_back(detail::le("max entry error vs isotropic Svetlichny box", es, 1e-9));
    r.checks.push_back(detail::le("max entry error vs isotropic Mermin box", em, 1e-9));
    return r;
}

inline double gghz_g_law(double theta) {
    double tau = std::pow(std::sin(2 * theta), 2);
    return theta <= quantum::kPi / 8 ? 8 * tau : 8 * std::sqrt(tau * (1 - tau));
}
inline double gghz_q_law(double theta) {
    double tau = std::pow(std::sin(2 * theta), 2);
    return 4 * std::abs(tau - std::sqrt(tau * (1 - tau)));
}

inline SuiteResult gghz_dependent(const SuiteOptions &opt) {
    using namespace quantum;
    int n = opt.grid > 0 ? opt.grid : 25;
    SuiteResult r{"gghz-dependent",
                  "G = 8 tau3 (theta <= pi/8) or 8 sqrt(tau3(1-tau3)); Q = 4|tau3 - sqrt(tau3(1-tau3))|; "
                  "3-decomposition residual is white noise",
                  {}, {}, {}};
    r.table.columns = {"theta", "tau3", "G", "G_law", "Q", "Q_law", "mu", "nu", "svetlichny_box", "mermin_box",
                       "residual_vs_noise", "recombination_error"};
    struct Row {
        double th, tau, G, Gl, Q, Ql, mu, nu;
        std::string sv, mm;
        double noise, recomb;
    };
    auto rows = parallel_map(std::size_t(n), [&](std::size_t t) {
        double th = detail::grid_point(int(t) + 1, n + 1, 0, kPi / 4);
        auto b = born_box(gghz(th), settings_gghz_dependent(th));
        auto rep = discord_report(b);
        DecompositionOptions dopt;
        dopt.throw_on_invalid_residual = false;
        auto d = three_decomposition(b, dopt);
        double noise = 0;
        for (double p : d.residual_probs) noise = std::max(noise, std::abs(p - 0.125));
        if (!d.residual_valid) noise = std::max(noise, 1.0);
        return Row{th,   std::pow(std::sin(2 * th), 2),
                   rep.G, gghz_g_law(th),
                   rep.Q, gghz_q_law(th),
                   d.mu, d.nu,
                   to_string(CanonicalVertex{d.svet_tag}), to_string(CanonicalVertex{d.mermin_tag}),
                   noise, d.recombination_error};
    }, opt.threads);
    double eg = 0, eq = 0, en = 0, er = 0;
    for (const auto &x : rows) {
        r.table.rows.push_back({x.th, x.tau, x.G, x.Gl, x.Q, x.Ql, x.mu, x.nu, x.sv, x.mm, x.noise, x.recomb});
        eg = std::max(eg, std::abs(x.G - x.Gl));
        eq = std::max(eq, std::abs(x.Q - x.Ql));
        en = std::max(en, x.noise);
        er = std::max(er, x.recomb);
    }
    r.checks.push_back(detail::le("max |G - piecewise law|", eg, opt.tol));
    r.checks.push_back(detail::le("max |Q - law|", eq, opt.tol));
    r.checks.push_back(detail::le("max residual entry error vs white noise", en, opt.tol));
    r.checks.push_back(detail::le("max recombination error", er, 1e-8));
    return r;
}

inline SuiteResult class99_sweep(const SuiteOptions &opt) {
    using namespace quantum;
    int n = opt.grid > 0 ? opt.grid : 25;
    SuiteResult r{"class99-sweep", "L99 = 1 + 2 sqrt(1 + sin^2 2theta) for GGHZ at class-99 settings", {}, {}, {}};
    r.table.columns = {"theta", "L99", "L99_law"};
    auto rows = parallel_map(std::size_t(n), [&](std::size_t t) {
        double th = detail::grid_point(int(t), n, 0, kPi / 4);
        double s = std::sin(2 * th);
        return std::array<double, 3>{th, class99_value(born_box(gghz(th), settings_class99(th))),
                                     1 + 2 * std::sqrt(1 + s * s)};
    }, opt.threads);
    double e = 0;
    for (const auto &x : rows) {
        r.table.rows.push_back({x[0], x[1], x[2]});
        e = std::max(e, std::abs(x[1] - x[2]));
    }
    Behavior c8 = class8_box();
    Behavior ghz99 = born_box(ghz(), settings_class99(kPi / 4));
    double w8 = 1 / std::sqrt(2.0);
    Behavior local = ghz_class99_local_box();
    double recomb = 0;
    for (std::size_t c = 0; c < kCells; ++c) recomb = std::max(recomb, std::abs(w8 * c8[c] + (1 - w8) * local[c] - ghz99[c]));
    r.checks.push_back(detail::le("|L99(class-8 box) - 5|", std::abs(class99_value(c8) - 5), 0));
    r.checks.push_back(detail::le("|L99(GHZ) - (1 + 2 sqrt2)|", std::abs(class99_value(ghz99) - (1 + 2 * std::sqrt(2.0))), 1e-9));
    r.checks.push_back(detail::le("max |L99 - law| over theta", e, opt.tol));
    r.checks.push_back(detail::le("GHZ = (1/sqrt2) class-8 + (1 - 1/sqrt2) P_L recombination error", recomb, 1e-8));
    r.notes.push_back("P_L is the Born box of rho_AC (x) 1/2 under the class-99 settings");
    return r;
}

namespace detail {

inline Behavior random_mixture(const VertexSet &vs, std::mt19937_64 &rng, bool sparse) {
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> w(vs.size(), 0.0);
    if (sparse) {
        std::uniform_int_distribution<std::size_t> pick(0, vs.size() - 1);
        std::uniform_int_distribution<int> count(1, 4);
        int k = count(rng);
        for (int t = 0; t < k; ++t) w[pick(rng)] += ex(rng);
    } else {
        for (auto &x : w) x = ex(rng);
    }
    double tot = 0;
    for (double x : w) tot += x;
    ProbTable p{};
    for (std::size_t c = 0; c < vs.size(); ++c) {
        if (w[c] == 0) continue;
        for (std::size_t r = 0; r < kCells; ++r) p[r] += w[c] / tot * vs.vertices[c][r];
    }
    return Behavior::from_probabilities(p, kQuantumTol);
}

}  // namespace detail

inline SuiteResult monogamy_scan(const SuiteOptions &opt) {
    using namespace quantum;
    int n = opt.grid > 0 ? opt.grid : 10000;
    SuiteResult r{"monogamy-scan", "G + 2Q <= 8 on R; equality on Svetlichny and Mermin boxes; G + Q = 4 sqrt(p) on the mixed_p GHZ family",
                  {}, {}, {}};
    r.table.columns = {"p", "G", "Q", "G+Q", "4sqrt(p)", "G/2+Q", "G+2Q", "mixture_error"};
    const auto &R = vertex_set(SetName::R);
    constexpr std::size_t kChunk = 250;
    std::size_t chunks = (std::size_t(n) + kChunk - 1) / kChunk;
    auto maxima = parallel_map(chunks, [&](std::size_t ch) {
        std::mt19937_64 rng(opt.seed * 1000003u + ch);
        double m = 0;
        for (std::size_t t = ch * kChunk; t < std::min<std::size_t>(n, (ch + 1) * kChunk); ++t) {
            auto b = detail::random_mixture(R, rng, t % 2 == 0);
            m = std::max(m, monogamy_check(b).lhs);
        }
        return m;
    }, opt.threads);
    double worst = maxima.empty() ? 0 : *std::max_element(maxima.begin(), maxima.end());
    Behavior sv = svetlichny_box(0, 0, 0, 0), mm = mermin_box_mm(0);
    double sv_lhs = monogamy_check(sv).lhs, mm_lhs = monogamy_check(mm).lhs;

    // The family is mu Sv + nu (Sv + Sv')/2 + rest noise with mu = sqrt(1-p),
    // nu = sqrt(p) - sqrt(1-p); the mixture error checks that reading.
    double e27 = 0, e_half = 0, e_mix = 0;
    for (int t = 0; t < 21; ++t) {
        double p = 0.5 + 0.5 * t / 20;
        Behavior b = born_box(ghz(), settings_mixed_p(p));
        auto rep = discord_report(b);
        double mu = std::sqrt(1 - p), nu = std::sqrt(p) - mu;
        Behavior ref = mix({{mu, sv}, {nu, mm}, {1 - mu - nu, white_noise()}});
        double em = max_abs_diff(b, ref);
        r.table.rows.push_back({p, rep.G, rep.Q, rep.G + rep.Q, 4 * std::sqrt(p), rep.G / 2 + rep.Q, rep.G + 2 * rep.Q, em});
        e27 = std::max(e27, std::abs(rep.G + rep.Q - 4 * std::sqrt(p)));
        e_half = std::max(e_half, std::abs(rep.G / 2 + rep.Q - 4 * std::sqrt(p)));
        e_mix = std::max(e_mix, em);
    }
    r.checks.push_back(detail::le("max G+2Q - 8 over random mixtures of R", worst - 8, 1e-9));
    r.checks.push_back(detail::le("|G+2Q - 8| on Svetlichny box", std::abs(sv_lhs - 8), 1e-9));
    r.checks.push_back(detail::le("|G+2Q - 8| on Mermin box", std::abs(mm_lhs - 8), 1e-9));
    r.checks.push_back(detail::le("mixed_p GHZ family equals its Svetlichny + Mermin + noise mixture", e_mix, 1e-9));
    r.checks.push_back(detail::le("max |G+Q - 4 sqrt(p)| on mixed_p GHZ family", e27, opt.tol));
    r.notes.push_back(tribox::detail::strfmt("mixed_p GHZ family: max |G/2+Q - 4 sqrt(p)| = %.3g", e_half));
    r.notes.push_back(tribox::detail::strfmt("max G+2Q over %d random mixtures of R: %.17g", n, worst));
    return r;
}

inline SuiteResult cqqc_null(const SuiteOptions &opt) {
    using namespace quantum;
    int n = opt.grid > 0 ? opt.grid : 200;
    constexpr int kSettings = 20;
    SuiteResult r{"cqqc-null", "G = Q = 0 for CQ/QC states under all measurements", {}, {}, {}};
    r.table.columns = {"sample", "kind", "max_G_random", "max_Q_random", "max_G_xy", "max_Q_xy", "factorization_error"};
    struct Row {
        int s;
        std::string kind;
        double g, q, gxy, qxy, fact;
    };
    auto rows = parallel_map(std::size_t(n), [&](std::size_t t) {
        CqQcKind kind = t % 3 == 0 ? CqQcKind::CQ : t % 3 == 1 ? CqQcKind::QC12_3 : CqQcKind::QC13_2;
        auto sample = sample_cq_qc_terms(kind, opt.seed * 7919u + t);
        std::mt19937_64 rng(opt.seed * 104729u + t);
        Row row{int(t), std::string(to_string(kind)), 0, 0, 0, 0, 0};
        for (int k = 0; k < kSettings; ++k) {
            auto s = random_settings(rng);
            auto rep = discord_report(born_box(sample.state, s));
            row.g = std::max(row.g, rep.G);
            row.q = std::max(row.q, rep.Q);
            auto sxy = random_xy_settings(rng);
            auto rxy = discord_report(born_box(sample.state, sxy));
            row.gxy = std::max(row.gxy, rxy.G);
            row.qxy = std::max(row.qxy, rxy.Q);
            if (kind == CqQcKind::QC12_3) {
                auto b = born_box(sample.state, s);
                for (unsigned i = 0; i < 2; ++i)
                    for (unsigned j = 0; j < 2; ++j)
                        for (unsigned kk = 0; kk < 2; ++kk) {
                            double f = 0;
                            for (const auto &term : sample.terms)
                                f += term.weight * expect2(term.pair, s.a[i], s.b[j]) * expect1(term.single, s.c[kk]);
                            row.fact = std::max(row.fact, std::abs(f - b.triple(i, j, kk)));
                        }
            }
        }
        return row;
    }, opt.threads);
    double g = 0, q = 0, f = 0, gxy = 0, qxy = 0;
    for (const auto &x : rows) {
        r.table.rows.push_back({x.s, x.kind, x.g, x.q, x.gxy, x.qxy, x.fact});
        g = std::max(g, x.g);
        q = std::max(q, x.q);
        gxy = std::max(gxy, x.gxy);
        qxy = std::max(qxy, x.qxy);
        f = std::max(f, x.fact);
    }
    r.checks.push_back(detail::le("max G over random settings", g, opt.tol));
    r.checks.push_back(detail::le("max Q over random settings", q, opt.tol));
    r.checks.push_back(detail::le("QC12|3 triple factorization error", f, 1e-10));
    r.notes.push_back(tribox::detail::strfmt("xy-plane settings only: max G %.3g, max Q %.3g", gxy, qxy));
    return r;
}

inline SuiteResult bisep_w_suite(const SuiteOptions &opt) {
    using namespace quantum;
    int n = opt.grid > 0 ? opt.grid : 50;
    SuiteResult r{"bisep-w", "G = 4 sqrt2 / 3 at sd_xz; G = Q = 0 for xy-plane settings", {}, {}, {}};
    r.table.columns = {"settings", "G", "Q", "G_law"};
    auto rho = bisep_w();
    auto rep = discord_report(born_box(rho, settings_sd_xz()));
    double law = 4 * std::sqrt(2.0) / 3;
    r.table.rows.push_back({"sd_xz", rep.G, rep.Q, law});
    std::mt19937_64 rng(opt.seed);
    double g = 0, q = 0;
    for (int t = 0; t < n; ++t) {
        auto d = discord_report(born_box(rho, random_xy_settings(rng)));
        r.table.rows.push_back({"xy#" + std::to_string(t), d.G, d.Q, 0.0});
        g = std::max(g, d.G);
        q = std::max(q, d.Q);
    }
    r.checks.push_back(detail::le("|G(sd_xz) - 4 sqrt2/3|", std::abs(rep.G - law), opt.tol));
    r.checks.push_back(detail::le("max G over xy-plane settings", g, opt.tol));
    r.checks.push_back(detail::le("max Q over xy-plane settings", q, opt.tol));
    return r;
}

inline SuiteResult ghz_w_mix(const SuiteOptions &opt) {
    using namespace quantum;
    int n = opt.grid > 0 ? opt.grid : 11;
    SuiteResult r{"ghz-w-mix", "G = 4 sqrt2 p at sd_xy; G = 8 sqrt2 q / 3 at sd_xz", {}, {}, {}};
    r.table.columns = {"p", "q", "G_sd_xy", "law_sd_xy", "G_sd_xz", "law_sd_xz", "region_sd_xy", "region_sd_xz"};
    struct Row {
        double p, q, g1, l1, g2, l2;
        std::string r1, r2;
    };
    auto rows = parallel_map(std::size_t(n), [&](std::size_t t) {
        double p = detail::grid_point(int(t), n, 0, 1), q = 1 - p;
        auto rho = ghz_w(p, q);
        auto b1 = born_box(rho, settings_sd_xy());
        auto b2 = born_box(rho, settings_sd_xz());
        return Row{p, q, svetlichny_discord(b1), 4 * std::sqrt(2.0) * p, svetlichny_discord(b2), 8 * std::sqrt(2.0) * q / 3,
                   std::string(to_string(classify_region(b1))), std::string(to_string(classify_region(b2)))};
    }, opt.threads);
    double e1 = 0, e2 = 0;
    for (const auto &x : rows) {
        r.table.rows.push_back({x.p, x.q, x.g1, x.l1, x.g2, x.l2, x.r1, x.r2});
        e1 = std::max(e1, std::abs(x.g1 - x.l1));
        e2 = std::max(e2, std::abs(x.g2 - x.l2));
    }
    auto rho = ghz_w(0.9, 0.1);
    bool eq38 = classify_region(born_box(rho, settings_sd_xy())) == Region::ThreeWayNonlocalInR;
    bool eq39 = classify_region(born_box(rho, settings_sd_xz())) == Region::OutsideR;
    r.checks.push_back(detail::le("bisep_w |G(sd_xz) - 4 sqrt2/3|",
                                  std::abs(svetlichny_discord(born_box(bisep_w(), settings_sd_xz())) - 4 * std::sqrt(2.0) / 3),
                                  opt.tol));
    r.checks.push_back(detail::le("max |G(sd_xy) - 4 sqrt2 p|", e1, opt.tol));
    r.checks.push_back(detail::le("max |G(sd_xz) - 8 sqrt2 q/3|", e2, opt.tol));
    r.checks.push_back(detail::le("p=0.9 at sd_xy is three-way nonlocal inside R (0 = yes)", eq38 ? 0 : 1, 0));
    r.checks.push_back(detail::le("p=0.9 at sd_xz is outside R (0 = yes)", eq39 ? 0 : 1, 0));
    return r;
}

/// Properties of a candidate Mermin box, for the appendix suite.
struct MerminBoxProperties {
    bool valid = false;
    std::string error;
    std::array<double, 8> triples{};
    double max_mermin = 0;
    int saturated = 0;               // Mermin functionals at +4
    double marginal_mixing = 0;      // max |two-party or single correlator|
    bool matches_mm0_up_to_lro = false;
    bool matches_nmm_triples = false;  // same triples as some Mermin box, non-maximally mixed marginals
};

inline MerminBoxProperties mermin_box_properties(const std::function<Behavior()> &make) {
    MerminBoxProperties p;
    std::optional<Behavior> b;
    try {
        b = make();
    } catch (const Error &e) {
        p.error = e.what();
        return p;
    }
    p.valid = true;
    const auto &c = b->correlators();
    p.triples = c.abc;
    for (unsigned f = 0; f < 16; ++f) {
        double v = mermin_value(c, f >> 3, (f >> 2) & 1u, (f >> 1) & 1u, f & 1u);
        p.max_mermin = std::max(p.max_mermin, v);
        if (v > 4 - 1e-9) ++p.saturated;
    }
    for (std::size_t t = 0; t < 18; ++t) p.marginal_mixing = std::max(p.marginal_mixing, std::abs(c.at(t)));
    p.matches_mm0_up_to_lro = find_relabeling(*b, mermin_box_mm(0)).has_value();
    for (unsigned v = 0; v < kMerminVariants; ++v)
        if (tribox::detail::same_triples(c, mermin_box_mm(v).correlators(), 1e-9) && p.marginal_mixing > 1e-9)
            p.matches_nmm_triples = true;
    return p;
}

inline SuiteResult appendix_sixqubit(const SuiteOptions &) {
    using namespace quantum;
    SuiteResult r{"appendix-sixqubit", "six-qubit states under the block strategy give Mermin boxes", {}, {}, {}};
    r.table.columns = {"state", "nonsignaling", "triples", "max_mermin", "saturated_functionals", "max_marginal_correlator",
                       "mm0_up_to_lro", "nmm_like", "error"};
    auto p4 = mermin_box_properties([] { return born_box_blocked(sixqubit_4sep(), appendix_strategy()); });
    auto pp = mermin_box_properties([] { return born_box_blocked(sixqubit_partial(), appendix_strategy()); });
    for (auto [name, p] : {std::pair{"sixqubit_4sep", &p4}, std::pair{"sixqubit_partial", &pp}}) {
        Json tr = Json::array();
        for (double x : p->triples) tr.push_back(x);
        r.table.rows.push_back({name, p->valid, tr, p->max_mermin, p->saturated, p->marginal_mixing, p->matches_mm0_up_to_lro,
                                p->matches_nmm_triples, p->error});
    }
    bool ok4 = p4.valid && p4.saturated == 1 && p4.marginal_mixing <= 1e-9 && p4.matches_mm0_up_to_lro;
    bool okp = pp.valid && pp.saturated == 1 && pp.matches_nmm_triples;
    r.checks.push_back(detail::le("4-separable state gives a maximally-mixed Mermin box (0 = yes)", ok4 ? 0 : 1, 0));
    r.checks.push_back(detail::le("partial state gives a nonmaximally-mixed Mermin box (0 = yes)", okp ? 0 : 1, 0));
    return r;
}

inline SuiteResult run_suite(const std::string &name, const SuiteOptions &opt = {}) {
    if (name == "ghz-class-sweep") return ghz_class_sweep(opt);
    if (name == "w-class-sweep") return w_class_sweep(opt);
    if (name == "werner-sweep") return werner_sweep(opt);
    if (name == "gghz-dependent") return gghz_dependent(opt);
    if (name == "class99-sweep") return class99_sweep(opt);
    if (name == "monogamy-scan") return monogamy_scan(opt);
    if (name == "cqqc-null") return cqqc_null(opt);
    if (name == "bisep-w") return bisep_w_suite(opt);
    if (name == "ghz-w-mix") return ghz_w_mix(opt);
    if (name == "appendix-sixqubit") return appendix_sixqubit(opt);
    throw Error(ErrorKind::BadParameters, "unknown suite '" + name + "'");
}

// ---------------------------------------------------------------------------
// Rendering.

enum class Format { Json, Csv, Markdown };

inline Format parse_format(std::string_view s) {
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    if (s == "md" || s == "markdown") return Format::Markdown;
    throw Error(ErrorKind::ParseError, "unknown format '" + std::string(s) + "' (json, csv or md)");
}

namespace detail {

inline std::string cell_text(const Json &v, const char *numfmt) {
    if (v.is_number_float()) return tribox::detail::strfmt(numfmt, v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return io::format_json(v, -1);
}

inline std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace detail

inline Json suite_to_json(const SuiteResult &r) {
    Json j;
    j["suite"] = r.suite;
    j["law"] = r.law;
    j["pass"] = r.pass();
    j["checks"] = Json::array();
    for (const auto &c : r.checks) {
        j["checks"].push_back(Json{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    j["notes"] = r.notes;
    j["columns"] = r.table.columns;
    j["rows"] = Json::array();
    for (const auto &row : r.table.rows) j["rows"].push_back(Json(row));
    return j;
}

inline std::string render(const SuiteResult &r, Format f) {
    std::string out;
    switch (f) {
        case Format::Json: return io::format_json(suite_to_json(r)) + "\n";
        case Format::Csv: {
            for (std::size_t c = 0; c < r.table.columns.size(); ++c) out += (c ? "," : "") + detail::csv_escape(r.table.columns[c]);
            out += "\n";
            for (const auto &row : r.table.rows) {
                for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + detail::csv_escape(detail::cell_text(row[c], "%.17g"));
                out += "\n";
            }
            for (const auto &c : r.checks)
                out += tribox::detail::strfmt("# %s: %s = %.6g (tol %.3g)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.tolerance);
            for (const auto &n : r.notes) out += "# note: " + n + "\n";
            out += std::string("# suite ") + r.suite + ": " + (r.pass() ? "PASS" : "FAIL") + "\n";
            return out;
        }
        case Format::Markdown: {
            out += "## " + r.suite + "\n\n" + r.law + "\n\n|";
            for (const auto &c : r.table.columns) out += " " + c + " |";
            out += "\n|";
            for (std::size_t c = 0; c < r.table.columns.size(); ++c) out += " --- |";
            out += "\n";
            for (const auto &row : r.table.rows) {
                out += "|";
                for (const auto &v : row) out += " " + detail::cell_text(v, "%.10g") + " |";
                out += "\n";
            }
            out += "\n";
            for (const auto &c : r.checks)
                out += tribox::detail::strfmt("- %s %s: %.6g (tol %.3g)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.tolerance);
            for (const auto &n : r.notes) out += "- note: " + n + "\n";
            out += std::string("\n**") + (r.pass() ? "PASS" : "FAIL") + "**\n";
            return out;
        }
    }
    return out;
}

}  // namespace tribox::repro

#endif
