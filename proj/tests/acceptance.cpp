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


// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "tribox/repro.hpp"

using namespace tribox;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

Verdict from_suite(const std::string &name, int grid = 0) {
    repro::SuiteOptions opt;
    opt.grid = grid;
    auto r = repro::run_suite(name, opt);
    std::string detail;
    for (const auto &c : r.checks) {
        if (!detail.empty()) detail += "; ";
        detail += detail::strfmt("%s%s %.3g", c.pass ? "" : "FAILED ", c.name.c_str(), c.value);
    }
    return {r.pass(), detail};
}

Verdict extremal_values() {
    double worst = 0;
    for (const auto &t : svetlichny_tags()) {
        auto r = discord_report(to_behavior(t));
        worst = std::max({worst, std::abs(r.G - 8), std::abs(r.Q)});
    }
    for (unsigned v = 0; v < kMerminVariants; ++v) {
        auto r = discord_report(mermin_box_mm(v));
        worst = std::max({worst, std::abs(r.G), std::abs(r.Q - 4)});
    }
    double vert = 0;
    for (const auto &t : deterministic_tags()) {
        auto r = discord_report(to_behavior(t));
        vert = std::max({vert, r.G, r.Q});
    }
    for (const auto &t : pr_tags()) {
        auto r = discord_report(to_behavior(t));
        vert = std::max({vert, r.G, r.Q});
    }
    return {worst <= 1e-9 && vert == 0,
            detail::strfmt("max error on Svetlichny/Mermin boxes %.3g, max G,Q on 64 deterministic + 96 PR vertices %.3g",
                           worst, vert)};
}

Verdict isotropic_laws() {
    auto sv = svetlichny_box(0, 0, 0, 0);
    auto mm = mermin_box_mm(0);
    double e = 0;
    for (int t = 0; t <= 20; ++t) {
        double p = t / 20.0;
        e = std::max(e, std::abs(svetlichny_discord(isotropic(sv, p)) - 8 * p));
        e = std::max(e, std::abs(mermin_discord(isotropic(mm, p)) - 4 * p));
    }
    return {e <= 1e-9, detail::strfmt("max |G - 8p|, |Q - 4p| over 21 points %.3g", e)};
}

Verdict membership_equivalence() {
    testing::Rng rng(2026);
    double worst = 0;
    int missed = 0;
    for (SetName s : {SetName::L, SetName::L2, SetName::R}) {
        const auto &vs = vertex_set(s);
        for (int t = 0; t < 1000; ++t) {
            auto m = testing::random_mixture(vs, rng, t % 2 == 0);
            auto r = membership(m.box, vs);
            if (!r.inside) {
                ++missed;
                continue;
            }
            worst = std::max(worst, r.recombination_error);
        }
    }
    int sv_inside = 0;
    for (const auto &t : svetlichny_tags()) sv_inside += membership(to_behavior(t), SetName::L2).inside ? 1 : 0;
    auto rho = quantum::ghz_w(0.9, 0.1);
    auto r38 = classify_region(quantum::born_box(rho, quantum::settings_sd_xy()));
    auto r39 = classify_region(quantum::born_box(rho, quantum::settings_sd_xz()));
    bool ok = missed == 0 && worst < 1e-8 && sv_inside == 0 && r38 == Region::ThreeWayNonlocalInR && r39 == Region::OutsideR;
    return {ok, detail::strfmt("3x1000 mixtures: %d not certified, max recombination %.3g; Svetlichny boxes inside L2: %d; "
                               "GHZ+W p=0.9: sd_xy %s, sd_xz %s",
                               missed, worst, sv_inside, to_string(r38).data(), to_string(r39).data())};
}

Verdict invariance() {
    testing::Rng rng(13);
    double e = 0;
    for (int t = 0; t < 100; ++t) {
        auto b = testing::random_box(rng);
        auto r = discord_report(b);
        auto check = [&](const Behavior &x) {
            auto r2 = discord_report(x);
            e = std::max({e, std::abs(r.G - r2.G), std::abs(r.Q - r2.Q)});
        };
        for (int k = 0; k < 100; ++k) check(apply_lro(b, testing::random_lro(rng)));
        for (const auto &p : PartyPermutation::all()) check(permute_parties(b, p));
    }
    return {e <= 1e-9, detail::strfmt("max |dG|, |dQ| over 100 boxes x (100 LROs + 6 permutations) %.3g", e)};
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Verdict()> run;
    };
    std::vector<Criterion> all = {
        {"extremal values", extremal_values},
        {"isotropic laws", isotropic_laws},
        {"GHZ class", [] { return from_suite("ghz-class-sweep", 15); }},
        {"GGHZ dependent settings", [] { return from_suite("gghz-dependent"); }},
        {"W class", [] { return from_suite("w-class-sweep"); }},
        {"Werner", [] { return from_suite("werner-sweep"); }},
        {"class 99", [] { return from_suite("class99-sweep"); }},
        {"monogamy", [] { return from_suite("monogamy-scan", 10000); }},
        {"membership oracle", membership_equivalence},
        {"CQ/QC null", [] { return from_suite("cqqc-null", 200); }},
        {"biseparable and GHZ+W mixtures",
         [] {
             auto a = from_suite("bisep-w", 50);
             auto b = from_suite("ghz-w-mix");
             return Verdict{a.pass && b.pass, a.detail + "; " + b.detail};
         }},
        {"six-qubit appendix states", [] { return from_suite("appendix-sixqubit"); }},
        {"relabeling invariance", invariance},
    };
    int failed = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (std::size_t t = 0; t < all.size(); ++t) {
        Verdict v;
        try {
            v = all[t].run();
        } catch (const std::exception &e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        failed += v.pass ? 0 : 1;
        std::printf("criterion %2zu %s  %s: %s\n", t + 1, v.pass ? "PASS" : "FAIL", all[t].name, v.detail.c_str());
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%zu/%zu criteria pass (%.1fs)\n", all.size() - failed, all.size(), dt);
    return failed == 0 ? 0 : 1;
}
