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


#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "tribox/polytope.hpp"
#include "tribox/quantum.hpp"

namespace tribox {
namespace {

double farkas_on(const std::vector<double> &y, const Behavior &b) {
    double s = y[kCells];
    for (std::size_t r = 0; r < kCells; ++r) s += y[r] * b[r];
    return s;
}

TEST(VertexSets, Sizes) {
    EXPECT_EQ(vertex_set(SetName::L).size(), 64u);
    EXPECT_EQ(vertex_set(SetName::L2).size(), 160u);
    EXPECT_EQ(vertex_set(SetName::R).size(), 176u);
}

TEST(VertexSets, Names) {
    EXPECT_EQ(parse_set_name("L2"), SetName::L2);
    EXPECT_THROW(parse_set_name("NS"), Error);
}

TEST(Membership, WhiteNoiseIsLocal) {
    auto r = membership(white_noise(), SetName::L);
    EXPECT_TRUE(r.inside);
    EXPECT_LE(r.recombination_error, 1e-12);
}

TEST(Membership, MerminBoxIsTwoWayLocal) {
    auto mm = mermin_box_mm(0);
    EXPECT_FALSE(membership(mm, SetName::L).inside);
    auto r = membership(mm, SetName::L2);
    ASSERT_TRUE(r.inside);
    double tot = 0;
    for (const auto &[tag, w] : certificate_support(r)) {
        EXPECT_TRUE(std::holds_alternative<PrTag>(tag) || std::holds_alternative<DeterministicTag>(tag));
        tot += w;
    }
    EXPECT_NEAR(tot, 1, 1e-12);
}

TEST(Membership, SvetlichnyBoxesAreOutsideL2) {
    for (const auto &t : svetlichny_tags()) {
        auto sv = to_behavior(t);
        auto r = membership(sv, SetName::L2);
        ASSERT_FALSE(r.inside);
        ASSERT_TRUE(r.violation.has_value());
        EXPECT_EQ(r.violation->name.substr(0, 2), "S_");
        EXPECT_EQ(r.violation->value, 8);
        EXPECT_EQ(r.violation->bound, 4);
        EXPECT_GT(farkas_on(r.farkas, sv), 1e-9);
        for (const auto &v : vertex_set(SetName::L2).vertices) EXPECT_LE(farkas_on(r.farkas, v), 1e-9);
        EXPECT_TRUE(membership(sv, SetName::R).inside);
    }
}

TEST(Membership, RandomMixturesAreCertifiedInside) {
    testing::Rng rng(13);
    for (SetName s : {SetName::L, SetName::L2, SetName::R}) {
        const auto &vs = vertex_set(s);
        for (int t = 0; t < 100; ++t) {
            auto m = testing::random_mixture(vs, rng, t % 2 == 0);
            auto r = membership(m.box, vs);
            ASSERT_TRUE(r.inside) << to_string(s) << " " << t;
            EXPECT_LT(r.recombination_error, 1e-8);
        }
    }
}

TEST(Membership, ExactAgreesOnDyadicBoxes) {
    for (const auto &b : {white_noise(), mermin_box_mm(3), svetlichny_box(0, 1, 1, 0), class8_box(),
                          mix({{0.25, svetlichny_box(0, 0, 0, 0)}, {0.75, white_noise()}})}) {
        for (SetName s : {SetName::L, SetName::L2, SetName::R}) {
            auto fast = membership(b, s);
            auto exact = membership_exact(b, vertex_set(s));
            EXPECT_EQ(fast.inside, exact.inside) << to_string(s);
            if (exact.inside) {
                EXPECT_LE(exact.recombination_error, 1e-12);
            }
        }
    }
}

TEST(Membership, IsotropicSvetlichnyThresholds) {
    auto sv = svetlichny_box(0, 0, 0, 0);
    EXPECT_TRUE(membership(isotropic(sv, 0.5), SetName::L2).inside);
    EXPECT_FALSE(membership(isotropic(sv, 0.51), SetName::L2).inside);
    EXPECT_TRUE(membership(isotropic(sv, 0.51), SetName::R).inside);
}

TEST(Membership, Class8IsOutsideLocal) {
    auto r = membership(class8_box(), SetName::L);
    ASSERT_FALSE(r.inside);
    ASSERT_TRUE(r.violation.has_value());
}

TEST(Regions, Classification) {
    EXPECT_EQ(classify_region(white_noise()), Region::BellLocal);
    EXPECT_EQ(classify_region(mermin_box_mm(0)), Region::TwoWayNonlocal);
    EXPECT_EQ(classify_region(svetlichny_box(1, 0, 0, 0)), Region::ThreeWayNonlocalInR);
    using namespace quantum;
    auto rho = ghz_w(0.9, 0.1);
    EXPECT_EQ(classify_region(born_box(rho, settings_sd_xy())), Region::ThreeWayNonlocalInR);
    EXPECT_EQ(classify_region(born_box(rho, settings_sd_xz())), Region::OutsideR);
}

TEST(Decomposition, VerifiesMixtures) {
    auto sv = svetlichny_box(0, 0, 0, 0);
    auto b = mix({{0.3, sv}, {0.7, white_noise()}});
    EXPECT_TRUE(verify_decomposition(b, {{0.3, sv}, {0.7, white_noise()}}));
    EXPECT_FALSE(verify_decomposition(b, {{0.4, sv}, {0.6, white_noise()}}));
    EXPECT_THROW(verify_decomposition(b, {{0.4, sv}, {0.7, white_noise()}}), Error);
}

TEST(Decomposition, RecoversWeights) {
    auto b = mix({{0.25, svetlichny_box(0, 0, 0, 0)}, {0.5, mermin_box_mm(0)}, {0.25, white_noise()}});
    auto d = three_decomposition(b);
    EXPECT_NEAR(d.mu, 0.25, 1e-12);
    EXPECT_NEAR(d.nu, 0.5, 1e-12);
    EXPECT_EQ(d.svet_tag.bits, 0u);
    EXPECT_EQ(d.mermin_tag.variant, 0u);
    ASSERT_TRUE(d.residual.has_value());
    EXPECT_LE(max_abs_diff(*d.residual, white_noise()), 1e-12);
    EXPECT_LE(d.recombination_error, 1e-12);
}

TEST(Decomposition, PureSvetlichnyLeavesNothing) {
    auto d = three_decomposition(svetlichny_box(1, 1, 1, 1));
    EXPECT_EQ(d.mu, 1);
    EXPECT_EQ(d.nu, 0);
    EXPECT_FALSE(d.residual_defined);
    EXPECT_EQ(d.svet_tag.bits, 0b1111u);
}

TEST(Decomposition, OutsideRThrows) {
    using namespace quantum;
    auto b = born_box(ghz_w(0.9, 0.1), settings_sd_xz());
    try {
        three_decomposition(b);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInR);
    }
}

TEST(Decomposition, InvalidResidualCanBeReported) {
    // The W state at the xz Mermin settings is inside R, but subtracting
    // ν times the Mermin box leaves a table with negative entries.
    using namespace quantum;
    auto b = born_box(w(), settings_md_xz());
    ASSERT_TRUE(membership(b, SetName::R).inside);
    EXPECT_THROW(three_decomposition(b), Error);
    DecompositionOptions opt;
    opt.throw_on_invalid_residual = false;
    auto d = three_decomposition(b, opt);
    EXPECT_FALSE(d.residual_valid);
    EXPECT_FALSE(d.residual_error.empty());
    EXPECT_LE(d.recombination_error, 1e-12);
}

}  // namespace
}  // namespace tribox
