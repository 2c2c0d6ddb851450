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

#include <cstdio>
#include <filesystem>

#include "generators.hpp"
#include "tribox/io.hpp"

namespace tribox::io {
namespace {

TEST(Json, RoundTripIsBitExact) {
    tribox::testing::Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        auto b = tribox::testing::random_box(rng);
        auto back = box_from_json(parse_json(format_json(box_to_json(b))));
        EXPECT_EQ(back, b);
    }
}

TEST(Json, SeventeenDigits) {
    Json j;
    j["x"] = 0.1;
    j["v"] = Json::array({1.0 / 3, 2});
    auto s = format_json(j);
    EXPECT_NE(s.find("0.10000000000000001"), std::string::npos);
    EXPECT_NE(s.find("[0.33333333333333331, 2]"), std::string::npos);
}

TEST(Json, CorrelatorOnlyInput) {
    auto j = parse_json(R"({"format":"tribox-v1","correlators":{"A0B0C0":1,"A0B1C1":-1,"A1B0C1":-1,"A1B1C0":-1}})");
    EXPECT_LE(max_abs_diff(box_from_json(j), mermin_box_mm(0)), 1e-15);
}

TEST(Json, KeysFollowTheSchema) {
    auto j = box_to_json(white_noise());
    EXPECT_EQ(j["format"], "tribox-v1");
    EXPECT_EQ(j["probs"].size(), 64u);
    EXPECT_TRUE(j["correlators"].contains("A1B1C1"));
    EXPECT_EQ(j["correlators"].size(), CorrelatorVector::kSize);
}

TEST(Json, Errors) {
    EXPECT_THROW(parse_json("{"), Error);
    EXPECT_THROW(box_from_json(parse_json("[]")), Error);
    EXPECT_THROW(box_from_json(parse_json(R"({"format":"other","probs":[]})")), Error);
    EXPECT_THROW(box_from_json(parse_json(R"({"probs":[1,2]})")), Error);
    EXPECT_THROW(box_from_json(parse_json(R"({"correlators":{"A2":1}})")), Error);
    EXPECT_THROW(box_from_json(parse_json(R"({"correlators":{"A0":"x"}})")), Error);
    EXPECT_THROW(box_from_json(parse_json(R"({})")), Error);
    // Valid shape, invalid box: A0 = 2 forces a negative probability.
    try {
        box_from_json(parse_json(R"({"correlators":{"A0":2}})"));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NegativeProbability);
    }
}

TEST(Files, WriteThenRead) {
    auto path = std::filesystem::temp_directory_path() / "tribox_io_test.json";
    auto b = mermin_box_nmm(17);
    write_box_file(path.string(), b);
    EXPECT_EQ(read_box_file(path.string()), b);
    std::filesystem::remove(path);
    EXPECT_THROW(read_box_file(path.string()), Error);
}

TEST(Reports, MembershipAndDecomposition) {
    auto m = membership_to_json(membership(mermin_box_mm(0), SetName::L2));
    EXPECT_EQ(m["inside"], true);
    EXPECT_EQ(m["set"], "L2");
    EXPECT_FALSE(m["certificate"].empty());
    auto out = membership_to_json(membership(svetlichny_box(0, 0, 0, 0), SetName::L2));
    EXPECT_EQ(out["inside"], false);
    EXPECT_EQ(out["violation"]["functional"], "S_0000");
    auto d = decomposition_to_json(three_decomposition(isotropic(mermin_box_mm(2), 0.5)));
    EXPECT_EQ(d["nu"], 0.5);
    EXPECT_EQ(d["mermin_box"], "mm:2");
    EXPECT_EQ(d["residual_is_white_noise"], true);
}

}  // namespace
}  // namespace tribox::io
