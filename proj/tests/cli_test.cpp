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

#include <filesystem>
#include <sstream>

#include "tribox/cli.hpp"

namespace tribox::cli {
namespace {

struct Run {
    int code;
    std::string out, err;
};

Run call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const char *name) { return (std::filesystem::temp_directory_path() / name).string(); }

TEST(Cli, MeasureSvetlichnyBox) {
    auto r = call({"measure", "--canonical", "sv:0000"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = io::parse_json(r.out);
    EXPECT_EQ(j["G"], 8.0);
    EXPECT_EQ(j["Q"], 0.0);
    EXPECT_EQ(j["functionals"]["S_0000"], 8.0);
}

TEST(Cli, MeasureMixture) {
    auto r = call({"measure", "--mix", "0.5:mm:0,0.5:noise"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(io::parse_json(r.out)["Q"], 2.0);
    auto pr = call({"measure", "--mix", "1:pr:12:0001"});
    EXPECT_EQ(pr.code, 0) << pr.err;
}

TEST(Cli, BoxEmitThenMember) {
    auto path = temp_file("tribox_cli_noise.json");
    ASSERT_EQ(call({"box", "--canonical", "noise", "--emit", path}).code, 0);
    auto r = call({"member", "--set", "L", "--in", path});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(io::parse_json(r.out)["inside"], true);
    std::filesystem::remove(path);
}

TEST(Cli, MemberOutsideExitsThree) {
    auto r = call({"member", "--set", "L2", "--canonical", "sv:0110"});
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(io::parse_json(r.out)["violation"]["functional"], "S_0110");
    EXPECT_EQ(call({"member", "--set", "L2", "--exact", "--canonical", "sv:0110"}).code, 3);
    EXPECT_EQ(call({"member", "--set", "R", "--exact", "--canonical", "sv:0110"}).code, 0);
}

TEST(Cli, Decompose) {
    auto r = call({"decompose", "--mix", "0.5:sv:0000,0.5:noise"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(io::parse_json(r.out)["mu"], 0.5);
    auto q = call({"quantum", "--state", "ghz_w", "--p", "0.9", "--settings", "sd_xz", "--emit", temp_file("tribox_cli_gw.json")});
    ASSERT_EQ(q.code, 0) << q.err;
    EXPECT_EQ(call({"decompose", "--in", temp_file("tribox_cli_gw.json")}).code, 3);
    std::filesystem::remove(temp_file("tribox_cli_gw.json"));
}

TEST(Cli, QuantumBox) {
    auto r = call({"quantum", "--state", "gghz", "--theta", "0.5", "--settings", "sd_xy"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto b = io::box_from_json(io::parse_json(r.out));
    EXPECT_LE(max_abs_diff(b, quantum::born_box(quantum::gghz(0.5), quantum::settings_sd_xy())), 0);
    auto m = call({"quantum", "--state", "werner", "--p", "0.5", "--settings", "md_xy", "--measure"});
    ASSERT_EQ(m.code, 0) << m.err;
    EXPECT_NEAR(io::parse_json(m.out)["Q"].get<double>(), 2, 1e-12);
    auto dep = call({"quantum", "--state", "ghz", "--settings", "mixed_p", "--settings-param", "1", "--measure"});
    ASSERT_EQ(dep.code, 0) << dep.err;
}

TEST(Cli, Scenario) {
    auto path = temp_file("tribox_cli_scenario.json");
    io::write_text(path, R"({"state":{"family":"ghz"},"settings":{"name":"md_xy"}})");
    auto r = call({"quantum", "--scenario", path, "--measure"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(io::parse_json(r.out)["Q"].get<double>(), 4, 1e-12);
    std::filesystem::remove(path);
}

TEST(Cli, ReproduceWerner) {
    auto r = call({"reproduce", "werner-sweep", "--grid", "21", "--format", "csv"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("# suite werner-sweep: PASS"), std::string::npos);
}

TEST(Cli, ReproduceIsDeterministic) {
    auto a = call({"reproduce", "cqqc-null", "--grid", "6", "--seed", "4", "--format", "json"});
    auto b = call({"reproduce", "cqqc-null", "--grid", "6", "--seed", "4", "--format", "json", "--threads", "1"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(call({}).code, 2);
    EXPECT_EQ(call({"frobnicate"}).code, 2);
    EXPECT_EQ(call({"measure"}).code, 2);
    EXPECT_EQ(call({"measure", "--canonical", "sv:2"}).code, 2);
    EXPECT_EQ(call({"measure", "--canonical", "noise", "--in", "x.json"}).code, 2);
    EXPECT_EQ(call({"measure", "--mix", "0.5:noise"}).code, 2);
    EXPECT_EQ(call({"member", "--set", "NS", "--canonical", "noise"}).code, 2);
    EXPECT_EQ(call({"reproduce", "nope"}).code, 2);
    EXPECT_EQ(call({"reproduce", "werner-sweep", "--format", "xml"}).code, 2);
    EXPECT_EQ(call({"quantum", "--state", "w_class", "--alpha", "1", "--beta", "1", "--gamma", "0", "--settings", "sd_xz"}).code, 2);
    auto r = call({"measure", "--in", "/nonexistent/box.json"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("ParseError"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
    auto r = call({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("reproduce"), std::string::npos);
}

TEST(Cli, MixParsing) {
    EXPECT_EQ(parse_mix("1:sv:0000"), svetlichny_box(0, 0, 0, 0));
    EXPECT_THROW(parse_mix("sv:0000"), Error);
    EXPECT_THROW(parse_mix("x:noise"), Error);
    EXPECT_THROW(parse_mix("0.5:noise,"), Error);
}

}  // namespace
}  // namespace tribox::cli
