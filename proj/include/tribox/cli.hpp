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

#ifndef TRIBOX_CLI_HPP
#define TRIBOX_CLI_HPP

// Command-line front end. Exit codes: 0 ok or inside, 2 usage or invalid
// input, 3 negative verdict (outside, not in R, invalid residual, failed
// suite), 4 numerical failure.

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tribox/io.hpp"
#include "tribox/polytope.hpp"
#include "tribox/repro.hpp"
#include "tribox/scenario.hpp"

namespace tribox::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNegative = 3, kNumerical = 4 };

inline int exit_code_for(ErrorKind k) noexcept {
    switch (k) {
        case ErrorKind::NotInR:
        case ErrorKind::ResidualInvalid: return kNegative;
        case ErrorKind::LPNumericalFailure:
        case ErrorKind::ConstructionFailure: return kNumerical;
        default: return kUsage;
    }
}

/// Parses "w:tag,w:tag,..." into a mixture. Tags may themselves contain
/// colons ("0.5:pr:12:0000"), so only the first colon splits.
inline Behavior parse_mix(const std::string &spec) {
    std::vector<WeightedBox> terms;
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t end = spec.find(',', start);
        if (end == std::string::npos) end = spec.size();
        std::string item = spec.substr(start, end - start);
        auto colon = item.find(':');
        if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "mixture term '" + item + "' is not weight:tag");
        double w = 0;
        try {
            std::size_t used = 0;
            w = std::stod(item.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument("trailing");
        } catch (const std::exception &) {
            throw Error(ErrorKind::ParseError, "bad weight in mixture term '" + item + "'");
        }
        terms.push_back({w, to_behavior(parse_canonical(item.substr(colon + 1)))});
        start = end + 1;
    }
    return mix(terms);
}

struct BoxSource {
    std::string canonical, in, mix;

    void attach(CLI::App &app) {
        auto *c = app.add_option("--canonical", canonical, "canonical box tag (det:, pr:, sv:, class8, mm:, nmm:, noise)");
        auto *i = app.add_option("--in", in, "tribox-v1 box file");
        auto *m = app.add_option("--mix", mix, "mixture of tags, e.g. 0.5:sv:0000,0.5:noise");
        c->excludes(i)->excludes(m);
        i->excludes(m);
    }

    bool given() const { return !canonical.empty() || !in.empty() || !mix.empty(); }

    Behavior load() const {
        if (!canonical.empty()) return to_behavior(parse_canonical(canonical));
        if (!in.empty()) return io::read_box_file(in);
        if (!mix.empty()) return parse_mix(mix);
        throw Error(ErrorKind::ParseError, "one of --canonical, --in or --mix is required");
    }
};

struct QuantumArgs {
    std::string state, settings, scenario;
    std::optional<double> theta, theta3, alpha, beta, gamma, p, q, settings_param;

    void attach(CLI::App &app) {
        app.add_option("--state", state, "state family");
        app.add_option("--settings", settings, "named settings");
        app.add_option("--scenario", scenario, "JSON scenario file {\"state\":{...},\"settings\":{...}}");
        app.add_option("--theta", theta);
        app.add_option("--theta3", theta3);
        app.add_option("--alpha", alpha);
        app.add_option("--beta", beta);
        app.add_option("--gamma", gamma);
        app.add_option("--p", p);
        app.add_option("--q", q);
        app.add_option("--settings-param", settings_param, "theta or p of parametric settings (defaults to the state's)");
    }

    Behavior load() const {
        using namespace quantum;
        if (!scenario.empty()) return scenario_from_json(io::parse_json(io::read_text(scenario)));
        if (state.empty()) throw Error(ErrorKind::ParseError, "--state or --scenario is required");
        Params sp;
        auto put = [&](const char *k, const std::optional<double> &v) {
            if (v) sp[k] = *v;
        };
        put("theta", theta);
        put("theta3", theta3);
        put("alpha", alpha);
        put("beta", beta);
        put("gamma", gamma);
        put("p", p);
        put("q", q);
        auto rho = make_state(state, sp);
        std::string sname = settings.empty() ? (rho.qubits() == 6 ? "appendix" : "") : settings;
        if (sname.empty()) throw Error(ErrorKind::ParseError, "--settings is required");
        Params setp = sp;
        if (settings_param) setp["theta"] = setp["p"] = *settings_param;
        return scenario_box(rho, make_settings(sname, setp));
    }
};

inline io::Json measure_json(const Behavior &b) {
    io::Json j;
    auto rep = discord_report(b);
    j["G"] = rep.G;
    j["Q"] = rep.Q;
    j["discord"] = io::discord_to_json(rep);
    auto sm = svetlichny_moduli(b), mm = mermin_moduli(b);
    j["svetlichny_moduli"] = sm;
    j["mermin_moduli"] = mm;
    j["L99"] = class99_value(b);
    auto mono = monogamy_check(b);
    j["monogamy"] = io::Json{{"G+2Q", mono.lhs}, {"holds", mono.holds}};
    j["functionals"] = io::functionals_to_json(b);
    return j;
}

inline void emit(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty()) {
        out << text;
    } else {
        io::write_text(path, text);
    }
}

/// Runs the CLI on `args` (without the program name).
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"tribox: tripartite nonsignaling boxes, Svetlichny and Mermin discord"};
    app.name("tribox");
    app.require_subcommand(1);

    std::string out_path, emit_path, format = "json";

    BoxSource box_src;
    auto *box = app.add_subcommand("box", "build a box and print or save it");
    box_src.attach(*box);
    box->add_option("--emit", emit_path, "write the box file here instead of stdout");

    BoxSource measure_src;
    auto *measure = app.add_subcommand("measure", "discord, moduli and functionals of a box");
    measure_src.attach(*measure);
    measure->add_option("--out", out_path);

    BoxSource member_src;
    std::string set_name = "L";
    bool exact = false;
    auto *member = app.add_subcommand("member", "membership in L, L2 or R with a certificate");
    member_src.attach(*member);
    member->add_option("--set", set_name, "L, L2 or R")->check(CLI::IsMember({"L", "L2", "R"}));
    member->add_flag("--exact", exact, "exact rational arithmetic");
    member->add_option("--out", out_path);

    BoxSource decompose_src;
    bool report_invalid = false;
    auto *decompose = app.add_subcommand("decompose", "Svetlichny + Mermin + residual decomposition");
    decompose_src.attach(*decompose);
    decompose->add_flag("--report-invalid", report_invalid, "print an invalid residual instead of failing");
    decompose->add_option("--out", out_path);

    QuantumArgs qargs;
    bool with_measures = false;
    auto *quantum = app.add_subcommand("quantum", "Born-rule box of a state under settings");
    qargs.attach(*quantum);
    quantum->add_option("--emit", emit_path, "write the box file here instead of stdout");
    quantum->add_flag("--measure", with_measures, "print measures instead of the box");

    std::string suite;
    repro::SuiteOptions sopt;
    auto *reproduce = app.add_subcommand("reproduce", "run a named reproduction suite (or 'all')");
    reproduce->add_option("suite", suite, "suite name or 'all'")->required();
    reproduce->add_option("--grid", sopt.grid, "grid size or sample count (0 = suite default)");
    reproduce->add_option("--seed", sopt.seed);
    reproduce->add_option("--tol", sopt.tol, "law tolerance")->capture_default_str();
    reproduce->add_option("--threads", sopt.threads, "worker threads (0 = hardware)");
    reproduce->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "md"}));
    reproduce->add_option("--out", out_path);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*box) {
            Behavior b = box_src.load();
            std::string text = io::format_json(io::box_to_json(b)) + "\n";
            emit(text, emit_path, out);
            return kOk;
        }
        if (*measure) {
            emit(io::format_json(measure_json(measure_src.load())) + "\n", out_path, out);
            return kOk;
        }
        if (*member) {
            Behavior b = member_src.load();
            SetName s = parse_set_name(set_name);
            auto r = exact ? membership_exact(b, vertex_set(s)) : membership(b, s);
            emit(io::format_json(io::membership_to_json(r)) + "\n", out_path, out);
            return r.inside ? kOk : kNegative;
        }
        if (*decompose) {
            DecompositionOptions dopt;
            dopt.throw_on_invalid_residual = !report_invalid;
            auto d = three_decomposition(decompose_src.load(), dopt);
            emit(io::format_json(io::decomposition_to_json(d)) + "\n", out_path, out);
            return d.residual_valid ? kOk : kNegative;
        }
        if (*quantum) {
            Behavior b = qargs.load();
            if (with_measures) {
                emit(io::format_json(measure_json(b)) + "\n", emit_path, out);
            } else {
                emit(io::format_json(io::box_to_json(b)) + "\n", emit_path, out);
            }
            return kOk;
        }
        if (*reproduce) {
            auto fmt = repro::parse_format(format);
            std::vector<std::string> names;
            if (suite == "all") {
                names = repro::suite_names();
            } else {
                names.push_back(suite);
            }
            std::string text;
            bool pass = true;
            for (const auto &n : names) {
                auto r = repro::run_suite(n, sopt);
                pass = pass && r.pass();
                text += repro::render(r, fmt);
            }
            emit(text, out_path, out);
            return pass ? kOk : kNegative;
        }
    } catch (const Error &e) {
        err << "tribox: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        err << "tribox: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
    return run(args, out, err);
}

}  // namespace tribox::cli

#endif
