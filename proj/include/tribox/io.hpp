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

#ifndef TRIBOX_IO_HPP
#define TRIBOX_IO_HPP

// JSON serialization. Box files follow the "tribox-v1" schema:
//
//   {"format": "tribox-v1",
//    "probs": [64 numbers, index i*32+j*16+k*8+m*4+n*2+o],
//    "correlators": {"A0": .., "A0B1": .., "A1B1C0": .., ...}}   (optional)
//
// Numbers are written with 17 significant digits so a write/read cycle is
// bit-exact.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tribox/box.hpp"
#include "tribox/canonical.hpp"
#include "tribox/measures.hpp"
#include "tribox/polytope.hpp"

namespace tribox::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kFormat = "tribox-v1";

namespace detail {

inline void write_number(std::string &out, double v) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

inline void write_string(std::string &out, const std::string &s) { out += Json(s).dump(); }

inline void dump(std::string &out, const Json &j, int indent, int depth) {
    auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(std::size_t(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                write_string(out, it.key());
                out += indent < 0 ? ":" : ": ";
                dump(out, it.value(), indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = std::all_of(j.begin(), j.end(), [](const Json &e) { return e.is_primitive(); });
            out += '[';
            bool first = true;
            for (const auto &e : j) {
                if (!first) out += flat && indent >= 0 ? ", " : ",";
                first = false;
                if (!flat) newline(depth + 1);
                dump(out, e, indent, depth + 1);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: write_number(out, j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

}  // namespace detail

/// Serialize with 17 significant digits for every floating-point number.
inline std::string format_json(const Json &j, int indent = 2) {
    std::string out;
    detail::dump(out, j, indent, 0);
    return out;
}

inline Json correlators_to_json(const CorrelatorVector &v) {
    Json c = Json::object();
    auto keys = CorrelatorVector::keys();
    for (std::size_t t = 0; t < CorrelatorVector::kSize; ++t) c[std::string(keys[t])] = v.at(t);
    return c;
}

inline Json box_to_json(const Behavior &b, bool with_correlators = true) {
    Json j;
    j["format"] = kFormat;
    j["probs"] = Json::array();
    for (double p : b.probs()) j["probs"].push_back(p);
    if (with_correlators) j["correlators"] = correlators_to_json(b.correlators());
    return j;
}

/// Reads probabilities if present, otherwise rebuilds from correlators
/// (missing correlator keys count as zero).
inline Behavior box_from_json(const Json &j, double tol = kQuantumTol) {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "box JSON must be an object");
    if (j.contains("format") && j["format"] != kFormat) {
        throw Error(ErrorKind::ParseError, "unsupported box format " + j["format"].dump());
    }
    if (j.contains("probs")) {
        const auto &p = j["probs"];
        if (!p.is_array() || p.size() != kCells) throw Error(ErrorKind::ParseError, "\"probs\" must hold 64 numbers");
        ProbTable t{};
        for (std::size_t r = 0; r < kCells; ++r) {
            if (!p[r].is_number()) throw Error(ErrorKind::ParseError, tribox::detail::strfmt("probs[%zu] is not a number", r));
            t[r] = p[r].get<double>();
        }
        return Behavior::from_probabilities(t, tol);
    }
    if (j.contains("correlators")) {
        CorrelatorVector v;
        for (auto it = j["correlators"].begin(); it != j["correlators"].end(); ++it) {
            if (!it.value().is_number()) throw Error(ErrorKind::ParseError, "correlator " + it.key() + " is not a number");
            v.set(it.key(), it.value().get<double>());
        }
        return Behavior::from_correlators(v, tol);
    }
    throw Error(ErrorKind::ParseError, "box JSON needs \"probs\" or \"correlators\"");
}

inline Json parse_json(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

inline std::string read_text(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    out << text;
}

inline Behavior read_box_file(const std::string &path, double tol = kQuantumTol) {
    return box_from_json(parse_json(read_text(path)), tol);
}

inline void write_box_file(const std::string &path, const Behavior &b) {
    write_text(path, format_json(box_to_json(b)) + "\n");
}

inline Json structure_to_json(const PairingStructure &s) {
    static constexpr const char *names[3] = {"alpha", "beta", "gamma"};
    return Json{{"index", s.index()}, {"inner_axis", names[unsigned(s.inner_axis)]}, {"matching", s.matching},
                {"label", s.to_string()}};
}

inline Json discord_to_json(const DiscordReport &r) {
    Json j;
    j["G"] = r.G;
    j["Q"] = r.Q;
    j["g_values"] = r.g_values;
    j["q_values"] = r.q_values;
    j["argmin_g"] = structure_to_json(r.argmin_g);
    j["argmin_q"] = structure_to_json(r.argmin_q);
    return j;
}

/// All signed functional values of a box, keyed by name.
inline Json functionals_to_json(const Behavior &b) {
    Json j;
    for (const auto &f : witness_functionals()) j[f.name] = f.eval(b.correlators());
    return j;
}

inline Json membership_to_json(const MembershipResult &r) {
    Json j;
    j["set"] = std::string(to_string(r.set));
    j["inside"] = r.inside;
    j["infeasibility"] = r.infeasibility;
    j["pivots"] = r.pivots;
    if (r.inside) {
        j["recombination_error"] = r.recombination_error;
        Json sup = Json::array();
        for (const auto &[tag, w] : certificate_support(r)) sup.push_back(Json{{"vertex", to_string(tag)}, {"weight", w}});
        j["certificate"] = sup;
        j["weights"] = r.weights;
    } else {
        if (r.violation) {
            j["violation"] = Json{{"functional", r.violation->name}, {"value", r.violation->value}, {"bound", r.violation->bound}};
        } else {
            j["violation"] = nullptr;
        }
        j["farkas"] = r.farkas;
    }
    return j;
}

inline Json decomposition_to_json(const ThreeDecomposition &d) {
    Json j;
    j["mu"] = d.mu;
    j["nu"] = d.nu;
    j["svetlichny_box"] = to_string(CanonicalVertex{d.svet_tag});
    j["mermin_box"] = to_string(CanonicalVertex{d.mermin_tag});
    j["residual_weight"] = std::max(0.0, 1 - d.mu - d.nu);
    j["residual_defined"] = d.residual_defined;
    j["residual_valid"] = d.residual_valid;
    if (!d.residual_valid) j["residual_error"] = d.residual_error;
    j["residual_G"] = d.residual_G;
    j["residual_Q"] = d.residual_Q;
    j["recombination_error"] = d.recombination_error;
    if (d.residual_defined) {
        j["residual_is_white_noise"] = [&] {
            double e = 0;
            for (double p : d.residual_probs) e = std::max(e, std::abs(p - 0.125));
            return e;
        }() <= 1e-7;
        j["residual_probs"] = d.residual_probs;
    }
    return j;
}

}  // namespace tribox::io

#endif
