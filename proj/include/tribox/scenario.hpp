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

#ifndef TRIBOX_SCENARIO_HPP
#define TRIBOX_SCENARIO_HPP

// Named quantum scenarios: a state family with parameters plus a settings
// family, as used by the CLI and by scenario files of the form
//
//   {"state": {"family": "gghz", "theta": 0.5},
//    "settings": {"name": "sd_xy"}}
//
// Settings may instead list explicit directions: {"a": [[x,y,z],[x,y,z]], "b": .., "c": ..}.

#include <map>
#include <string>

#include "tribox/io.hpp"
#include "tribox/quantum.hpp"

namespace tribox::quantum {

using Params = std::map<std::string, double>;

namespace detail {
inline double need(const Params &p, const std::string &key, const std::string &what) {
    auto it = p.find(key);
    if (it == p.end()) throw Error(ErrorKind::BadParameters, what + " needs parameter '" + key + "'");
    return it->second;
}
}  // namespace detail

inline const std::vector<std::string> &state_families() {
    static const std::vector<std::string> names = {"ghz",     "gghz",    "ghz_class", "w_class",       "w",
                                                   "werner",  "bisep_w", "ghz_w",     "sixqubit_4sep", "sixqubit_partial"};
    return names;
}

inline const std::vector<std::string> &settings_families() {
    static const std::vector<std::string> names = {"sd_xy",          "sd_xz",   "md_xy",    "md_xz",
                                                   "gghz_dependent", "class99", "mixed_p", "appendix"};
    return names;
}

inline DensityOperator make_state(const std::string &family, const Params &p) {
    using detail::need;
    if (family == "ghz") return ghz();
    if (family == "gghz") return gghz(need(p, "theta", family));
    if (family == "ghz_class") return ghz_class(need(p, "theta", family), need(p, "theta3", family));
    if (family == "w_class") return w_class(need(p, "alpha", family), need(p, "beta", family), need(p, "gamma", family));
    if (family == "w") return w();
    if (family == "werner") return werner(need(p, "p", family));
    if (family == "bisep_w") return bisep_w();
    if (family == "ghz_w") {
        double pp = need(p, "p", family);
        auto q = p.find("q");
        return ghz_w(pp, q == p.end() ? 1 - pp : q->second);
    }
    if (family == "sixqubit_4sep") return sixqubit_4sep();
    if (family == "sixqubit_partial") return sixqubit_partial();
    throw Error(ErrorKind::BadParameters, "unknown state family '" + family + "'");
}

inline MeasurementSettings make_settings(const std::string &name, const Params &p) {
    using detail::need;
    if (name == "sd_xy") return settings_sd_xy();
    if (name == "sd_xz") return settings_sd_xz();
    if (name == "md_xy") return settings_md_xy();
    if (name == "md_xz") return settings_md_xz();
    if (name == "gghz_dependent") return settings_gghz_dependent(need(p, "theta", name));
    if (name == "class99") return settings_class99(need(p, "theta", name));
    if (name == "mixed_p") return settings_mixed_p(need(p, "p", name));
    if (name == "appendix") return appendix_strategy().directions;
    throw Error(ErrorKind::BadParameters, "unknown settings '" + name + "'");
}

/// Born box of a state under named settings; six-qubit states use the
/// block strategy whatever settings name is given.
inline Behavior scenario_box(const DensityOperator &rho, const MeasurementSettings &s) {
    if (rho.qubits() == 6) {
        BlockStrategy strat = appendix_strategy();
        strat.directions = s;
        return born_box_blocked(rho, strat);
    }
    return born_box(rho, s);
}

inline Params params_from_json(const io::Json &j, const char *skip) {
    Params p;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == skip) continue;
        if (!it.value().is_number()) throw Error(ErrorKind::ParseError, "parameter '" + it.key() + "' must be a number");
        p[it.key()] = it.value().get<double>();
    }
    return p;
}

inline MeasurementSettings settings_from_json(const io::Json &j) {
    if (j.contains("name")) return make_settings(j["name"].get<std::string>(), params_from_json(j, "name"));
    MeasurementSettings s;
    auto read = [&](const char *key, std::array<Vec3, 2> &dst) {
        if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2) {
            throw Error(ErrorKind::ParseError, std::string("settings need \"") + key + "\" as two 3-vectors");
        }
        for (int x = 0; x < 2; ++x) {
            const auto &v = j[key][x];
            if (!v.is_array() || v.size() != 3) throw Error(ErrorKind::ParseError, std::string(key) + " entries must be 3-vectors");
            for (int t = 0; t < 3; ++t) dst[x][t] = v[t].get<double>();
        }
    };
    read("a", s.a);
    read("b", s.b);
    read("c", s.c);
    s.validate();
    return s;
}

inline Behavior scenario_from_json(const io::Json &j) {
    if (!j.contains("state") || !j.contains("settings")) {
        throw Error(ErrorKind::ParseError, "scenario needs \"state\" and \"settings\"");
    }
    const auto &st = j["state"];
    if (!st.contains("family")) throw Error(ErrorKind::ParseError, "state needs \"family\"");
    auto rho = make_state(st["family"].get<std::string>(), params_from_json(st, "family"));
    return scenario_box(rho, settings_from_json(j["settings"]));
}

}  // namespace tribox::quantum

#endif
