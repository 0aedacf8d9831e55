// Copyright 2026 The tqs-coherence Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "tqs/scan.hpp"

// Output formats written by the command-line tool.
//
// CSV: LF line endings, '.' decimal separator, no locale formatting.
// Coordinates (t, parameter axes) use 12 significant digits ("%.12g");
// coherence values and gaps use 12 digits after the point ("%.12f").
//
// JSON: {"meta": {...}, "data": {column: [values...]}} where the data columns
// mirror the CSV columns and carry the same printed precision.
namespace tqs::io {

inline constexpr std::string_view kVersion = "1.0.0";

enum class Format { kCsv, kJson };

inline std::optional<Format> parse_format(std::string_view s) {
    if (s == "csv") {
        return Format::kCsv;
    }
    if (s == "json") {
        return Format::kJson;
    }
    return std::nullopt;
}

/// 12 significant digits.
inline std::string format_coord(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// 12 digits after the decimal point.
inline std::string format_value(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

/// The double a reader gets back from the printed text.
inline double printed_coord(double x) { return std::stod(format_coord(x)); }
inline double printed_value(double x) { return std::stod(format_value(x)); }

inline nlohmann::json params_json(const model::CircuitParams& p) {
    return {{"e_j", p.e_j()}, {"e_m", p.e_m()}, {"hbar", p.hbar()}};
}

inline void write_series_csv(std::ostream& os, const scan::CoherenceSeries& s) {
    os << "t,c_closed_form,c_numeric,abs_gap\n";
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        os << format_coord(s.times[k]) << ',' << format_value(s.closed_form[k]) << ',' << format_value(s.numeric[k])
           << ',' << format_value(std::abs(s.closed_form[k] - s.numeric[k])) << '\n';
    }
}

inline nlohmann::json series_json(const scan::CoherenceSeries& s, const scan::TimeGrid& grid) {
    nlohmann::json t = nlohmann::json::array();
    nlohmann::json closed = nlohmann::json::array();
    nlohmann::json numeric = nlohmann::json::array();
    nlohmann::json gap = nlohmann::json::array();
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        t.push_back(printed_coord(s.times[k]));
        closed.push_back(printed_value(s.closed_form[k]));
        numeric.push_back(printed_value(s.numeric[k]));
        gap.push_back(printed_value(std::abs(s.closed_form[k] - s.numeric[k])));
    }
    return {
        {"meta",
         {{"kind", "series"},
          {"state", evolution::to_string(s.label)},
          {"params", params_json(s.params)},
          {"grid", {{"t_start", grid.t_start()}, {"t_end", grid.t_end()}, {"steps", grid.steps()}}},
          {"max_abs_gap", s.max_abs_gap},
          {"version", kVersion}}},
        {"data", {{"t", t}, {"c_closed_form", closed}, {"c_numeric", numeric}, {"abs_gap", gap}}},
    };
}

/// Long form, row-major over (axis1, axis2). The header names the axes,
/// e.g. "e_j,t,value".
inline void write_grid_csv(std::ostream& os, const scan::ScanGrid& g) {
    os << g.axis1_name << ',' << g.axis2_name << ",value\n";
    for (std::size_t i = 0; i < g.axis1.size(); ++i) {
        for (std::size_t k = 0; k < g.axis2.size(); ++k) {
            os << format_coord(g.axis1[i]) << ',' << format_coord(g.axis2[k]) << ',' << format_value(g.values[i][k])
               << '\n';
        }
    }
}

inline nlohmann::json grid_json(const scan::ScanGrid& g, evolution::BellLabel label, const model::CircuitParams& fixed,
                                const scan::ParamRange& range, const scan::TimeGrid& grid) {
    nlohmann::json a1 = nlohmann::json::array();
    nlohmann::json a2 = nlohmann::json::array();
    nlohmann::json values = nlohmann::json::array();
    for (std::size_t i = 0; i < g.axis1.size(); ++i) {
        for (std::size_t k = 0; k < g.axis2.size(); ++k) {
            a1.push_back(printed_coord(g.axis1[i]));
            a2.push_back(printed_coord(g.axis2[k]));
            values.push_back(printed_value(g.values[i][k]));
        }
    }
    return {
        {"meta",
         {{"kind", "grid"},
          {"state", evolution::to_string(label)},
          {"params", params_json(fixed)},
          {"vary", g.axis1_name},
          {"range", {{"min", range.lo}, {"max", range.hi}, {"steps", range.steps}}},
          {"grid", {{"t_start", grid.t_start()}, {"t_end", grid.t_end()}, {"steps", grid.steps()}}},
          {"axis1_name", g.axis1_name},
          {"axis2_name", g.axis2_name},
          {"version", kVersion}}},
        {"data", {{g.axis1_name, a1}, {g.axis2_name, a2}, {"value", values}}},
    };
}

inline nlohmann::json report_json(const scan::ValidationReport& r) {
    auto check = [](const scan::CheckResult& c) {
        return nlohmann::json{{"max_deviation", c.max_deviation}, {"worst_draw", c.worst_draw}};
    };
    nlohmann::json out = {
        {"meta", {{"kind", "verify"}, {"samples", r.draws}, {"seed", r.seed}, {"version", kVersion}}},
        {"data",
         {{"threshold", r.threshold},
          {"passed", r.passed},
          {"propagator", check(r.propagator)},
          {"density", check(r.density)},
          {"coherence", check(r.coherence)},
          {"max_unitarity_defect", r.max_unitarity_defect}}},
    };
    if (r.failing_check) {
        out["data"]["failing_check"] = *r.failing_check;
        out["data"]["failing_draw"] = {{"params", params_json(r.failing_draw->params)}, {"t", r.failing_draw->t}};
    }
    return out;
}

inline void write_report_text(std::ostream& os, const scan::ValidationReport& r) {
    os << "samples: " << r.draws << "  seed: " << r.seed << '\n';
    for (const scan::CheckResult* c : {&r.propagator, &r.density, &r.coherence}) {
        os << "  " << c->name << " max deviation: " << format_coord(c->max_deviation) << " (draw " << c->worst_draw
           << ")\n";
    }
    os << "  unitarity defect: " << format_coord(r.max_unitarity_defect) << '\n';
    if (r.passed) {
        os << "PASS (threshold " << format_coord(r.threshold) << ")\n";
    } else {
        const auto& d = *r.failing_draw;
        os << "FAIL: " << *r.failing_check << " exceeds " << format_coord(r.threshold) << " at e_j=" << format_coord(d.params.e_j())
           << " e_m=" << format_coord(d.params.e_m()) << " hbar=" << format_coord(d.params.hbar())
           << " t=" << format_coord(d.t) << '\n';
    }
}

inline nlohmann::json operating_point_json(const scan::OperatingPoint& op) {
    return {
        {"meta", {{"kind", "optimize"}, {"state", evolution::to_string(op.label)}, {"params", params_json(op.params)},
                  {"objective", scan::to_string(op.objective)}, {"version", kVersion}}},
        {"data",
         {{"t", printed_coord(op.t)},
          {"coherence", printed_value(op.coherence)},
          {"stationary", op.stationary},
          {"mechanism", scan::to_string(op.mechanism)}}},
    };
}

inline void write_operating_point_text(std::ostream& os, const scan::OperatingPoint& op) {
    os << "state: " << evolution::to_string(op.label) << "  objective: " << scan::to_string(op.objective) << '\n';
    os << "t: " << format_coord(op.t) << '\n';
    os << "coherence: " << format_value(op.coherence) << '\n';
    os << "stationary: " << (op.stationary ? "yes" : "no") << '\n';
    switch (op.mechanism) {
        case scan::Stabilizer::kEigenstate:
            os << "mechanism: eigenstate of H, C constant 1\n";
            break;
        case scan::Stabilizer::kTunnellingOff:
            os << "mechanism: tunnelling off: C constant 1\n";
            break;
        case scan::Stabilizer::kNone:
            os << "mechanism: none (C oscillates; set e_j = 0 or use phi-/psi- to freeze it)\n";
            break;
    }
}

}  // namespace tqs::io
