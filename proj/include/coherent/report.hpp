// SPDX-License-Identifier: Apache-2.0
//
// coherent-frames: certified numerics for coherent frames on finite groups
// Copyright (C) 2026 The coherent-frames authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Report persistence. JSON output is canonical: keys sorted, floats printed
// with %.12g, non-finite floats as null, arrays of scalars on one line.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "coherent/errors.hpp"
#include "coherent/runner.hpp"
#include "coherent/scenario.hpp"

namespace coherent {

enum class Format { json, csv, text };

inline std::optional<Format> parse_format(std::string_view s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "text") return Format::text;
    return std::nullopt;
}

inline std::string format_float(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace detail {

inline bool scalar(const Json& j) { return !j.is_structured(); }

inline void dump_canonical(const Json& j, std::string& out, int depth) {
    switch (j.type()) {
        case Json::value_t::null: out += "null"; return;
        case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; return;
        case Json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); return;
        case Json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); return;
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_float(v) : "null";
            return;
        }
        case Json::value_t::string: out += j.dump(); return;
        default: break;
    }
    const bool obj = j.is_object();
    if (j.empty()) {
        out += obj ? "{}" : "[]";
        return;
    }
    if (!obj && std::all_of(j.begin(), j.end(), scalar)) {
        out += '[';
        bool first = true;
        for (const auto& e : j) {
            if (!first) out += ", ";
            first = false;
            dump_canonical(e, out, depth + 1);
        }
        out += ']';
        return;
    }
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    out += obj ? "{\n" : "[\n";
    bool first = true;
    // objects iterate in key order (std::map storage)
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        if (obj) {
            out += Json(it.key()).dump();
            out += ": ";
        }
        dump_canonical(*it, out, depth + 1);
    }
    out += '\n';
    out.append(static_cast<std::size_t>(2 * depth), ' ');
    out += obj ? '}' : ']';
}

}  // namespace detail

inline std::string canonical_dump(const Json& j) {
    std::string out;
    detail::dump_canonical(j, out, 0);
    return out;
}

inline Json to_json(const RunReport& r, bool with_timestamp = true) {
    Json j = {{"scenario_id", r.scenario_id},
              {"kind", r.kind},
              {"version", r.version},
              {"checks", r.checks},
              {"certificates", r.certificates},
              {"summary",
               {{"cells", r.summary.cells},
                {"pass_total", r.summary.pass_total},
                {"fail_total", r.summary.fail_total},
                {"boundary_total", r.summary.boundary_total}}},
              {"error", nullptr},
              {"ok", r.ok}};
    if (with_timestamp) j["timestamp"] = r.timestamp;
    if (r.error) j["error"] = {{"type", r.error->type}, {"message", r.error->message}};
    return j;
}

inline RunReport report_from_json(const Json& j) {
    try {
        RunReport r;
        r.scenario_id = j.at("scenario_id").get<std::string>();
        r.kind = j.at("kind").get<std::string>();
        if (j.contains("timestamp")) r.timestamp = j.at("timestamp").get<std::string>();
        r.version = j.at("version").get<std::string>();
        r.checks = j.at("checks").get<std::map<std::string, bool>>();
        r.certificates = j.at("certificates");
        const Json& s = j.at("summary");
        r.summary = {s.at("cells").get<std::size_t>(), s.at("pass_total").get<std::size_t>(),
                     s.at("fail_total").get<std::size_t>(), s.at("boundary_total").get<std::size_t>()};
        if (!j.at("error").is_null())
            r.error = ReportError{j["error"].at("type").get<std::string>(), j["error"].at("message").get<std::string>()};
        r.ok = j.at("ok").get<bool>();
        return r;
    } catch (const Json::exception& e) {
        throw ValidationError("report", e.what());
    }
}

inline std::string emit_json(const std::vector<RunReport>& reports, bool with_timestamp = true) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r, with_timestamp));
    return canonical_dump(arr);
}

inline std::vector<RunReport> parse_reports(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        auto [line, col] = detail::line_column(text, e.byte);
        throw ParseError("report is not valid JSON", line, col);
    }
    if (!doc.is_array()) throw ValidationError("reports", "top level must be a JSON array");
    std::vector<RunReport> out;
    for (const auto& j : doc) out.push_back(report_from_json(j));
    return out;
}

namespace detail {

inline std::string csv_cell(const Json& j) {
    if (j.is_null()) return "";
    if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
    if (j.is_number_float()) return format_float(j.get<double>());
    if (j.is_number()) return j.dump();
    if (j.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ":" : "") + csv_cell(j[i]);
        return s;
    }
    std::string s = j.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

struct CsvSection {
    std::string header;
    std::vector<std::string> rows;
};

inline std::string csv_row(const std::string& id, const Json& row, const std::vector<std::string>& cols) {
    std::string line = csv_cell(id);
    for (const auto& c : cols) line += "," + csv_cell(row.contains(c) ? row[c] : Json());
    return line;
}

inline std::string csv_header(const std::vector<std::string>& cols) {
    std::string h = "scenario_id";
    for (const auto& c : cols) h += "," + c;
    return h;
}

}  // namespace detail

/// One section per report kind, each with its own header, separated by a
/// blank line. Coordinates are joined with ':'.
inline std::string emit_csv(const std::vector<RunReport>& reports) {
    using detail::CsvSection;
    const std::vector<std::string> sampling = {"trial", "K_center", "K_radius", "U_radius", "lhs", "rhs", "C", "C0", "holds", "boundary"};
    const std::vector<std::string> hap = {"y", "K_radius", "L_radius", "error"};
    const std::vector<std::string> comp = {"y", "K_radius", "L_radius", "trace_T", "rank_P", "card_X", "card_Y",
                                           "lhs", "B_used", "chain_ok", "final_ok"};
    const std::vector<std::string> dens = {"y", "K_radius", "count", "measure", "ratio", "boundary"};
    const std::vector<std::string> errs = {"type", "message"};

    std::map<std::string, CsvSection> sections;
    std::vector<std::string> order;
    auto section = [&](const std::string& name, const std::vector<std::string>& cols) -> CsvSection& {
        auto [it, fresh] = sections.try_emplace(name);
        if (fresh) {
            it->second.header = detail::csv_header(cols);
            order.push_back(name);
        }
        return it->second;
    };
    for (const auto& r : reports) {
        const Json& c = r.certificates;
        if (r.error) {
            section("error", errs).rows.push_back(
                detail::csv_row(r.scenario_id, {{"type", r.error->type}, {"message", r.error->message}}, errs));
        } else if (r.kind == "sampling_bound") {
            auto& s = section(r.kind, sampling);
            for (const auto& row : c["trials"]) s.rows.push_back(detail::csv_row(r.scenario_id, row, sampling));
        } else if (r.kind == "frame_analysis") {
            const std::vector<std::string> cols = {"A", "B", "tight", "C0", "dual_max_error", "bessel_empirical", "bessel_bound"};
            Json row = {{"A", c["A"]}, {"B", c["B"]}, {"tight", c["tight"]}, {"C0", c["C0"]},
                        {"dual_max_error", c["dual"]["max_error"]},
                        {"bessel_empirical", c["bessel"]["empirical_B_dual"]},
                        {"bessel_bound", c["bessel"]["bound"]}};
            section(r.kind, cols).rows.push_back(detail::csv_row(r.scenario_id, row, cols));
        } else if (r.kind == "hap") {
            auto& s = section(r.kind, hap);
            for (const auto& row : c["table"]) s.rows.push_back(detail::csv_row(r.scenario_id, row, hap));
        } else if (r.kind == "comparison") {
            auto& s = section(r.kind, comp);
            for (const auto& row : c["certificates"]) s.rows.push_back(detail::csv_row(r.scenario_id, row, comp));
        } else if (r.kind == "density") {
            auto& s = section(r.kind, dens);
            for (const auto& row : c["rows"]) s.rows.push_back(detail::csv_row(r.scenario_id, row, dens));
        }
    }
    std::string out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& s = sections[order[i]];
        if (i) out += "\n";
        out += s.header + "\n";
        for (const auto& row : s.rows) out += row + "\n";
    }
    return out;
}

inline std::string emit_text(const std::vector<RunReport>& reports) {
    std::ostringstream os;
    std::size_t ok = 0;
    for (const auto& r : reports) {
        ok += r.ok ? 1 : 0;
        os << (r.error ? "ERROR" : r.ok ? "PASS " : "FAIL ") << "  " << r.scenario_id << "  [" << r.kind << "]";
        if (r.error) {
            os << "  " << r.error->type << ": " << r.error->message << "\n";
            continue;
        }
        os << "  cells=" << r.summary.cells << " pass=" << r.summary.pass_total << " fail=" << r.summary.fail_total
           << " boundary=" << r.summary.boundary_total << "\n";
        const Json& c = r.certificates;
        if (r.kind == "frame_analysis") {
            os << "    A=" << detail::csv_cell(c["A"]) << " B=" << detail::csv_cell(c["B"])
               << " dual error=" << detail::csv_cell(c["dual"]["max_error"]) << " (" << c["dual"]["label"].get<std::string>() << ")\n";
        } else if (r.kind == "hap") {
            os << "    L radius " << c["chosen_L_radius"] << ", worst error " << detail::csv_cell(c["worst_error"])
               << " < " << detail::csv_cell(c["epsilon"]) << ", tail estimate " << detail::csv_cell(c["theoretical_bound"])
               << "\n";
        } else if (r.kind == "comparison") {
            os << "    L radius " << c["hap"]["chosen_L_radius"] << ", " << c["certificates"].size() << " certificates\n";
        } else if (r.kind == "density") {
            for (const auto& s : c["summary"])
                os << "    K radius " << s["K_radius"] << ": ratio in [" << detail::csv_cell(s["min_ratio"]) << ", "
                   << detail::csv_cell(s["max_ratio"]) << "]\n";
        } else if (r.kind == "sampling_bound") {
            os << "    max lhs/rhs " << detail::csv_cell(c["max_lhs_over_rhs"]) << "\n";
        }
        for (const auto& [name, pass] : r.checks)
            if (!pass) os << "    check failed: " << name << "\n";
    }
    os << reports.size() << " scenarios, " << ok << " ok, " << reports.size() - ok << " not ok\n";
    return os.str();
}

inline std::string emit(const std::vector<RunReport>& reports, Format f) {
    switch (f) {
        case Format::json: return emit_json(reports);
        case Format::csv: return emit_csv(reports);
        case Format::text: return emit_text(reports);
    }
    return {};
}

}  // namespace coherent
