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

// Scenario files: a JSON array of objects, each with an "id", a "kind" and the
// descriptors that kind needs. Unknown keys are rejected.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coherent/errors.hpp"
#include "coherent/frame_core.hpp"
#include "coherent/group_model.hpp"
#include "coherent/hap_verifier.hpp"
#include "coherent/hilbert_rep.hpp"

namespace coherent {

using Json = nlohmann::json;

enum class ScenarioKind { sampling_bound, frame_analysis, hap, comparison, density };

inline const char* kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::sampling_bound: return "sampling_bound";
        case ScenarioKind::frame_analysis: return "frame_analysis";
        case ScenarioKind::hap: return "hap";
        case ScenarioKind::comparison: return "comparison";
        case ScenarioKind::density: return "density";
    }
    return "?";
}

inline std::optional<ScenarioKind> parse_kind(std::string_view s) {
    for (auto k : {ScenarioKind::sampling_bound, ScenarioKind::frame_analysis, ScenarioKind::hap,
                   ScenarioKind::comparison, ScenarioKind::density})
        if (s == kind_name(k)) return k;
    return std::nullopt;
}

struct DualSpec {
    bool canonical = true;
    std::optional<std::uint64_t> seed;  // perturbed only; the scenario seed when absent
    double scale = 0.1;
};

struct Scenario {
    std::string id;
    ScenarioKind kind = ScenarioKind::frame_analysis;
    std::uint64_t seed = 0;
    std::string description;
    std::optional<GroupModel> group;
    std::optional<FrameSystem> frame;
    std::optional<FrameSystem> reference;
    std::optional<Vector> f;
    std::optional<PointSet> points;
    DualSpec dual;
    double epsilon = 0.0;
    long U_radius = 1;
    bool U_fixed = false;  // sampling_bound draws U when false
    std::vector<long> K_radii;
    std::vector<long> L_radii;
    std::vector<ElementId> y_sample;  // empty: the whole carrier
    int trials = 0;
    long max_radius = 3;
};

namespace detail {

inline std::string join(const std::string& base, std::string_view key) {
    return base.empty() ? std::string(key) : base + "." + std::string(key);
}

inline void allow_keys(const Json& o, const std::string& path, std::initializer_list<std::string_view> keys) {
    if (!o.is_object()) throw ValidationError(path.empty() ? "scenario" : path, "expected an object");
    for (const auto& item : o.items())
        if (std::find(keys.begin(), keys.end(), item.key()) == keys.end())
            throw ValidationError(join(path, item.key()), "unknown key");
}

inline const Json& need(const Json& o, const std::string& path, std::string_view key) {
    auto it = o.find(std::string(key));
    if (it == o.end()) throw ValidationError(join(path, key));
    return *it;
}

inline const Json* maybe(const Json& o, std::string_view key) {
    auto it = o.find(std::string(key));
    return it == o.end() ? nullptr : &*it;
}

inline long as_long(const Json& v, const std::string& field) {
    if (!v.is_number_integer()) throw ValidationError(field, "expected an integer");
    return v.get<long>();
}

inline long as_nonneg(const Json& v, const std::string& field) {
    const long r = as_long(v, field);
    if (r < 0) throw ValidationError(field, "must be nonnegative");
    return r;
}

inline std::uint64_t as_u64(const Json& v, const std::string& field) {
    if (!v.is_number_unsigned()) throw ValidationError(field, "expected an unsigned integer");
    return v.get<std::uint64_t>();
}

inline double as_double(const Json& v, const std::string& field) {
    if (!v.is_number()) throw ValidationError(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ValidationError(field, "must be finite");
    return d;
}

inline std::vector<long> as_long_list(const Json& v, const std::string& field) {
    if (!v.is_array()) throw ValidationError(field, "expected an array of integers");
    std::vector<long> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_long(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::vector<long> radii(const Json& v, const std::string& field) {
    auto r = as_long_list(v, field);
    if (r.empty()) throw ValidationError(field, "must be nonempty");
    for (long x : r)
        if (x < 0) throw ValidationError(field, "radii must be nonnegative");
    return r;
}

// Re-labels errors raised by library constructors with the JSON path.
template <class F>
auto guarded(const std::string& field, F&& build) {
    try {
        return build();
    } catch (const ValidationError& e) {
        throw ValidationError(join(field, e.field()), e.what());
    } catch (const Error& e) {
        throw ValidationError(field, e.what());
    }
}

inline GroupModel parse_group(const Json& j, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path, "expected an object");
    const Json& kind = need(j, path, "kind");
    if (kind == "cyclic") {
        allow_keys(j, path, {"kind", "moduli"});
        auto m = as_long_list(need(j, path, "moduli"), join(path, "moduli"));
        return guarded(path, [&] { return GroupModel::cyclic(m); });
    }
    if (kind == "truncated") {
        allow_keys(j, path, {"kind", "lo", "hi"});
        auto lo = as_long_list(need(j, path, "lo"), join(path, "lo"));
        auto hi = as_long_list(need(j, path, "hi"), join(path, "hi"));
        return guarded(path, [&] { return GroupModel::truncated(lo, hi); });
    }
    throw ValidationError(join(path, "kind"), "expected \"cyclic\" or \"truncated\"");
}

inline Representation parse_rep(const Json& j, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path, "expected an object");
    const Json& kind = need(j, path, "kind");
    if (kind == "translation" || kind == "gabor") {
        allow_keys(j, path, {"kind", "n"});
        const long n = as_long(need(j, path, "n"), join(path, "n"));
        if (n < 1) throw ValidationError(join(path, "n"), "must be positive");
        return kind == "gabor" ? Representation::gabor(n) : Representation::translation(n);
    }
    if (kind == "tensor") {
        allow_keys(j, path, {"kind", "factors"});
        const Json& fs = need(j, path, "factors");
        const std::string fp = join(path, "factors");
        if (!fs.is_array() || fs.empty()) throw ValidationError(fp, "expected a nonempty array");
        Representation r = parse_rep(fs[0], fp + "[0]");
        for (std::size_t i = 1; i < fs.size(); ++i) {
            Representation next = parse_rep(fs[i], fp + "[" + std::to_string(i) + "]");
            r = guarded(fp, [&] { return Representation::tensor(r, next); });
        }
        return r;
    }
    throw ValidationError(join(path, "kind"), "expected \"translation\", \"gabor\" or \"tensor\"");
}

/// A preset name, an inline [[re, im], ...] array (bare reals allowed), or
/// {"sum": [v1, v2, ...]}.
inline Vector parse_vector(const Json& j, const std::string& path, const Representation& rep) {
    if (j.is_string()) return guarded(path, [&] { return preset_vector(rep, j.get<std::string>()); });
    if (j.is_object()) {
        allow_keys(j, path, {"sum"});
        const Json& terms = need(j, path, "sum");
        const std::string tp = join(path, "sum");
        if (!terms.is_array() || terms.empty()) throw ValidationError(tp, "expected a nonempty array");
        Vector v = Vector::Zero(static_cast<Eigen::Index>(rep.dim()));
        for (std::size_t i = 0; i < terms.size(); ++i) v += parse_vector(terms[i], tp + "[" + std::to_string(i) + "]", rep);
        return v;
    }
    if (!j.is_array()) throw ValidationError(path, "expected a preset name or an array");
    if (j.size() != rep.dim())
        throw ValidationError(path, "expected " + std::to_string(rep.dim()) + " entries, got " + std::to_string(j.size()));
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string ep = path + "[" + std::to_string(i) + "]";
        const Json& e = j[i];
        if (e.is_number()) {
            v[static_cast<Eigen::Index>(i)] = as_double(e, ep);
        } else if (e.is_array() && e.size() == 2) {
            v[static_cast<Eigen::Index>(i)] = Complex(as_double(e[0], ep), as_double(e[1], ep));
        } else {
            throw ValidationError(ep, "expected a number or [re, im]");
        }
    }
    return v;
}

inline ElementId parse_element(const Json& j, const std::string& path, const GroupModel& g) {
    Coords c;
    if (j.is_number_integer()) c.push_back(j.get<long>());
    else c = as_long_list(j, path);
    if (c.size() != g.rank())
        throw ValidationError(path, "expected " + std::to_string(g.rank()) + " coordinates");
    auto id = g.find(c);
    if (!id) throw ValidationError(path, GroupModel::format(c) + " is outside " + g.describe());
    return *id;
}

inline PointSet parse_points(const Json& j, const std::string& path, const GroupModel& g) {
    if (j == "full") return full_point_set(g);
    if (j.is_object()) {
        allow_keys(j, path, {"lattice"});
        const Json& lat = need(j, path, "lattice");
        const std::string lp = join(path, "lattice");
        allow_keys(lat, lp, {"steps"});
        auto steps = as_long_list(need(lat, lp, "steps"), join(lp, "steps"));
        return guarded(lp, [&] { return lattice_point_set(g, steps); });
    }
    if (!j.is_array()) throw ValidationError(path, "expected \"full\", a list of elements or a lattice");
    PointSet x;
    for (std::size_t i = 0; i < j.size(); ++i) x.points.push_back(parse_element(j[i], path + "[" + std::to_string(i) + "]", g));
    if (x.points.empty()) throw ValidationError(path, "point set is empty");
    return x;
}

inline std::vector<ElementId> parse_y_sample(const Json& j, const std::string& path, const GroupModel& g) {
    if (j == "all") return {};
    if (!j.is_array() || j.empty()) throw ValidationError(path, "expected \"all\" or a nonempty list of elements");
    std::vector<ElementId> ys;
    for (std::size_t i = 0; i < j.size(); ++i) ys.push_back(parse_element(j[i], path + "[" + std::to_string(i) + "]", g));
    return ys;
}

inline FrameSystem parse_frame(const Json& j, const std::string& path) {
    allow_keys(j, path, {"rep", "group", "window", "points"});
    Representation rep = parse_rep(need(j, path, "rep"), join(path, "rep"));
    if (const Json* gj = maybe(j, "group")) {
        GroupModel g = parse_group(*gj, join(path, "group"));
        rep = guarded(join(path, "group"), [&] { return Representation::over(g, rep.factors()); });
    }
    Vector w = parse_vector(need(j, path, "window"), join(path, "window"), rep);
    PointSet x = parse_points(need(j, path, "points"), join(path, "points"), rep.group());
    return guarded(path, [&] { return FrameSystem(rep, w, x); });
}

inline DualSpec parse_dual(const Json& j, const std::string& path) {
    DualSpec d;
    if (j == "canonical") return d;
    if (!j.is_object()) throw ValidationError(path, "expected \"canonical\" or {\"perturbed\": ...}");
    allow_keys(j, path, {"perturbed"});
    const Json& p = need(j, path, "perturbed");
    const std::string pp = join(path, "perturbed");
    d.canonical = false;
    if (p.is_number()) {
        d.seed = as_u64(p, pp);
        return d;
    }
    allow_keys(p, pp, {"seed", "scale"});
    if (const Json* s = maybe(p, "seed")) d.seed = as_u64(*s, join(pp, "seed"));
    if (const Json* s = maybe(p, "scale")) d.scale = as_double(*s, join(pp, "scale"));
    return d;
}

inline Scenario parse_scenario(const Json& j) {
    if (!j.is_object()) throw ValidationError("scenario", "expected an object");
    Scenario s;
    const Json& id = need(j, "", "id");
    if (!id.is_string() || id.get<std::string>().empty()) throw ValidationError("id", "expected a nonempty string");
    s.id = id.get<std::string>();
    const Json& kind = need(j, "", "kind");
    auto k = kind.is_string() ? parse_kind(kind.get<std::string>()) : std::nullopt;
    if (!k) throw ValidationError("kind", "unknown scenario kind");
    s.kind = *k;

    switch (s.kind) {
        case ScenarioKind::sampling_bound:
            allow_keys(j, "", {"id", "kind", "seed", "description", "group", "trials", "max_radius", "points", "U_radius"});
            break;
        case ScenarioKind::frame_analysis:
            allow_keys(j, "", {"id", "kind", "seed", "description", "frame", "dual", "trials", "U_radius"});
            break;
        case ScenarioKind::hap:
            allow_keys(j, "", {"id", "kind", "seed", "description", "frame", "f", "epsilon", "dual", "U_radius",
                               "K_radii", "L_radii", "y_sample"});
            break;
        case ScenarioKind::comparison:
            allow_keys(j, "", {"id", "kind", "seed", "description", "frame", "reference", "epsilon", "dual", "U_radius",
                               "K_radii", "L_radii", "y_sample"});
            break;
        case ScenarioKind::density:
            allow_keys(j, "", {"id", "kind", "seed", "description", "group", "points", "K_radii", "y_sample"});
            break;
    }

    if (const Json* v = maybe(j, "seed")) s.seed = as_u64(*v, "seed");
    if (const Json* v = maybe(j, "description")) {
        if (!v->is_string()) throw ValidationError("description", "expected a string");
        s.description = v->get<std::string>();
    }

    const bool framed = s.kind == ScenarioKind::frame_analysis || s.kind == ScenarioKind::hap ||
                        s.kind == ScenarioKind::comparison;
    if (framed) {
        s.frame = parse_frame(need(j, "", "frame"), "frame");
        s.group = s.frame->group();
    } else {
        s.group = parse_group(need(j, "", "group"), "group");
    }
    const GroupModel& g = *s.group;

    if (s.kind == ScenarioKind::comparison) {
        s.reference = parse_frame(need(j, "", "reference"), "reference");
        if (!(s.reference->rep() == s.frame->rep()))
            throw ValidationError("reference.rep", "reference frame must use the same representation");
    }
    if (s.kind == ScenarioKind::hap) s.f = parse_vector(need(j, "", "f"), "f", s.frame->rep());
    if (s.kind == ScenarioKind::hap || s.kind == ScenarioKind::comparison) {
        s.epsilon = as_double(need(j, "", "epsilon"), "epsilon");
        if (!(s.epsilon > 0.0)) throw ValidationError("epsilon", "must be positive");
        if (s.kind == ScenarioKind::comparison && !(s.epsilon < 1.0))
            throw ValidationError("epsilon", "must lie in (0, 1)");
    }
    if (s.kind == ScenarioKind::density) s.points = parse_points(need(j, "", "points"), "points", g);
    if (s.kind == ScenarioKind::sampling_bound) {
        if (const Json* v = maybe(j, "points")) s.points = parse_points(*v, "points", g);
        s.trials = 50;
        if (const Json* v = maybe(j, "max_radius")) s.max_radius = as_nonneg(*v, "max_radius");
    }
    if (s.kind == ScenarioKind::frame_analysis) s.trials = 20;
    if (const Json* v = maybe(j, "trials")) {
        s.trials = static_cast<int>(as_long(*v, "trials"));
        if (s.trials < 1) throw ValidationError("trials", "must be positive");
    }
    if (const Json* v = maybe(j, "U_radius")) {
        s.U_radius = as_nonneg(*v, "U_radius");
        s.U_fixed = true;
    }
    if (const Json* v = maybe(j, "dual")) s.dual = parse_dual(*v, "dual");
    s.K_radii = default_radii(g);
    s.L_radii = s.K_radii;
    if (const Json* v = maybe(j, "K_radii")) s.K_radii = radii(*v, "K_radii");
    if (const Json* v = maybe(j, "L_radii")) {
        s.L_radii = radii(*v, "L_radii");
        for (std::size_t i = 1; i < s.L_radii.size(); ++i)
            if (s.L_radii[i] <= s.L_radii[i - 1]) throw ValidationError("L_radii", "must be strictly increasing");
    }
    if (const Json* v = maybe(j, "y_sample")) s.y_sample = parse_y_sample(*v, "y_sample", g);
    return s;
}

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    // the parser reports the 1-based offset of the offending character
    const std::size_t at = byte == 0 ? 0 : std::min(byte - 1, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace detail

inline std::vector<Scenario> parse_scenarios(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        auto [line, col] = detail::line_column(text, e.byte);
        throw ParseError("scenario file is not valid JSON (line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ")",
                         line, col);
    }
    if (!doc.is_array()) throw ValidationError("scenarios", "top level must be a JSON array");
    std::vector<Scenario> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        try {
            out.push_back(detail::parse_scenario(doc[i]));
        } catch (const ValidationError& e) {
            std::string label = "scenario #" + std::to_string(i);
            if (doc[i].is_object() && doc[i].contains("id") && doc[i]["id"].is_string())
                label += " (" + doc[i]["id"].get<std::string>() + ")";
            throw ValidationError(e.field(), label + ": " + e.what());
        }
        if (!seen.insert(out.back().id).second) throw ValidationError("id", "duplicate scenario id " + out.back().id);
    }
    return out;
}

inline std::vector<Scenario> load_scenarios(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open scenario file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenarios(buf.str());
}

}  // namespace coherent
