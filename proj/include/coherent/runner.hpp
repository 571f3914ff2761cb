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

// Batch execution of scenarios. Each scenario produces one RunReport; errors
// raised while running are captured in the report and never abort the batch.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <typeinfo>
#include <vector>

#include "coherent/amalgam.hpp"
#include "coherent/comparison.hpp"
#include "coherent/errors.hpp"
#include "coherent/frame_core.hpp"
#include "coherent/group_model.hpp"
#include "coherent/hap_verifier.hpp"
#include "coherent/hilbert_rep.hpp"
#include "coherent/scenario.hpp"

namespace coherent {

inline constexpr const char* kVersion = "0.1.0";

struct Summary {
    std::size_t cells = 0;
    std::size_t pass_total = 0;
    std::size_t fail_total = 0;
    std::size_t boundary_total = 0;

    bool operator==(const Summary&) const = default;
};

struct ReportError {
    std::string type;
    std::string message;

    bool operator==(const ReportError&) const = default;
};

struct RunReport {
    std::string scenario_id;
    std::string kind;
    std::string timestamp;
    std::string version = kVersion;
    std::map<std::string, bool> checks;
    Json certificates = Json::object();
    Summary summary;
    std::optional<ReportError> error;
    bool ok = false;

    bool operator==(const RunReport& o) const {
        return scenario_id == o.scenario_id && kind == o.kind && timestamp == o.timestamp &&
               version == o.version && checks == o.checks && certificates == o.certificates &&
               summary == o.summary && error == o.error && ok == o.ok;
    }
};

struct RunOptions {
    bool include_dual_vectors = false;
};

/// The value a report stores for a float: what %.12g prints, parsed back.
/// Non-finite values become null.
inline Json report_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline void round_floats(Json& j) {
    if (j.is_number_float()) {
        j = report_number(j.get<double>());
    } else if (j.is_structured()) {
        for (auto& e : j) round_floats(e);
    }
}

inline std::string error_type(const std::exception& e) {
    if (dynamic_cast<const NotAFrame*>(&e)) return "NotAFrame";
    if (dynamic_cast<const OutOfCarrier*>(&e)) return "OutOfCarrier";
    if (dynamic_cast<const NonSymmetricNeighborhood*>(&e)) return "NonSymmetricNeighborhood";
    if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
    if (dynamic_cast<const LengthMismatch*>(&e)) return "LengthMismatch";
    if (dynamic_cast<const ZeroWindow*>(&e)) return "ZeroWindow";
    if (dynamic_cast<const ZeroResult*>(&e)) return "ZeroResult";
    if (dynamic_cast<const NotPositive*>(&e)) return "NotPositive";
    if (dynamic_cast<const NoAdmissibleL*>(&e)) return "NoAdmissibleL";
    if (dynamic_cast<const HapPreconditionUnmet*>(&e)) return "HapPreconditionUnmet";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
    if (dynamic_cast<const Error*>(&e)) return "Error";
    return "InternalError";
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Largest r such that ball(g, r) fits into the carrier.
inline long largest_ball_radius(const GroupModel& g) {
    if (g.kind() == GroupKind::cyclic) return g.diameter();
    long r = std::numeric_limits<long>::max();
    for (std::size_t i = 0; i < g.rank(); ++i) r = std::min({r, -g.lower()[i], g.upper()[i]});
    return r;
}

struct SamplingTrial {
    std::size_t points = 0;
    ElementId K_center = 0;
    long K_radius = 0;
    long U_radius = 0;
    bool boundary = false;  // K^c U left a truncated carrier
    SamplingBound bound;
};

/// Random instances of the sampling bound: complex Gaussian f, a Bernoulli
/// point set (unless fixed), K a translated ball, U a ball at the identity.
inline std::vector<SamplingTrial> sampling_trials(const GroupModel& g, int trials, long max_radius,
                                                  std::uint64_t seed, const std::optional<PointSet>& fixed_points,
                                                  std::optional<long> fixed_U) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n01;
    std::uniform_real_distribution<double> u01;
    std::uniform_int_distribution<ElementId> pick(0, g.size() - 1);
    const long rmax = std::min(max_radius, largest_ball_radius(g));
    std::uniform_int_distribution<long> radius(0, rmax);

    std::vector<SamplingTrial> out;
    for (int t = 0; t < trials; ++t) {
        std::vector<Complex> values(g.size());
        for (auto& v : values) v = Complex(n01(rng), n01(rng));
        PointSet x;
        if (fixed_points) {
            x = *fixed_points;
        } else {
            const double p = 0.05 + 0.55 * u01(rng);
            for (ElementId a = 0; a < g.size(); ++a)
                if (u01(rng) < p) x.points.push_back(a);
            if (x.points.empty()) x.points.push_back(pick(rng));
        }
        SamplingTrial tr;
        tr.points = x.size();
        tr.K_radius = radius(rng);
        tr.U_radius = fixed_U ? *fixed_U : radius(rng);
        tr.K_center = pick(rng);
        const CompactSet k = translate_set_clipped(g, tr.K_center, ball(g, tr.K_radius));
        const CompactSet u = ball(g, tr.U_radius);
        try {
            tr.bound = sampling_bound_check(g, GroupFunction(std::move(values)), x, k, u);
        } catch (const OutOfCarrier&) {
            tr.boundary = true;
        }
        out.push_back(tr);
    }
    return out;
}

namespace detail {

inline Json coords_json(const GroupModel& g, ElementId x) { return g.coords(x); }

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline DualFrame make_dual(const Scenario& s, const FrameSystem& fr, const FrameAnalysis& fa) {
    if (s.dual.canonical) return canonical_dual_frame(fa);
    return perturbed_dual(fr.atoms(), fa, s.dual.seed.value_or(s.seed), s.dual.scale);
}

inline void tally(Summary& sum, bool boundary, bool pass) {
    ++sum.cells;
    if (boundary) ++sum.boundary_total;
    else if (pass) ++sum.pass_total;
    else ++sum.fail_total;
}

inline void run_sampling(const Scenario& s, RunReport& r) {
    const GroupModel& g = *s.group;
    const auto trials = sampling_trials(g, s.trials, s.max_radius, s.seed, s.points,
                                        s.U_fixed ? std::optional<long>(s.U_radius) : std::nullopt);
    Json rows = Json::array();
    bool all = true;
    double worst_ratio = 0.0;
    for (std::size_t t = 0; t < trials.size(); ++t) {
        const auto& tr = trials[t];
        Json row = {{"trial", t},
                    {"points", tr.points},
                    {"K_center", coords_json(g, tr.K_center)},
                    {"K_radius", tr.K_radius},
                    {"U_radius", tr.U_radius},
                    {"boundary", tr.boundary}};
        if (!tr.boundary) {
            row["lhs"] = tr.bound.lhs;
            row["rhs"] = tr.bound.rhs;
            row["C"] = tr.bound.C;
            row["C0"] = tr.bound.C0;
            row["holds"] = tr.bound.holds;
            all = all && tr.bound.holds;
            if (tr.bound.rhs > 0.0) worst_ratio = std::max(worst_ratio, tr.bound.lhs / tr.bound.rhs);
        }
        rows.push_back(std::move(row));
        tally(r.summary, tr.boundary, tr.bound.holds);
    }
    r.checks["sampling_bound"] = all;
    r.certificates = {{"group", g.describe()}, {"max_lhs_over_rhs", worst_ratio}, {"trials", std::move(rows)}};
}

inline void run_frame_analysis(const Scenario& s, RunReport& r, const RunOptions& opt) {
    const FrameSystem& fr = *s.frame;
    const GroupModel& g = fr.group();
    const FrameAnalysis fa = analyze_frame(fr);
    const DualFrame dual = make_dual(s, fr, fa);
    const DualCheck dc = verify_dual(fr.atoms(), dual.vectors);
    const BesselCheck bc = bessel_bound_check(dual.vectors, fa.A, dual.canonical);

    std::mt19937_64 rng(s.seed);
    std::normal_distribution<double> n01;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    bool ineq = true;
    for (int t = 0; t < s.trials; ++t) {
        Vector f(static_cast<Eigen::Index>(fr.dim()));
        for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = Complex(n01(rng), n01(rng));
        const double energy = analysis_coefficients(fr, f).squaredNorm();
        const double n2 = f.squaredNorm();
        lo = std::min(lo, energy / n2);
        hi = std::max(hi, energy / n2);
        ineq = ineq && fa.A * n2 * (1.0 - 1e-9) <= energy && energy <= fa.B * n2 * (1.0 + 1e-9);
    }

    Json c0 = nullptr;
    if (s.U_radius <= largest_ball_radius(g)) c0 = separation_constant(g, fr.points(), ball(g, s.U_radius));

    Json spectrum = Json::array();
    for (Eigen::Index i = 0; i < fa.spectrum.size(); ++i) spectrum.push_back(fa.spectrum[i]);

    r.certificates = {{"rep", fr.rep().describe()},
                      {"dim", fr.dim()},
                      {"size", fr.size()},
                      {"A", fa.A},
                      {"B", fa.B},
                      {"tight", fa.bounds().tight()},
                      {"spectrum", std::move(spectrum)},
                      {"U_radius", s.U_radius},
                      {"C0", c0},
                      {"dual", {{"label", dual.label}, {"canonical", dual.canonical}, {"max_error", dc.max_error}, {"ok", dc.ok}}},
                      {"bessel",
                       {{"empirical_B_dual", bc.empirical_B_dual}, {"bound", bc.bound}, {"asserted", bc.asserted}, {"ok", bc.ok}}},
                      {"frame_inequality", {{"trials", s.trials}, {"min_ratio", lo}, {"max_ratio", hi}, {"ok", ineq}}}};
    if (opt.include_dual_vectors) {
        Json vs = Json::array();
        for (Eigen::Index j = 0; j < dual.vectors.cols(); ++j) {
            Json v = Json::array();
            for (Eigen::Index i = 0; i < dual.vectors.rows(); ++i) v.push_back(complex_json(dual.vectors(i, j)));
            vs.push_back(std::move(v));
        }
        r.certificates["dual_vectors"] = std::move(vs);
    }
    r.checks["frame_inequality"] = ineq;
    r.checks["dual_reconstruction"] = dc.ok;
    r.checks["bessel_bound"] = bc.ok;
    for (const auto& kv : r.checks) tally(r.summary, false, kv.second);
}

inline Json hap_json(const HapCertificate& c, const GroupModel& g, bool with_table) {
    Json j = {{"chosen_L_radius", c.chosen_L_radius},
              {"worst_error", c.worst_error},
              {"epsilon", c.epsilon},
              {"theoretical_bound", c.theoretical_bound},
              {"tail_convention", "squared"},
              {"K_radii", c.K_radii},
              {"L_radii", c.L_radii},
              {"worst_per_L", c.worst_per_L},
              {"bound_per_L", c.bound_per_L},
              {"dual", c.dual_label},
              {"A", c.A},
              {"bessel_constant", c.bessel_constant},
              {"C0", c.C0},
              {"U_radius", c.U_radius},
              {"cells_per_L", c.cells_per_L},
              {"boundary_cells", c.boundary_cells},
              {"passed", c.passed},
              {"dominated", c.dominated},
              {"monotone", c.monotone}};
    if (with_table) {
        Json table = Json::array();
        for (const auto& cell : c.table)
            table.push_back({{"y", coords_json(g, cell.y)},
                             {"K_radius", cell.K_radius},
                             {"L_radius", cell.L_radius},
                             {"error", cell.error},
                             {"boundary", cell.boundary}});
        j["table"] = std::move(table);
    }
    return j;
}

inline void run_hap(const Scenario& s, RunReport& r) {
    const FrameSystem& fr = *s.frame;
    const FrameAnalysis fa = analyze_frame(fr);
    HapScenario hs{fr, make_dual(s, fr, fa), *s.f, s.epsilon, s.U_radius, s.K_radii, s.L_radii, s.y_sample};
    const HapCertificate c = find_L(hs);
    r.certificates = hap_json(c, fr.group(), true);
    r.checks["certified"] = c.passed;
    r.checks["dominated"] = c.dominated;
    r.checks["monotone"] = c.monotone;
    for (const auto& cell : c.cells_for(c.chosen_L_index))
        tally(r.summary, cell.boundary, cell.error < c.epsilon && cell.error <= c.theoretical_bound + 1e-9);
}

inline void run_comparison_scenario(const Scenario& s, RunReport& r) {
    const FrameSystem& fr = *s.frame;
    const FrameAnalysis fa = analyze_frame(fr);
    ComparisonScenario cs{fr, make_dual(s, fr, fa), *s.reference, s.epsilon, s.U_radius,
                          s.K_radii, s.L_radii, s.y_sample};
    const ComparisonRun run = run_comparison(cs);
    const GroupModel& g = fr.group();
    Json certs = Json::array();
    bool identity = true, lower = true, mass = true, star = true, chain = true, fin = true;
    for (const auto& c : run.certificates) {
        certs.push_back({{"y", coords_json(g, c.y)},
                         {"K_radius", c.K_radius},
                         {"L_radius", c.L_radius},
                         {"epsilon", c.epsilon},
                         {"trace_T", c.trace_T},
                         {"rank_P", c.rank_P},
                         {"card_X", c.card_X},
                         {"card_Y", c.card_Y},
                         {"h_norm_sq", c.h_norm_sq},
                         {"sum_T", c.sum_T},
                         {"sum_P", c.sum_P},
                         {"trace_lower", c.trace_lower},
                         {"star", c.star},
                         {"star_bound", c.star_bound},
                         {"lhs", c.lhs},
                         {"B_used", c.B_used},
                         {"B_provenance", c.B_provenance},
                         {"B_alternative", c.B_alternative},
                         {"lhs_alternative", c.lhs_alternative},
                         {"alternative_holds", c.alternative_holds},
                         {"identity_ok", c.identity_ok},
                         {"trace_lower_ok", c.trace_lower_ok},
                         {"mass_ok", c.mass_ok},
                         {"star_ok", c.star_ok},
                         {"chain_ok", c.chain_ok},
                         {"final_ok", c.final_ok}});
        identity = identity && c.identity_ok;
        lower = lower && c.trace_lower_ok;
        mass = mass && c.mass_ok;
        star = star && c.star_ok;
        chain = chain && c.chain_ok;
        fin = fin && c.final_ok;
        tally(r.summary, false, c.all_ok());
    }
    r.certificates = {{"hap", hap_json(run.hap, g, false)},
                      {"given_bounds", {{"A", run.given_bounds.A}, {"B", run.given_bounds.B}}},
                      {"reference_bounds", {{"A", run.reference_bounds.A}, {"B", run.reference_bounds.B}}},
                      {"h_norm", run.h_norm},
                      {"certificates", std::move(certs)}};
    r.checks["identity"] = identity;
    r.checks["trace_lower"] = lower;
    r.checks["mass"] = mass;
    r.checks["star_term"] = star;
    r.checks["chain"] = chain;
    r.checks["final"] = fin;
}

inline void run_density(const Scenario& s, RunReport& r) {
    const GroupModel& g = *s.group;
    const DensityReport d = density_report(g, *s.points, s.K_radii, s.y_sample);
    Json rows = Json::array();
    for (const auto& row : d.rows) {
        rows.push_back({{"y", coords_json(g, row.y)},
                        {"K_radius", row.K_radius},
                        {"count", row.count},
                        {"measure", row.measure},
                        {"ratio", row.ratio},
                        {"boundary", row.boundary}});
        tally(r.summary, row.boundary, true);
    }
    Json summary = Json::array();
    for (const auto& sm : d.summary)
        summary.push_back({{"K_radius", sm.K_radius}, {"min_ratio", sm.min_ratio}, {"max_ratio", sm.max_ratio}});
    r.certificates = {{"group", g.describe()}, {"rows", std::move(rows)}, {"summary", std::move(summary)}};
}

}  // namespace detail

inline RunReport run_scenario(const Scenario& s, const RunOptions& opt = {}) {
    RunReport r;
    r.scenario_id = s.id;
    r.kind = kind_name(s.kind);
    r.timestamp = utc_timestamp();
    try {
        switch (s.kind) {
            case ScenarioKind::sampling_bound: detail::run_sampling(s, r); break;
            case ScenarioKind::frame_analysis: detail::run_frame_analysis(s, r, opt); break;
            case ScenarioKind::hap: detail::run_hap(s, r); break;
            case ScenarioKind::comparison: detail::run_comparison_scenario(s, r); break;
            case ScenarioKind::density: detail::run_density(s, r); break;
        }
    } catch (const std::exception& e) {
        r.checks.clear();
        r.certificates = Json::object();
        r.summary = {};
        r.error = ReportError{error_type(e), e.what()};
    }
    round_floats(r.certificates);
    r.ok = !r.error && r.summary.fail_total == 0 &&
           std::all_of(r.checks.begin(), r.checks.end(), [](const auto& kv) { return kv.second; });
    return r;
}

/// Runs every scenario on up to `parallelism` threads. The result is ordered by
/// scenario id whatever the thread count.
inline std::vector<RunReport> run(const std::vector<Scenario>& scenarios, unsigned parallelism = 1,
                                  const RunOptions& opt = {}) {
    std::vector<RunReport> out(scenarios.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < scenarios.size();) out[i] = run_scenario(scenarios[i], opt);
    };
    const std::size_t threads = std::min<std::size_t>(std::max(1u, parallelism), scenarios.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    std::sort(out.begin(), out.end(),
              [](const RunReport& a, const RunReport& b) { return a.scenario_id < b.scenario_id; });
    return out;
}

}  // namespace coherent
