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

#pragma once

// Comparison of a given coherent frame E_g = {pi(x_j) g} against a reference
// frame E_h = {pi(y_k) h} of the same representation. With
//
//     P = projector onto span{h_j : x_j in yKL}   (dual of E_g)
//     Q = projector onto span{pi(y_k) h : y_k in yK}
//     T = QPQ,
//
// the certificate verifies  tr T <= rank P <= card{x_j in yKL}  from above and
//     tr T >= B^{-1} sum_{y_k in yK} <T pi(y_k)h, pi(y_k)h>
//          >= ||h||^2 B^{-1} (1 - eps) card{y_k in yK}
// from below, with B the upper frame bound of the reference frame.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coherent/frame_core.hpp"
#include "coherent/group_model.hpp"
#include "coherent/hap_verifier.hpp"

namespace coherent {

namespace detail {
inline bool le_rel(double a, double b, double rel) {
    return a <= b + rel * std::max({1.0, std::abs(a), std::abs(b)});
}
}  // namespace detail

struct TraceCheck {
    double sum = 0.0;    // sum_k <T v_k, v_k>
    double trace = 0.0;  // spectral
    double lower = 0.0;  // sum / B
    double upper = 0.0;  // sum / A
    bool ok = false;
};

/// (1/B) sum_k <T v_k, v_k> <= tr T <= (1/A) sum_k <T v_k, v_k> for a positive
/// T and a frame {v_k} with bounds A, B.
inline TraceCheck trace_bounds_check(const Matrix& t, const Matrix& vectors, double A, double B) {
    if (t.rows() != t.cols() || t.rows() != vectors.rows())
        throw DimensionMismatch("operator and frame vectors do not match");
    const Matrix herm = (t + t.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().size() > 0 && eig.eigenvalues().minCoeff() < -1e-10)
        throw NotPositive("operator has eigenvalue " + std::to_string(eig.eigenvalues().minCoeff()));
    TraceCheck c;
    c.trace = eig.eigenvalues().sum();
    c.sum = (vectors.adjoint() * herm * vectors).diagonal().real().sum();
    c.lower = c.sum / B;
    c.upper = c.sum / A;
    c.ok = detail::le_rel(c.lower, c.trace, 1e-9) && detail::le_rel(c.trace, c.upper, 1e-9);
    return c;
}

/// T = QPQ, a positive contraction supported on range(Q).
inline Matrix qpq_operator(const SpanProjector& p, const SpanProjector& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("projectors act on different spaces");
    const Matrix qm = q.matrix();
    const Matrix t = qm * p.matrix() * qm;
    return (t + t.adjoint()) * 0.5;
}

/// card{j : x_j in S}, with multiplicity.
inline std::size_t cardinality_count(const PointSet& x, const CompactSet& s) {
    std::size_t n = 0;
    for (ElementId p : x.points)
        if (s.contains(p)) ++n;
    return n;
}

struct ComparisonScenario {
    FrameSystem given;
    DualFrame given_dual;
    FrameSystem reference;
    double epsilon = 0.5;
    long U_radius = 1;
    std::vector<long> K_radii;
    std::vector<long> L_radii;
    std::vector<ElementId> y_sample;  // empty: the whole carrier
};

struct ComparisonCertificate {
    ElementId y = 0;
    long K_radius = 0;
    long L_radius = 0;
    double epsilon = 0.0;
    double trace_T = 0.0;
    std::size_t rank_P = 0;
    std::size_t card_X = 0;  // card{x_j in yKL}
    std::size_t card_Y = 0;  // card{y_k in yK}
    double h_norm_sq = 0.0;
    double sum_T = 0.0;        // sum_{y_k in yK} <T pi(y_k)h, pi(y_k)h>
    double sum_P = 0.0;        // same with P in place of T
    double trace_lower = 0.0;  // sum_T / B_used
    double star = 0.0;         // (sum_P - ||h||^2 card_Y) / B_used, signed
    double star_bound = 0.0;   // eps ||h||^2 card_Y / B_used
    double lhs = 0.0;          // ||h||^2 B_used^{-1} (1 - eps) card_Y
    double B_used = 0.0;
    std::string B_provenance = "upper bound of reference frame";
    double B_alternative = 0.0;  // upper bound of the dual of E_g
    double lhs_alternative = 0.0;
    bool alternative_holds = false;  // reported only
    bool identity_ok = false;        // sum_T == sum_P
    bool trace_lower_ok = false;     // trace_T >= trace_lower
    bool mass_ok = false;            // sum_T >= (1 - eps) ||h||^2 card_Y
    bool star_ok = false;
    bool chain_ok = false;  // trace_T <= rank_P <= card_X
    bool final_ok = false;  // lhs <= card_X

    bool all_ok() const { return identity_ok && trace_lower_ok && mass_ok && star_ok && chain_ok && final_ok; }
};

struct ComparisonRun {
    HapCertificate hap;
    FrameBounds given_bounds;
    FrameBounds reference_bounds;
    double h_norm = 0.0;
    std::vector<ComparisonCertificate> certificates;
    bool all_ok = true;
};

/// Everything shared by the certificates of one scenario.
class ComparisonContext {
public:
    ComparisonContext(const ComparisonScenario& sc, FrameBounds given, FrameBounds reference, double dual_upper)
        : sc_(sc), given_(given), reference_(reference), dual_upper_(dual_upper),
          eval_(sc.given, sc.given_dual.vectors) {}

    ComparisonCertificate certify(ElementId y, const LabeledSet& k, const LabeledSet& l) {
        const GroupModel& g = sc_.given.group();
        const FrameSystem& ref = sc_.reference;
        ComparisonCertificate c;
        c.y = y;
        c.K_radius = k.radius;
        c.L_radius = l.radius;
        c.epsilon = sc_.epsilon;

        const CompactSet ykl = translate_set(g, y, product_set(g, k.set, l.set));
        const CompactSet yk = translate_set(g, y, k.set);
        const SpanProjector& p = eval_.projector(ykl);
        const std::vector<std::size_t> in_yk = detail::indices_in(ref.points(), yk);
        const Matrix ref_local = detail::select_columns(ref.atoms(), in_yk);
        const SpanProjector q(ref_local, static_cast<Eigen::Index>(ref.dim()));
        const Matrix t = qpq_operator(p, q);

        Eigen::SelfAdjointEigenSolver<Matrix> eig(t, Eigen::EigenvaluesOnly);
        c.trace_T = eig.eigenvalues().sum();
        c.rank_P = p.rank();
        c.card_X = cardinality_count(sc_.given.points(), ykl);
        c.card_Y = in_yk.size();
        c.h_norm_sq = ref.window().squaredNorm();

        const Matrix pm = p.matrix();
        c.sum_T = (ref_local.adjoint() * t * ref_local).diagonal().real().sum();
        c.sum_P = (ref_local.adjoint() * pm * ref_local).diagonal().real().sum();

        c.B_used = reference_.B;
        const double card_y = static_cast<double>(c.card_Y);
        c.trace_lower = c.sum_T / c.B_used;
        c.star = (c.sum_P - c.h_norm_sq * card_y) / c.B_used;
        c.star_bound = sc_.epsilon * c.h_norm_sq * card_y / c.B_used;
        c.lhs = c.h_norm_sq / c.B_used * (1.0 - sc_.epsilon) * card_y;

        c.B_alternative = dual_upper_;
        c.lhs_alternative = c.h_norm_sq / c.B_alternative * (1.0 - sc_.epsilon) * card_y;
        c.alternative_holds = c.lhs_alternative <= static_cast<double>(c.card_X) + 1e-9;

        c.identity_ok = std::abs(c.sum_T - c.sum_P) <= 1e-10 * std::max(1.0, std::abs(c.sum_P));
        c.trace_lower_ok = c.trace_T >= c.trace_lower - 1e-9;
        c.mass_ok = c.sum_T >= (1.0 - sc_.epsilon) * c.h_norm_sq * card_y - 1e-9;
        c.star_ok = std::abs(c.star) <= c.star_bound + 1e-9;
        c.chain_ok = c.trace_T <= static_cast<double>(c.rank_P) + 1e-9 && c.rank_P <= c.card_X;
        c.final_ok = c.lhs <= static_cast<double>(c.card_X) + 1e-9;
        return c;
    }

private:
    const ComparisonScenario& sc_;
    FrameBounds given_;
    FrameBounds reference_;
    double dual_upper_;
    HapEvaluator eval_;
};

/// Chooses L through the HAP of the reference window h at level eps ||h||,
/// then certifies every (y, K) cell with that single L.
inline ComparisonRun run_comparison(const ComparisonScenario& sc) {
    if (!(sc.epsilon > 0.0 && sc.epsilon < 1.0)) throw ValidationError("epsilon", "must lie in (0, 1)");
    if (!(sc.given.rep() == sc.reference.rep()))
        throw ValidationError("reference", "both frames must come from the same representation");
    ComparisonRun run;
    const FrameAnalysis fa_g = analyze_frame(sc.given);
    const FrameAnalysis fa_h = analyze_frame(sc.reference);
    run.given_bounds = fa_g.bounds();
    run.reference_bounds = fa_h.bounds();
    run.h_norm = sc.reference.window().norm();

    HapScenario hs{sc.given, sc.given_dual, sc.reference.window(), sc.epsilon * run.h_norm,
                   sc.U_radius, sc.K_radii, sc.L_radii, sc.y_sample};
    try {
        run.hap = find_L(hs);
    } catch (const NoAdmissibleL& e) {
        throw HapPreconditionUnmet(std::string("HAP precondition for the reference window: ") + e.what());
    }

    const double dual_upper = bessel_bound_check(sc.given_dual.vectors, fa_g.A, sc.given_dual.canonical).empirical_B_dual;
    ComparisonContext ctx(sc, run.given_bounds, run.reference_bounds, dual_upper);
    const GroupModel& g = sc.given.group();
    const LabeledSet l{run.hap.chosen_L_radius, ball(g, run.hap.chosen_L_radius)};
    std::vector<ElementId> ys = sc.y_sample;
    if (ys.empty()) ys = full_point_set(g).points;
    for (const auto& k : ball_family(g, sc.K_radii))
        for (ElementId y : ys) {
            run.certificates.push_back(ctx.certify(y, k, l));
            run.all_ok = run.all_ok && run.certificates.back().all_ok();
        }
    return run;
}

struct DensityRow {
    ElementId y = 0;
    long K_radius = 0;
    std::size_t count = 0;
    double measure = 0.0;
    double ratio = 0.0;
    bool boundary = false;
};

struct DensitySummary {
    long K_radius = 0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

struct DensityReport {
    std::vector<DensityRow> rows;
    std::vector<DensitySummary> summary;
};

/// card{x_j in yK} / |yK| over the sample, with min/max over y per K.
/// Rows whose window leaves a truncated carrier are flagged and left out of
/// the summary.
inline DensityReport density_report(const GroupModel& g, const PointSet& x, const std::vector<long>& K_radii,
                                    std::vector<ElementId> y_sample) {
    if (y_sample.empty()) y_sample = full_point_set(g).points;
    DensityReport rep;
    for (const auto& k : ball_family(g, K_radii)) {
        DensitySummary s{k.radius, std::numeric_limits<double>::infinity(), 0.0};
        bool any = false;
        for (ElementId y : y_sample) {
            bool escaped = false;
            const CompactSet yk = translate_set_clipped(g, y, k.set, &escaped);
            DensityRow r{y, k.radius, cardinality_count(x, yk), measure(g, yk), 0.0, escaped};
            r.ratio = r.measure > 0.0 ? static_cast<double>(r.count) / r.measure : 0.0;
            if (!escaped) {
                any = true;
                s.min_ratio = std::min(s.min_ratio, r.ratio);
                s.max_ratio = std::max(s.max_ratio, r.ratio);
            }
            rep.rows.push_back(r);
        }
        if (!any) s.min_ratio = 0.0;
        rep.summary.push_back(s);
    }
    return rep;
}

}  // namespace coherent
