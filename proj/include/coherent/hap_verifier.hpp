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

// Homogeneous approximation property for coherent frames.
//
// For a frame {pi(x_j) g} with dual {h_j}, V(yS) = span{h_j : x_j in yS} and
// P_{KL,y} is the orthogonal projector onto V(yKL). The HAP error of f at a
// cell (y, K) is  max_{x in yK} || pi(x) f - P_{KL,y} pi(x) f ||,  and the
// tail estimate bounding it is
//
//     ( C0/|U| * beta * int_{L^c U} (V_g f)#^2 )^{1/2},
//
// where beta is the Bessel constant of the dual (1/A for the canonical dual).
//
// The best-approximation property used in the estimate is
// ||h - P h|| <= ||h - sum d_j h_j|| for every coefficient sequence d.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coherent/amalgam.hpp"
#include "coherent/frame_core.hpp"
#include "coherent/group_model.hpp"
#include "coherent/hilbert_rep.hpp"

namespace coherent {

struct LabeledSet {
    long radius = 0;
    CompactSet set;
};
using SetFamily = std::vector<LabeledSet>;

inline SetFamily ball_family(const GroupModel& g, const std::vector<long>& radii) {
    SetFamily fam;
    fam.reserve(radii.size());
    for (long r : radii) fam.push_back({r, ball(g, r)});
    return fam;
}

/// Radii 0..diameter.
inline std::vector<long> default_radii(const GroupModel& g) {
    std::vector<long> r(static_cast<std::size_t>(g.diameter() + 1));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<long>(i);
    return r;
}

/// KL restricted to the carrier; *escaped reports products that left it.
inline CompactSet product_set_clipped(const GroupModel& g, const CompactSet& k, const CompactSet& l,
                                      bool* escaped = nullptr) {
    std::vector<char> hit(g.size(), 0);
    bool out = false;
    for (ElementId a : k)
        for (ElementId b : l) {
            if (auto p = g.try_compose(a, b)) hit[*p] = 1;
            else out = true;
        }
    std::vector<ElementId> m;
    for (ElementId x = 0; x < g.size(); ++x)
        if (hit[x]) m.push_back(x);
    if (escaped) *escaped = out;
    return CompactSet(std::move(m));
}

namespace detail {
inline std::vector<std::size_t> indices_in(const PointSet& x, const CompactSet& s) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (s.contains(x[j])) idx.push_back(j);
    return idx;
}

inline Matrix select_columns(const Matrix& m, const std::vector<std::size_t>& idx) {
    Matrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = m.col(static_cast<Eigen::Index>(idx[c]));
    return out;
}
}  // namespace detail

/// Projector onto V(yS) = span{h_j : x_j in yS}. Column j of `duals` is h_j.
inline SpanProjector local_subspace(const GroupModel& g, const Matrix& duals, const PointSet& x, ElementId y,
                                    const CompactSet& s) {
    if (static_cast<std::size_t>(duals.cols()) != x.size())
        throw LengthMismatch("duals must be indexed like the point set");
    const CompactSet ys = translate_set(g, y, s);
    return SpanProjector(detail::select_columns(duals, detail::indices_in(x, ys)), duals.rows());
}

/// max_{x in yK} ||pi(x) f - P_{KL,y} pi(x) f||.
inline double hap_error(const FrameSystem& frame, const Matrix& duals, const Vector& f, ElementId y,
                        const CompactSet& k, const CompactSet& l) {
    if (k.empty() || l.empty()) throw ValidationError("K/L", "HAP sets must be nonempty");
    frame.rep().check_dim(f);
    const GroupModel& g = frame.group();
    const SpanProjector p = local_subspace(g, duals, frame.points(), y, product_set(g, k, l));
    double worst = 0.0;
    for (ElementId x : translate_set(g, y, k)) {
        const Vector v = frame.rep().apply(x, f);
        worst = std::max(worst, (v - p.apply(v)).norm());
    }
    return worst;
}

/// Tail estimate from precomputed ingredients.
inline double theoretical_tail_bound(double bessel_constant, const GroupModel& g, const GroupFunction& voice,
                                     const CompactSet& u, const CompactSet& l, std::size_t c0) {
    const double c = static_cast<double>(c0) / measure(g, u);
    return std::sqrt(std::max(0.0, c * bessel_constant * tail_mass(g, voice, u, l)));
}

/// Tail estimate for the canonical dual: Bessel constant 1/A, C0 of X w.r.t. U.
inline double theoretical_tail_bound(const FrameAnalysis& fa, const FrameSystem& frame, const Vector& f,
                                     const CompactSet& u, const CompactSet& l) {
    const GroupModel& g = frame.group();
    const GroupFunction voice(voice_transform(frame.rep(), frame.window(), f));
    return theoretical_tail_bound(1.0 / fa.A, g, voice, u, l, separation_constant(g, frame.points(), u));
}

/// Shared machinery for evaluating many HAP cells of one frame and dual:
/// caches projectors by the selected dual indices.
class HapEvaluator {
public:
    HapEvaluator(const FrameSystem& frame, const Matrix& duals) : frame_(frame), duals_(duals) {
        if (static_cast<std::size_t>(duals.cols()) != frame.size())
            throw LengthMismatch("duals must be indexed like the frame");
        if (static_cast<std::size_t>(duals.rows()) != frame.dim())
            throw DimensionMismatch("duals live in another space");
        by_point_.resize(frame.group().size());
        for (std::size_t j = 0; j < frame.size(); ++j) by_point_[frame.points()[j]].push_back(j);
    }

    const FrameSystem& frame() const noexcept { return frame_; }

    /// Column x is pi(x) f.
    Matrix orbit(const Vector& f) const {
        frame_.rep().check_dim(f);
        Matrix o(f.size(), static_cast<Eigen::Index>(frame_.group().size()));
        for (ElementId x = 0; x < frame_.group().size(); ++x) o.col(static_cast<Eigen::Index>(x)) = frame_.rep().apply(x, f);
        return o;
    }

    /// Projector onto span{h_j : x_j in s}.
    const SpanProjector& projector(const CompactSet& s) {
        std::vector<std::size_t> idx;
        for (ElementId p : s)
            idx.insert(idx.end(), by_point_[p].begin(), by_point_[p].end());
        std::sort(idx.begin(), idx.end());
        auto it = cache_.find(idx);
        if (it == cache_.end()) {
            SpanProjector p(detail::select_columns(duals_, idx), duals_.rows());
            it = cache_.emplace(std::move(idx), std::move(p)).first;
        }
        return it->second;
    }

    std::size_t count_points(const CompactSet& s) const {
        std::size_t n = 0;
        for (ElementId p : s) n += by_point_[p].size();
        return n;
    }

    /// max over columns xs of the orbit of ||(I - P) v||.
    static double residual_max(const SpanProjector& p, const Matrix& orbit, const CompactSet& xs) {
        if (xs.empty()) return 0.0;
        const Matrix cols = detail::select_columns(orbit, xs.members());
        const Matrix residual = cols - p.apply(cols);
        return residual.colwise().norm().maxCoeff();
    }

private:
    const FrameSystem& frame_;
    const Matrix& duals_;
    std::vector<std::vector<std::size_t>> by_point_;
    std::map<std::vector<std::size_t>, SpanProjector> cache_;
};

struct HapScenario {
    FrameSystem frame;
    DualFrame dual;
    Vector f;
    double epsilon = 0.0;  // absolute threshold on the HAP error
    long U_radius = 1;
    std::vector<long> K_radii;
    std::vector<long> L_radii;
    std::vector<ElementId> y_sample;  // empty: the whole carrier
};

struct HapCell {
    ElementId y = 0;
    long K_radius = 0;
    long L_radius = 0;
    double error = 0.0;
    bool boundary = false;  // yK or yKL left a truncated carrier
};

struct HapCertificate {
    long chosen_L_radius = -1;
    std::size_t chosen_L_index = 0;
    double epsilon = 0.0;
    double worst_error = 0.0;        // over non-boundary cells of the chosen L
    double theoretical_bound = 0.0;  // tail estimate at the chosen L (inf if not computable)
    std::vector<long> K_radii;
    std::vector<long> L_radii;
    std::vector<double> worst_per_L;
    std::vector<double> bound_per_L;
    std::vector<HapCell> table;  // L-major, then K, then y
    std::string dual_label;
    double A = 0.0;
    double bessel_constant = 0.0;
    std::size_t C0 = 0;
    long U_radius = 1;
    std::size_t boundary_cells = 0;  // per L
    std::size_t cells_per_L = 0;
    bool passed = false;
    bool dominated = true;  // every non-boundary cell within the tail estimate
    bool monotone = true;   // errors nonincreasing along the L chain in every cell

    /// Error table of one L candidate.
    std::vector<HapCell> cells_for(std::size_t l_index) const {
        auto first = table.begin() + static_cast<std::ptrdiff_t>(l_index * cells_per_L);
        return {first, first + static_cast<std::ptrdiff_t>(cells_per_L)};
    }
};

/// Scans the L family smallest-first and returns the first L whose HAP error
/// stays below epsilon over every y in the sample and every K in the family.
/// The full table over all candidates is kept.
inline HapCertificate find_L(const HapScenario& sc) {
    if (!(sc.epsilon > 0.0)) throw ValidationError("epsilon", "must be positive");
    if (sc.K_radii.empty()) throw ValidationError("K_radii", "K family must be nonempty");
    if (sc.L_radii.empty()) throw ValidationError("L_radii", "L family must be nonempty");
    for (std::size_t i = 1; i < sc.L_radii.size(); ++i)
        if (sc.L_radii[i] <= sc.L_radii[i - 1]) throw ValidationError("L_radii", "L family must be nested increasing");
    const FrameSystem& frame = sc.frame;
    const GroupModel& g = frame.group();
    frame.rep().check_dim(sc.f);

    const FrameAnalysis fa = analyze_frame(frame);
    HapCertificate cert;
    cert.epsilon = sc.epsilon;
    cert.K_radii = sc.K_radii;
    cert.L_radii = sc.L_radii;
    cert.U_radius = sc.U_radius;
    cert.dual_label = sc.dual.label;
    cert.A = fa.A;
    cert.bessel_constant = sc.dual.canonical
                               ? 1.0 / fa.A
                               : bessel_bound_check(sc.dual.vectors, fa.A, false).empirical_B_dual;

    const CompactSet u = ball(g, sc.U_radius);
    cert.C0 = separation_constant(g, frame.points(), u);
    const GroupFunction voice(voice_transform(frame.rep(), frame.window(), sc.f));

    const SetFamily ks = ball_family(g, sc.K_radii);
    const SetFamily ls = ball_family(g, sc.L_radii);
    std::vector<ElementId> ys = sc.y_sample;
    if (ys.empty()) ys = full_point_set(g).points;

    HapEvaluator eval(frame, sc.dual.vectors);
    const Matrix orbit = eval.orbit(sc.f);
    cert.cells_per_L = ks.size() * ys.size();
    cert.table.reserve(cert.cells_per_L * ls.size());

    bool found = false;
    for (std::size_t li = 0; li < ls.size(); ++li) {
        double bound = std::numeric_limits<double>::infinity();
        try {
            bound = theoretical_tail_bound(cert.bessel_constant, g, voice, u, ls[li].set, cert.C0);
        } catch (const OutOfCarrier&) {
        }
        cert.bound_per_L.push_back(bound);

        double worst = 0.0;
        std::size_t boundary = 0;
        for (const auto& k : ks) {
            bool kl_escaped = false;
            const CompactSet kl = product_set_clipped(g, k.set, ls[li].set, &kl_escaped);
            for (ElementId y : ys) {
                bool esc_k = false, esc_kl = false;
                const CompactSet yk = translate_set_clipped(g, y, k.set, &esc_k);
                const CompactSet ykl = translate_set_clipped(g, y, kl, &esc_kl);
                HapCell cell{y, k.radius, ls[li].radius, 0.0, kl_escaped || esc_k || esc_kl};
                cell.error = HapEvaluator::residual_max(eval.projector(ykl), orbit, yk);
                if (cell.boundary) {
                    ++boundary;
                } else {
                    worst = std::max(worst, cell.error);
                    if (std::isfinite(bound) && cell.error > bound + 1e-9) cert.dominated = false;
                }
                if (li > 0) {
                    const auto& prev = cert.table[cert.table.size() - cert.cells_per_L];
                    if (cell.error > prev.error + 1e-12) cert.monotone = false;
                }
                cert.table.push_back(cell);
            }
        }
        cert.worst_per_L.push_back(worst);
        if (!found && worst < sc.epsilon) {
            found = true;
            cert.chosen_L_index = li;
            cert.chosen_L_radius = ls[li].radius;
            cert.worst_error = worst;
            cert.theoretical_bound = bound;
            cert.boundary_cells = boundary;
        }
    }
    if (!found)
        throw NoAdmissibleL("no L in the family reaches HAP error below " + std::to_string(sc.epsilon) +
                            " (largest candidate: " + std::to_string(cert.worst_per_L.back()) + ")");
    cert.passed = cert.worst_error < sc.epsilon;
    return cert;
}

}  // namespace coherent
