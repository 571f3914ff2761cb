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

// Local maximum function, the W(L^inf, L^2) amalgam norm, tail masses and
// the sampling bound for relatively separated sets. All suprema are exact
// maxima over the finite carrier and all integrals are Haar-weighted sums.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "coherent/group_model.hpp"
#include "coherent/hilbert_rep.hpp"

namespace coherent {

/// A function on the carrier, one complex value per element.
class GroupFunction {
public:
    GroupFunction() = default;
    explicit GroupFunction(std::vector<Complex> values) : values_(std::move(values)) {}
    explicit GroupFunction(const VoiceTransform& v) : values_(v.values) {}

    static GroupFunction from_real(const std::vector<double>& v) {
        return GroupFunction(std::vector<Complex>(v.begin(), v.end()));
    }
    static GroupFunction zero(const GroupModel& g) {
        return GroupFunction(std::vector<Complex>(g.size(), Complex{}));
    }

    std::size_t size() const noexcept { return values_.size(); }
    const Complex& operator[](ElementId x) const { return values_[x]; }
    Complex& operator[](ElementId x) { return values_[x]; }
    double magnitude(ElementId x) const { return std::abs(values_[x]); }
    const std::vector<Complex>& values() const noexcept { return values_; }

private:
    std::vector<Complex> values_;
};

namespace detail {
inline void require_function_on(const GroupModel& g, const GroupFunction& f) {
    if (f.size() != g.size()) throw LengthMismatch("function is not defined on this carrier");
}
}  // namespace detail

/// f#(x) = max_{y in xU} |f(y)|. On a truncated carrier f is extended by zero
/// outside the box.
inline std::vector<double> local_max(const GroupModel& g, const GroupFunction& f, const CompactSet& u) {
    detail::require_function_on(g, f);
    require_neighborhood(g, u);
    std::vector<double> sharp(g.size(), 0.0);
    for (ElementId x = 0; x < g.size(); ++x) {
        double m = 0.0;
        for (ElementId v : u)
            if (auto y = g.try_compose(x, v)) m = std::max(m, f.magnitude(*y));
        sharp[x] = m;
    }
    return sharp;
}

inline double amalgam_norm(const GroupModel& g, const GroupFunction& f, const CompactSet& u) {
    const auto sharp = local_max(g, f, u);
    double s = 0.0;
    for (ElementId x = 0; x < g.size(); ++x) s += sharp[x] * sharp[x] * g.haar_weight(x);
    return std::sqrt(s);
}

/// Integral of (f#)^2 over L^c U, given f# already computed.
inline double tail_mass_of_sharp(const GroupModel& g, const std::vector<double>& sharp,
                                 const CompactSet& u, const CompactSet& l) {
    const CompactSet region = product_set(g, complement(g, l), u);
    double s = 0.0;
    for (ElementId x : region) s += sharp[x] * sharp[x] * g.haar_weight(x);
    return s;
}

/// Integral of (f#)^2 over L^c U. The integrand is squared, the form in which
/// the tail enters the HAP error estimate.
inline double tail_mass(const GroupModel& g, const GroupFunction& f, const CompactSet& u,
                        const CompactSet& l) {
    return tail_mass_of_sharp(g, local_max(g, f, u), u, l);
}

struct SamplingBound {
    double lhs = 0.0;    // sum over x_j outside K of |f(x_j)|^2
    double rhs = 0.0;    // C * integral over K^c U of (f#)^2
    double C = 0.0;      // C0 / |U|
    std::size_t C0 = 0;  // separation constant of X with respect to U
    bool holds = false;
};

/// Checks  sum_{x_j not in K} |f(x_j)|^2 <= (C0/|U|) int_{K^c U} (f#)^2.
/// holds == false would be a counterexample to the sampling lemma.
inline SamplingBound sampling_bound_check(const GroupModel& g, const GroupFunction& f,
                                          const PointSet& x, const CompactSet& k,
                                          const CompactSet& u) {
    detail::require_function_on(g, f);
    SamplingBound r;
    r.C0 = separation_constant(g, x, u);
    r.C = static_cast<double>(r.C0) / measure(g, u);
    for (ElementId p : x.points)
        if (!k.contains(p)) r.lhs += std::norm(f[p]);
    r.rhs = r.C * tail_mass(g, f, u, k);
    r.holds = r.lhs <= r.rhs * (1.0 + 1e-9);
    return r;
}

}  // namespace coherent
