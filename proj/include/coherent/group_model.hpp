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

// Finite groups used as stand-ins for a locally compact group G: products of
// cyclic groups Z_{N1} x ... x Z_{Nk}, and bounded boxes of Z^k. Elements are
// addressed by their index in the carrier; compact sets are sorted index sets.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coherent/errors.hpp"

namespace coherent {

using Coords = std::vector<long>;
using ElementId = std::size_t;

enum class GroupKind { cyclic, truncated };

class GroupModel {
public:
    /// Z_{m1} x ... x Z_{mk} with counting Haar measure.
    static GroupModel cyclic(std::vector<long> moduli) {
        if (moduli.empty()) throw ValidationError("moduli", "at least one modulus required");
        for (long m : moduli)
            if (m < 1) throw ValidationError("moduli", "moduli must be positive");
        Coords lo(moduli.size(), 0);
        return GroupModel(GroupKind::cyclic, std::move(lo), std::move(moduli));
    }

    /// The box [lo_1, hi_1] x ... x [lo_k, hi_k] inside Z^k. Compositions that
    /// leave the box raise OutOfCarrier; nothing wraps around.
    static GroupModel truncated(Coords lo, Coords hi) {
        if (lo.empty() || lo.size() != hi.size())
            throw ValidationError("lo/hi", "bounds must be nonempty and of equal length");
        std::vector<long> extent(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (hi[i] < lo[i]) throw ValidationError("lo/hi", "empty box");
            if (lo[i] > 0 || hi[i] < 0)
                throw ValidationError("lo/hi", "box must contain the identity");
            extent[i] = hi[i] - lo[i] + 1;
        }
        return GroupModel(GroupKind::truncated, std::move(lo), std::move(extent));
    }

    GroupKind kind() const noexcept { return kind_; }
    std::size_t rank() const noexcept { return extent_.size(); }
    std::size_t size() const noexcept { return carrier_.size(); }
    const Coords& coords(ElementId a) const { return carrier_.at(a); }
    const std::vector<long>& extents() const noexcept { return extent_; }
    const Coords& lower() const noexcept { return lo_; }
    Coords upper() const {
        Coords hi(rank());
        for (std::size_t i = 0; i < rank(); ++i) hi[i] = lo_[i] + extent_[i] - 1;
        return hi;
    }

    /// Cyclic kind reduces coordinates modulo the moduli; truncated kind
    /// returns nullopt outside the box.
    std::optional<ElementId> find(const Coords& c) const {
        if (c.size() != rank()) return std::nullopt;
        ElementId idx = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            long v = c[i];
            if (kind_ == GroupKind::cyclic) {
                v %= extent_[i];
                if (v < 0) v += extent_[i];
            } else {
                v -= lo_[i];
                if (v < 0 || v >= extent_[i]) return std::nullopt;
            }
            idx += static_cast<ElementId>(v) * stride_[i];
        }
        return idx;
    }

    ElementId at(const Coords& c) const {
        auto idx = find(c);
        if (!idx) throw OutOfCarrier("element " + format(c) + " is outside the carrier");
        return *idx;
    }

    ElementId identity() const noexcept { return identity_; }
    double haar_weight(ElementId a) const { return haar_.at(a); }
    const std::vector<double>& haar_weights() const noexcept { return haar_; }

    /// Replaces the counting measure. Weights must be strictly positive.
    GroupModel with_haar_weights(std::vector<double> weights) const {
        if (weights.size() != size()) throw LengthMismatch("one Haar weight per carrier element");
        for (double w : weights)
            if (!(w > 0.0)) throw ValidationError("haar_weight", "weights must be positive");
        GroupModel g = *this;
        g.haar_ = std::move(weights);
        return g;
    }

    std::optional<ElementId> try_compose(ElementId a, ElementId b) const {
        const Coords& ca = carrier_[a];
        const Coords& cb = carrier_[b];
        ElementId idx = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            long v = ca[i] + cb[i];
            if (kind_ == GroupKind::cyclic) {
                if (v >= extent_[i]) v -= extent_[i];
            } else {
                v -= lo_[i];
                if (v < 0 || v >= extent_[i]) return std::nullopt;
            }
            idx += static_cast<ElementId>(v) * stride_[i];
        }
        return idx;
    }

    ElementId compose(ElementId a, ElementId b) const {
        auto r = try_compose(a, b);
        if (!r)
            throw OutOfCarrier(format(carrier_[a]) + " * " + format(carrier_[b]) +
                               " leaves the carrier");
        return *r;
    }

    std::optional<ElementId> try_inverse(ElementId a) const {
        Coords c = carrier_.at(a);
        for (auto& v : c) v = -v;
        return find(c);
    }

    ElementId inverse(ElementId a) const {
        auto r = try_inverse(a);
        if (!r) throw OutOfCarrier("inverse of " + format(carrier_[a]) + " leaves the carrier");
        return *r;
    }

    /// Max metric to the identity; cyclic coordinates use min(d, N - d).
    long norm(ElementId a) const {
        long best = 0;
        const Coords& c = carrier_[a];
        for (std::size_t i = 0; i < rank(); ++i) best = std::max(best, coordinate_length(i, c[i]));
        return best;
    }

    /// Left-invariant distance d(a, b) = norm(a^{-1} b).
    long distance(ElementId a, ElementId b) const {
        long best = 0;
        const Coords& ca = carrier_[a];
        const Coords& cb = carrier_[b];
        for (std::size_t i = 0; i < rank(); ++i)
            best = std::max(best, coordinate_length(i, cb[i] - ca[i]));
        return best;
    }

    long diameter() const {
        long d = 0;
        for (std::size_t i = 0; i < rank(); ++i)
            d = std::max(d, kind_ == GroupKind::cyclic ? extent_[i] / 2 : extent_[i] - 1);
        return d;
    }

    std::string format(ElementId a) const { return format(carrier_.at(a)); }

    static std::string format(const Coords& c) {
        if (c.size() == 1) return std::to_string(c[0]);
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
        os << ')';
        return os.str();
    }

    std::string describe() const {
        std::ostringstream os;
        if (kind_ == GroupKind::cyclic) {
            for (std::size_t i = 0; i < rank(); ++i) os << (i ? "x" : "") << "Z_" << extent_[i];
        } else {
            os << "Z^" << rank() << " box " << format(lo_) << ".." << format(upper());
        }
        return os.str();
    }

    bool operator==(const GroupModel& o) const {
        return kind_ == o.kind_ && lo_ == o.lo_ && extent_ == o.extent_ && haar_ == o.haar_;
    }

private:
    GroupModel(GroupKind kind, Coords lo, std::vector<long> extent)
        : kind_(kind), lo_(std::move(lo)), extent_(std::move(extent)) {
        const std::size_t k = extent_.size();
        stride_.assign(k, 1);
        for (std::size_t i = k - 1; i > 0; --i)
            stride_[i - 1] = stride_[i] * static_cast<std::size_t>(extent_[i]);
        const std::size_t n = stride_[0] * static_cast<std::size_t>(extent_[0]);
        carrier_.reserve(n);
        for (std::size_t idx = 0; idx < n; ++idx) {
            Coords c(k);
            std::size_t rem = idx;
            for (std::size_t i = 0; i < k; ++i) {
                c[i] = lo_[i] + static_cast<long>(rem / stride_[i]);
                rem %= stride_[i];
            }
            carrier_.push_back(std::move(c));
        }
        haar_.assign(n, 1.0);
        identity_ = *find(Coords(k, 0));
    }

    long coordinate_length(std::size_t i, long v) const {
        if (kind_ == GroupKind::cyclic) {
            long m = v % extent_[i];
            if (m < 0) m += extent_[i];
            return std::min(m, extent_[i] - m);
        }
        return std::labs(v);
    }

    GroupKind kind_;
    Coords lo_;
    std::vector<long> extent_;
    std::vector<std::size_t> stride_;
    std::vector<Coords> carrier_;
    std::vector<double> haar_;
    ElementId identity_ = 0;
};

/// A finite subset of the carrier, stored sorted and deduplicated.
class CompactSet {
public:
    CompactSet() = default;
    explicit CompactSet(std::vector<ElementId> members) : members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    bool contains(ElementId a) const {
        return std::binary_search(members_.begin(), members_.end(), a);
    }
    bool empty() const noexcept { return members_.empty(); }
    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<ElementId>& members() const noexcept { return members_; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool subset_of(const CompactSet& o) const {
        return std::includes(o.members_.begin(), o.members_.end(), members_.begin(), members_.end());
    }

    bool operator==(const CompactSet&) const = default;

private:
    std::vector<ElementId> members_;
};

/// Indexed list x_j; repeated points are allowed and counted separately.
struct PointSet {
    std::vector<ElementId> points;

    std::size_t size() const noexcept { return points.size(); }
    ElementId operator[](std::size_t j) const { return points[j]; }
};

inline PointSet full_point_set(const GroupModel& g) {
    PointSet x;
    x.points.resize(g.size());
    std::iota(x.points.begin(), x.points.end(), ElementId{0});
    return x;
}

/// Points whose i-th coordinate is divisible by steps[i].
inline PointSet lattice_point_set(const GroupModel& g, const std::vector<long>& steps) {
    if (steps.size() != g.rank()) throw ValidationError("steps", "one step per coordinate");
    PointSet x;
    for (ElementId a = 0; a < g.size(); ++a) {
        const Coords& c = g.coords(a);
        bool keep = true;
        for (std::size_t i = 0; i < c.size() && keep; ++i) {
            if (steps[i] < 1) throw ValidationError("steps", "steps must be positive");
            keep = c[i] % steps[i] == 0;
        }
        if (keep) x.points.push_back(a);
    }
    return x;
}

inline CompactSet whole(const GroupModel& g) {
    return CompactSet(full_point_set(g).points);
}

/// U = {x : norm(x) <= radius}. On the truncated kind the whole metric ball
/// must fit into the box.
inline CompactSet ball(const GroupModel& g, long radius) {
    if (radius < 0) throw ValidationError("radius", "must be nonnegative");
    if (g.kind() == GroupKind::truncated) {
        for (std::size_t i = 0; i < g.rank(); ++i)
            if (g.lower()[i] > -radius || g.upper()[i] < radius)
                throw OutOfCarrier("ball of radius " + std::to_string(radius) +
                                   " does not fit into " + g.describe());
    }
    std::vector<ElementId> m;
    for (ElementId a = 0; a < g.size(); ++a)
        if (g.norm(a) <= radius) m.push_back(a);
    return CompactSet(std::move(m));
}

inline CompactSet inverse_set(const GroupModel& g, const CompactSet& k) {
    std::vector<ElementId> m;
    m.reserve(k.size());
    for (ElementId a : k) m.push_back(g.inverse(a));
    return CompactSet(std::move(m));
}

inline bool is_symmetric(const GroupModel& g, const CompactSet& u) {
    for (ElementId a : u) {
        auto inv = g.try_inverse(a);
        if (!inv || !u.contains(*inv)) return false;
    }
    return true;
}

inline void require_neighborhood(const GroupModel& g, const CompactSet& u) {
    if (!u.contains(g.identity()) || !is_symmetric(g, u))
        throw NonSymmetricNeighborhood("neighborhood must contain e and satisfy U = U^-1");
}

/// KL = {k l : k in K, l in L}.
inline CompactSet product_set(const GroupModel& g, const CompactSet& k, const CompactSet& l) {
    std::vector<char> hit(g.size(), 0);
    for (ElementId a : k)
        for (ElementId b : l) hit[g.compose(a, b)] = 1;
    std::vector<ElementId> m;
    for (ElementId x = 0; x < g.size(); ++x)
        if (hit[x]) m.push_back(x);
    return CompactSet(std::move(m));
}

inline CompactSet translate_set(const GroupModel& g, ElementId y, const CompactSet& k) {
    std::vector<ElementId> m;
    m.reserve(k.size());
    for (ElementId a : k) m.push_back(g.compose(y, a));
    return CompactSet(std::move(m));
}

/// yK intersected with the carrier, for boundary-tolerant callers.
inline CompactSet translate_set_clipped(const GroupModel& g, ElementId y, const CompactSet& k,
                                        bool* escaped = nullptr) {
    std::vector<ElementId> m;
    bool out = false;
    for (ElementId a : k) {
        if (auto p = g.try_compose(y, a)) m.push_back(*p);
        else out = true;
    }
    if (escaped) *escaped = out;
    return CompactSet(std::move(m));
}

inline CompactSet complement(const GroupModel& g, const CompactSet& k) {
    std::vector<ElementId> m;
    for (ElementId x = 0; x < g.size(); ++x)
        if (!k.contains(x)) m.push_back(x);
    return CompactSet(std::move(m));
}

inline double measure(const GroupModel& g, const CompactSet& k) {
    double s = 0.0;
    for (ElementId a : k) s += g.haar_weight(a);
    return s;
}

/// C0 = max over x of card{j : x_j in xU}.
inline std::size_t separation_constant(const GroupModel& g, const PointSet& x, const CompactSet& u) {
    require_neighborhood(g, u);
    std::vector<std::size_t> multiplicity(g.size(), 0);
    for (ElementId p : x.points) ++multiplicity[p];
    std::size_t best = 0;
    for (ElementId c = 0; c < g.size(); ++c) {
        std::size_t count = 0;
        for (ElementId v : u)
            if (auto q = g.try_compose(c, v)) count += multiplicity[*q];
        best = std::max(best, count);
    }
    return best;
}

/// Same constant through the indicator sum || sum_j chi_{x_j U} ||_inf.
inline std::size_t separation_constant_indicator(const GroupModel& g, const PointSet& x,
                                                 const CompactSet& u) {
    require_neighborhood(g, u);
    std::vector<std::size_t> cover(g.size(), 0);
    for (ElementId p : x.points)
        for (ElementId v : u)
            if (auto q = g.try_compose(p, v)) ++cover[*q];
    return cover.empty() ? 0 : *std::max_element(cover.begin(), cover.end());
}

}  // namespace coherent
