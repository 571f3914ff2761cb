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

// Finite-dimensional Hilbert space C^d together with the shipped unitary
// (possibly projective) representations. Every shipped pi(x) is a monomial
// matrix, so operators are stored as a permutation plus per-entry phases.
//
// Inner product convention: <f, g> = sum_i f_i conj(g_i), linear in f.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coherent/errors.hpp"
#include "coherent/group_model.hpp"

namespace coherent {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline Complex inner(const Vector& f, const Vector& g) {
    if (f.size() != g.size()) throw DimensionMismatch("inner product of vectors of different size");
    return g.dot(f);  // Eigen conjugates the left operand
}

/// (op v)[target[s]] = phase[s] * v[s]
struct MonomialOperator {
    std::vector<std::size_t> target;
    std::vector<Complex> phase;

    Vector apply(const Vector& v) const {
        Vector out = Vector::Zero(v.size());
        for (std::size_t s = 0; s < target.size(); ++s)
            out[static_cast<Eigen::Index>(target[s])] = phase[s] * v[static_cast<Eigen::Index>(s)];
        return out;
    }

    Vector apply_adjoint(const Vector& v) const {
        Vector out = Vector::Zero(v.size());
        for (std::size_t s = 0; s < target.size(); ++s)
            out[static_cast<Eigen::Index>(s)] =
                std::conj(phase[s]) * v[static_cast<Eigen::Index>(target[s])];
        return out;
    }

    Matrix matrix() const {
        const auto d = static_cast<Eigen::Index>(target.size());
        Matrix m = Matrix::Zero(d, d);
        for (std::size_t s = 0; s < target.size(); ++s)
            m(static_cast<Eigen::Index>(target[s]), static_cast<Eigen::Index>(s)) = phase[s];
        return m;
    }
};

enum class RepKind { translation, gabor, tensor };

/// One tensor factor acting on C^n. Translation consumes one group
/// coordinate k (f -> f(. - k)); Gabor consumes two, (k, l) -> M_l T_k.
struct RepFactor {
    enum class Type { translation, gabor } type;
    long n;

    std::size_t coordinates() const noexcept { return type == Type::translation ? 1 : 2; }
};

class Representation {
public:
    /// Translations on Z_n acting on C^n.
    static Representation translation(long n) {
        return Representation(GroupModel::cyclic({n}), {{RepFactor::Type::translation, n}});
    }

    /// Time-frequency shifts pi(k, l) = M_l T_k of Z_n x Z_n on C^n. Projective:
    /// pi(x) pi(y) agrees with pi(xy) up to a unimodular factor.
    static Representation gabor(long n) {
        return Representation(GroupModel::cyclic({n, n}), {{RepFactor::Type::gabor, n}});
    }

    static Representation tensor(const Representation& a, const Representation& b) {
        if (a.group().kind() != GroupKind::cyclic || b.group().kind() != GroupKind::cyclic)
            throw ValidationError("rep", "tensor products are built from cyclic factors");
        std::vector<long> moduli = a.group().extents();
        moduli.insert(moduli.end(), b.group().extents().begin(), b.group().extents().end());
        std::vector<RepFactor> factors = a.factors_;
        factors.insert(factors.end(), b.factors_.begin(), b.factors_.end());
        return Representation(GroupModel::cyclic(std::move(moduli)), std::move(factors));
    }

    /// Factors acting through coordinates reduced mod n, over an arbitrary
    /// group with matching rank. Over a truncated box of Z^k this is a genuine
    /// unitary representation of Z^k restricted to the box.
    static Representation over(GroupModel group, std::vector<RepFactor> factors) {
        return Representation(std::move(group), std::move(factors));
    }

    const GroupModel& group() const noexcept { return group_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<RepFactor>& factors() const noexcept { return factors_; }

    RepKind kind() const noexcept {
        if (factors_.size() > 1) return RepKind::tensor;
        return factors_[0].type == RepFactor::Type::gabor ? RepKind::gabor : RepKind::translation;
    }

    MonomialOperator op(ElementId x) const {
        const Coords& c = group_.coords(x);
        MonomialOperator m;
        m.target.assign(dim_, 0);
        m.phase.assign(dim_, Complex(1.0, 0.0));
        std::size_t coord = 0;
        std::size_t stride = dim_;
        for (const auto& f : factors_) {
            stride /= static_cast<std::size_t>(f.n);
            const long shift = mod(c[coord], f.n);
            const long freq = f.type == RepFactor::Type::gabor ? mod(c[coord + 1], f.n) : 0;
            coord += f.coordinates();
            for (std::size_t s = 0; s < dim_; ++s) {
                const long local = static_cast<long>((s / stride) % static_cast<std::size_t>(f.n));
                const long moved = (local + shift) % f.n;
                m.target[s] += static_cast<std::size_t>(moved) * stride;
                if (freq != 0) m.phase[s] *= root_of_unity(freq * moved, f.n);
            }
        }
        return m;
    }

    Vector apply(ElementId x, const Vector& v) const {
        check_dim(v);
        return op(x).apply(v);
    }

    Vector apply_adjoint(ElementId x, const Vector& v) const {
        check_dim(v);
        return op(x).apply_adjoint(v);
    }

    std::string describe() const {
        std::string s;
        for (const auto& f : factors_) {
            if (!s.empty()) s += " (x) ";
            s += (f.type == RepFactor::Type::gabor ? "gabor(" : "translation(") + std::to_string(f.n) + ")";
        }
        return s + " over " + group_.describe();
    }

    bool operator==(const Representation& o) const {
        if (!(group_ == o.group_) || factors_.size() != o.factors_.size()) return false;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            if (factors_[i].type != o.factors_[i].type || factors_[i].n != o.factors_[i].n) return false;
        return true;
    }

    void check_dim(const Vector& v) const {
        if (static_cast<std::size_t>(v.size()) != dim_)
            throw DimensionMismatch("vector of dimension " + std::to_string(v.size()) +
                                    " for a representation on C^" + std::to_string(dim_));
    }

private:
    Representation(GroupModel group, std::vector<RepFactor> factors)
        : group_(std::move(group)), factors_(std::move(factors)) {
        if (factors_.empty()) throw ValidationError("rep", "no factors");
        std::size_t coords = 0;
        dim_ = 1;
        for (const auto& f : factors_) {
            if (f.n < 1) throw ValidationError("rep.n", "must be positive");
            if (group_.kind() == GroupKind::cyclic) {
                for (std::size_t i = 0; i < f.coordinates(); ++i)
                    if (coords + i >= group_.rank() || group_.extents()[coords + i] != f.n)
                        throw ValidationError("group", "cyclic moduli must match the representation");
            }
            coords += f.coordinates();
            dim_ *= static_cast<std::size_t>(f.n);
        }
        if (coords != group_.rank())
            throw ValidationError("group", "group rank does not match the representation");
    }

    static long mod(long v, long n) {
        long r = v % n;
        return r < 0 ? r + n : r;
    }

    static Complex root_of_unity(long m, long n) {
        return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mod(m, n)) /
                                   static_cast<double>(n));
    }

    GroupModel group_;
    std::vector<RepFactor> factors_;
    std::size_t dim_ = 0;
};

/// V_g f(x) = <f, pi(x) g> sampled on the whole carrier.
struct VoiceTransform {
    std::vector<Complex> values;

    std::size_t size() const noexcept { return values.size(); }
    const Complex& operator[](ElementId x) const { return values[x]; }
};

inline VoiceTransform voice_transform(const Representation& rep, const Vector& g, const Vector& f) {
    rep.check_dim(g);
    rep.check_dim(f);
    if (g.norm() == 0.0) throw ZeroWindow("voice transform with a zero window");
    VoiceTransform v;
    v.values.resize(rep.group().size());
    for (ElementId x = 0; x < rep.group().size(); ++x) v.values[x] = inner(f, rep.apply(x, g));
    return v;
}

/// Finitely supported weights on the carrier.
using Kernel = std::vector<std::pair<ElementId, Complex>>;

/// g = sum_x k(x) pi(x) g0 |{x}|, the discrete analogue of pi(k) g0.
inline Vector mollify_window(const Representation& rep, const Vector& g0, const Kernel& kernel) {
    rep.check_dim(g0);
    Vector g = Vector::Zero(g0.size());
    for (const auto& [x, w] : kernel) {
        if (x >= rep.group().size()) throw OutOfCarrier("kernel support outside the carrier");
        g += (w * rep.group().haar_weight(x)) * rep.apply(x, g0);
    }
    if (g.norm() < 1e-12) throw ZeroResult("mollified window vanishes");
    return g;
}

inline Vector dirac(std::size_t dim, std::size_t at) {
    if (at >= dim) throw DimensionMismatch("Dirac position outside C^" + std::to_string(dim));
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(at)] = 1.0;
    return v;
}

/// Constant vector of unit norm.
inline Vector flat(std::size_t dim) {
    return Vector::Constant(static_cast<Eigen::Index>(dim), 1.0 / std::sqrt(static_cast<double>(dim)));
}

/// Unit-norm periodization of t -> exp(-pi t^2 / n) on Z_n.
inline Vector periodized_gaussian(long n) {
    Vector v(n);
    for (long t = 0; t < n; ++t) {
        double s = 0.0;
        for (long m = -4; m <= 4; ++m) {
            const double u = static_cast<double>(t + m * n);
            s += std::exp(-std::numbers::pi * u * u / static_cast<double>(n));
        }
        v[t] = s;
    }
    return v / v.norm();
}

/// Named vectors: "dirac<k>" (bare "dirac" means k = 0), "flat", "gauss".
/// For tensor representations "gauss" is the tensor product of the factor
/// Gaussians.
inline Vector preset_vector(const Representation& rep, const std::string& name) {
    const std::size_t d = rep.dim();
    if (name == "flat") return flat(d);
    if (name == "gauss") {
        Vector v = Vector::Ones(1);
        for (const auto& f : rep.factors()) {
            Vector w = periodized_gaussian(f.n);
            Vector next(v.size() * w.size());
            for (Eigen::Index i = 0; i < v.size(); ++i)
                next.segment(i * w.size(), w.size()) = v[i] * w;
            v = std::move(next);
        }
        return v;
    }
    if (name.rfind("dirac", 0) == 0) {
        const std::string rest = name.substr(5);
        std::size_t k = 0;
        if (!rest.empty()) {
            std::size_t used = 0;
            try {
                k = std::stoul(rest, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != rest.size()) throw ValidationError("vector", "unknown preset " + name);
        }
        return dirac(d, k);
    }
    throw ValidationError("vector", "unknown preset " + name);
}

}  // namespace coherent
