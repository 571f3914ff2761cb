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

// Frame systems {pi(x_j) g}, frame operator and optimal bounds, dual frames,
// and orthogonal projectors onto spans of arbitrary generator lists.
//
// Vector systems are passed around as matrices whose columns are the vectors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "coherent/errors.hpp"
#include "coherent/group_model.hpp"
#include "coherent/hilbert_rep.hpp"

namespace coherent {

/// Singular values below this fraction of the largest one count as zero.
inline constexpr double kRankTolerance = 1e-10;

class FrameSystem {
public:
    FrameSystem(Representation rep, Vector window, PointSet points)
        : rep_(std::move(rep)), window_(std::move(window)), points_(std::move(points)) {
        rep_.check_dim(window_);
        if (window_.norm() == 0.0) throw ZeroWindow("frame window is zero");
        atoms_.resize(static_cast<Eigen::Index>(rep_.dim()), static_cast<Eigen::Index>(points_.size()));
        for (std::size_t j = 0; j < points_.size(); ++j) {
            if (points_[j] >= rep_.group().size()) throw OutOfCarrier("frame point outside the carrier");
            atoms_.col(static_cast<Eigen::Index>(j)) = rep_.apply(points_[j], window_);
        }
    }

    const Representation& rep() const noexcept { return rep_; }
    const GroupModel& group() const noexcept { return rep_.group(); }
    const Vector& window() const noexcept { return window_; }
    const PointSet& points() const noexcept { return points_; }
    /// Column j is pi(x_j) g.
    const Matrix& atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dim() const noexcept { return rep_.dim(); }

private:
    Representation rep_;
    Vector window_;
    PointSet points_;
    Matrix atoms_;
};

/// c_j = <f, v_j>.
inline Vector analysis_coefficients(const Matrix& vectors, const Vector& f) {
    if (vectors.rows() != f.size()) throw DimensionMismatch("analysis of a vector of the wrong dimension");
    return vectors.adjoint() * f;
}

inline Vector analysis_coefficients(const FrameSystem& frame, const Vector& f) {
    return analysis_coefficients(frame.atoms(), f);
}

/// S = sum_j v_j v_j^*.
inline Matrix frame_operator(const Matrix& vectors) {
    Matrix s = vectors * vectors.adjoint();
    return (s + s.adjoint()) * 0.5;
}

struct FrameBounds {
    double A = 0.0;
    double B = 0.0;

    bool tight(double rel_tol = 1e-9) const { return B - A <= rel_tol * B; }
};

struct FrameAnalysis {
    double A = 0.0;
    double B = 0.0;
    Matrix frame_operator;
    Eigen::VectorXd spectrum;  // ascending
    Matrix eigenvectors;       // columns match spectrum
    Matrix canonical_dual;     // column j is S^{-1} v_j

    FrameBounds bounds() const { return {A, B}; }
};

/// Spectral analysis of the frame operator. Throws NotAFrame when the lower
/// bound is not resolvable from zero at the rank tolerance.
inline FrameAnalysis analyze_frame(const Matrix& vectors) {
    if (vectors.rows() == 0) throw DimensionMismatch("frame in a zero-dimensional space");
    FrameAnalysis fa;
    fa.frame_operator = frame_operator(vectors);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(fa.frame_operator);
    fa.spectrum = eig.eigenvalues();
    fa.eigenvectors = eig.eigenvectors();
    fa.A = fa.spectrum[0];
    fa.B = fa.spectrum[fa.spectrum.size() - 1];
    if (!(fa.B > 0.0) || fa.A <= kRankTolerance * fa.B)
        throw NotAFrame("the system does not span C^" + std::to_string(vectors.rows()) + " (rank " +
                        std::to_string((fa.spectrum.array() > kRankTolerance * fa.B).count()) + ")");
    const Eigen::VectorXd inv = fa.spectrum.cwiseInverse();
    const Matrix s_inv = fa.eigenvectors * inv.asDiagonal() * fa.eigenvectors.adjoint();
    fa.canonical_dual = s_inv * vectors;
    return fa;
}

inline FrameAnalysis analyze_frame(const FrameSystem& frame) { return analyze_frame(frame.atoms()); }

inline FrameBounds frame_bounds(const Matrix& vectors) { return analyze_frame(vectors).bounds(); }
inline FrameBounds frame_bounds(const FrameSystem& frame) { return frame_bounds(frame.atoms()); }

inline Matrix canonical_dual(const Matrix& vectors) { return analyze_frame(vectors).canonical_dual; }

/// A dual frame together with how it was obtained.
struct DualFrame {
    Matrix vectors;
    std::string label;
    bool canonical = false;
};

inline DualFrame canonical_dual_frame(const FrameAnalysis& fa) {
    return {fa.canonical_dual, "canonical", true};
}

/// A non-canonical dual S^{-1}V + Z (I - V^* S^{-1} V) with a random
/// Gaussian Z of the given scale. Reconstruction is exact for any Z.
inline DualFrame perturbed_dual(const Matrix& vectors, const FrameAnalysis& fa, std::uint64_t seed,
                                double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n01;
    Matrix z(vectors.rows(), vectors.cols());
    for (Eigen::Index i = 0; i < z.rows(); ++i)
        for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = Complex(n01(rng), n01(rng)) * scale;
    const auto m = vectors.cols();
    const Matrix leak = Matrix::Identity(m, m) - vectors.adjoint() * fa.canonical_dual;
    return {fa.canonical_dual + z * leak, "perturbed(seed=" + std::to_string(seed) + ")", false};
}

struct DualCheck {
    double max_error = 0.0;
    bool ok = false;
};

/// max_i || e_i - sum_j <e_i, v_j> h_j ||.
inline DualCheck verify_dual(const Matrix& vectors, const Matrix& duals) {
    if (duals.cols() != vectors.cols()) throw LengthMismatch("one dual vector per frame vector required");
    if (duals.rows() != vectors.rows()) throw DimensionMismatch("dual vectors live in another space");
    const Matrix residual = Matrix::Identity(vectors.rows(), vectors.rows()) - duals * vectors.adjoint();
    DualCheck c;
    for (Eigen::Index i = 0; i < residual.cols(); ++i) c.max_error = std::max(c.max_error, residual.col(i).norm());
    c.ok = c.max_error <= 1e-9;
    return c;
}

struct BesselCheck {
    double empirical_B_dual = 0.0;
    double bound = 0.0;  // 1 / A of the primary frame
    bool asserted = false;
    bool ok = false;
};

/// The canonical dual has upper bound 1/A. For other duals the empirical
/// constant is reported but nothing is asserted.
inline BesselCheck bessel_bound_check(const Matrix& duals, double A_of_primary, bool canonical) {
    BesselCheck c;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(frame_operator(duals), Eigen::EigenvaluesOnly);
    c.empirical_B_dual = eig.eigenvalues()[eig.eigenvalues().size() - 1];
    c.bound = 1.0 / A_of_primary;
    c.asserted = canonical;
    c.ok = !canonical || c.empirical_B_dual <= c.bound * (1.0 + 1e-9);
    return c;
}

/// Orthogonal projector onto the span of a generator list. Duplicates,
/// dependencies and zero vectors are allowed.
class SpanProjector {
public:
    SpanProjector(Matrix generators, Eigen::Index dim) : generators_(std::move(generators)) {
        if (generators_.cols() > 0 && generators_.rows() != dim)
            throw DimensionMismatch("generators do not live in C^" + std::to_string(dim));
        if (generators_.cols() == 0) {
            generators_.resize(dim, 0);
            basis_.resize(dim, 0);
            return;
        }
        Eigen::BDCSVD<Matrix> svd(generators_, Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        const double smax = sv.size() ? sv[0] : 0.0;
        Eigen::Index r = 0;
        if (smax > 0.0)
            while (r < sv.size() && sv[r] > kRankTolerance * smax) ++r;
        basis_ = svd.matrixU().leftCols(r);
    }

    Eigen::Index dim() const noexcept { return basis_.rows(); }
    std::size_t rank() const noexcept { return static_cast<std::size_t>(basis_.cols()); }
    double rank_tolerance() const noexcept { return kRankTolerance; }
    const Matrix& generators() const noexcept { return generators_; }
    /// Orthonormal basis of the range.
    const Matrix& basis() const noexcept { return basis_; }

    Vector apply(const Vector& v) const { return basis_ * (basis_.adjoint() * v); }
    Matrix apply(const Matrix& m) const { return basis_ * (basis_.adjoint() * m); }
    Matrix matrix() const { return basis_ * basis_.adjoint(); }

private:
    Matrix generators_;
    Matrix basis_;
};

inline SpanProjector span_projector(const Matrix& generators, Eigen::Index dim) {
    return SpanProjector(generators, dim);
}

struct BestApprox {
    double proj_error = 0.0;
    double min_trial_error = std::numeric_limits<double>::infinity();
    bool ok = false;
};

/// Compares ||h - Ph|| against ||h - sum_j d_j v_j|| for random coefficient
/// vectors d. Half of the trials are pure noise, half perturb the
/// least-squares coefficients at random scales.
inline BestApprox best_approx_check(const SpanProjector& p, const Vector& h, int trials, std::mt19937_64& rng) {
    BestApprox r;
    r.proj_error = (h - p.apply(h)).norm();
    const Matrix& v = p.generators();
    const auto m = v.cols();
    if (m == 0) {
        r.min_trial_error = h.norm();
        r.ok = r.proj_error <= r.min_trial_error + 1e-12;
        return r;
    }
    const Vector best = v.completeOrthogonalDecomposition().solve(h);
    std::normal_distribution<double> n01;
    std::uniform_real_distribution<double> expo(-8.0, 1.0);
    const double hscale = std::max(h.norm(), 1.0);
    for (int t = 0; t < trials; ++t) {
        Vector d(m);
        for (Eigen::Index j = 0; j < m; ++j) d[j] = Complex(n01(rng), n01(rng));
        if (t % 2 == 1) d = best + std::pow(10.0, expo(rng)) * hscale * d;
        r.min_trial_error = std::min(r.min_trial_error, (h - v * d).norm());
    }
    r.ok = r.proj_error <= r.min_trial_error + 1e-12;
    return r;
}

}  // namespace coherent
