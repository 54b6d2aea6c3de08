#pragma once

#include <Eigen/Core>

#include <cmath>
#include <utility>

#include "orthoseq/dense_ortho.hpp"
#include "orthoseq/errors.hpp"
#include "orthoseq/g_operator.hpp"
#include "orthoseq/sphere.hpp"

namespace orthoseq {

/// Tolerance for coset equality and stabilizer membership.
inline constexpr double kCosetTol = 1e-9;
/// Two sphere points closer than this cannot define a swapping reflection.
inline constexpr double kDegeneratePairTol = 1e-8;
/// Below this distance from the antipode -e_0 the section switches to its
/// coordinate-flip fallback.
inline constexpr double kSectionFallbackTol = 1e-6;

/// Evaluation of the operator at the distinguished direction e_0. This is
/// the quotient map onto the sphere: 1-Lipschitz for the operator metric.
inline SpherePoint project_lambda(const GOperator& a) {
    return SpherePoint::normalized(apply(a, SparseVector::basis(0)));
}

/// A and B represent the same coset iff they move e_0 to the same point,
/// equivalently iff A^-1 B stabilizes e_0.
inline bool same_coset(const GOperator& a, const GOperator& b) {
    SparseVector e0 = SparseVector::basis(0);
    return distance(apply(a, e0), apply(b, e0)) <= kCosetTol;
}

/// Pointwise stabilizer test: A fixes e_0, ..., e_{n-1}.
inline bool stabilizer_membership(SparseVector::Index n, const GOperator& a) {
    for (SparseVector::Index i = 0; i < n; ++i) {
        SparseVector e = SparseVector::basis(i);
        if (distance(apply(a, e), e) > kCosetTol) return false;
    }
    return true;
}

/// The reflection exchanging two distinct sphere points: the flip along
/// their normalized difference, which fixes the bisector hyperplane.
inline GOperator reflection_r(const SpherePoint& x, const SpherePoint& y) {
    SparseVector d = x.vector() - y.vector();
    double n = norm(d);
    if (n <= kDegeneratePairTol)
        throw DegeneratePair("cannot reflect across coinciding points");
    return reflection_flipping(d * (1.0 / n));
}

/// Distinguished coset representative: an orthogonal operator sending e_0 to
/// x, built as the negation of the reflection exchanging -e_0 and x. Near
/// the antipode that reflection degenerates and the coordinate flip on
/// index 0 is used instead.
inline GOperator section_h0(const SpherePoint& x) {
    SparseVector minus_e0 = -SparseVector::basis(0);
    if (distance(x.vector(), minus_e0) < kSectionFallbackTol)
        return reflection_flipping(SparseVector::basis(0));
    SparseVector d = minus_e0 - x.vector();
    SparseVector u = d * (1.0 / norm(d));
    return GOperator(SignPattern::negation(),
                     BlockPart::negated_span(OrthonormalFamily({u})));
}

/// A finite orthogonal matrix split into its sphere image and the fibre
/// coordinate relative to the deterministic frame at that image.
struct TrivializationResult {
    SpherePoint base_point;
    DenseOrthoMatrix fibre_part;
};

namespace detail {

/// Orthonormal frame at a base point b on the j-sphere: column 0 is b
/// itself; columns 1..j are the negated section columns at b, re-orthogonalized
/// against b so the frame stays exact even at the section's fallback corner.
inline Eigen::MatrixXd base_frame(Eigen::Index j, const SpherePoint& b) {
    const Eigen::Index n = j + 1;
    if (!b.vector().empty() &&
        b.vector().max_index() >= static_cast<SparseVector::Index>(n))
        throw DimensionMismatch("base point leaves the model dimension");

    GOperator h = section_h0(b);
    Eigen::MatrixXd frame(n, n);
    for (Eigen::Index i = 0; i < n; ++i) frame(i, 0) = b.vector().coeff(i);
    for (Eigen::Index k = 1; k < n; ++k) {
        SparseVector col = -apply(h, SparseVector::basis(k));
        for (Eigen::Index i = 0; i < n; ++i) frame(i, k) = col.coeff(i);
    }
    // Two Gram-Schmidt passes; a no-op away from the fallback corner.
    for (Eigen::Index k = 1; k < n; ++k) {
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index prev = 0; prev < k; ++prev)
                frame.col(k) -= frame.col(prev).dot(frame.col(k)) * frame.col(prev);
        frame.col(k).normalize();
    }
    return frame;
}

}  // namespace detail

/// Local trivialization over the sphere: splits A into (A e_0, fibre) where
/// the fibre coordinate is the lower block of frame(A e_0)^T A. The base
/// component is exactly the projection of A, so the bundle diagram commutes.
inline TrivializationResult trivialize(Eigen::Index j, const DenseOrthoMatrix& a) {
    if (j < 1) throw DimensionMismatch("fibre dimension must be at least 1");
    if (a.dim() != j + 1)
        throw DimensionMismatch("matrix size must be one above the fibre dimension");

    SparseVector::Map base_entries;
    for (Eigen::Index i = 0; i <= j; ++i)
        base_entries.emplace(static_cast<SparseVector::Index>(i), a.entries()(i, 0));
    SpherePoint base = SpherePoint::normalized(SparseVector(std::move(base_entries)));

    Eigen::MatrixXd frame = detail::base_frame(j, base);
    Eigen::MatrixXd aligned = frame.transpose() * a.entries();
    return {base, DenseOrthoMatrix(aligned.bottomRightCorner(j, j))};
}

/// Inverse of the trivialization: rebuilds the unique matrix with the given
/// sphere image and fibre coordinate.
inline DenseOrthoMatrix untrivialize(Eigen::Index j, const TrivializationResult& r) {
    if (j < 1) throw DimensionMismatch("fibre dimension must be at least 1");
    if (r.fibre_part.dim() != j)
        throw InvalidFibre("fibre matrix size does not match the fibre dimension");
    if (!r.base_point.vector().empty() &&
        r.base_point.vector().max_index() >= static_cast<SparseVector::Index>(j + 1))
        throw InvalidFibre("base point leaves the model dimension");

    Eigen::MatrixXd aligned = Eigen::MatrixXd::Identity(j + 1, j + 1);
    aligned.bottomRightCorner(j, j) = r.fibre_part.entries();
    Eigen::MatrixXd frame = detail::base_frame(j, r.base_point);
    return DenseOrthoMatrix(frame * aligned, 1e-8);
}

}  // namespace orthoseq
