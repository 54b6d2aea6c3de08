#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <utility>
#include <vector>

#include "orthoseq/dense_ortho.hpp"
#include "orthoseq/errors.hpp"
#include "orthoseq/g_operator.hpp"
#include "orthoseq/orthonormal.hpp"
#include "orthoseq/sparse_vector.hpp"

namespace orthoseq {

/// A column already within this distance of +-e_j needs no Householder step.
inline constexpr double kReducedColumnTol = 1e-12;

/// Post-step residual bound: after each reflection the reduced column must
/// match e_j this closely, or the input was not orthogonal to begin with.
inline constexpr double kDecomposeStepTol = 1e-10;

/// Ordered finite sequence of reflection factors whose product represents an
/// orthogonal matrix. Each factor is the family negated by the reflection
/// (the flip convention), so a single-vector factor is a Householder matrix
/// I - 2uu^T. Decomposition emits at most `dimension` factors.
struct ReflectionWord {
    std::size_t dimension = 0;
    std::vector<OrthonormalFamily> factors;

    std::size_t length() const noexcept { return factors.size(); }
};

namespace detail {

inline SparseVector column_to_sparse(const Eigen::VectorXd& col) {
    SparseVector::Map m;
    for (Eigen::Index i = 0; i < col.size(); ++i)
        m.emplace(static_cast<SparseVector::Index>(i), col(i));
    return SparseVector(std::move(m));
}

/// Dense n x n matrix of the flip reflection I - 2 sum uu^T over a family.
inline Eigen::MatrixXd flip_reflection_dense(const OrthonormalFamily& family,
                                             Eigen::Index n) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n);
    for (const SparseVector& u : family.members()) {
        if (!u.empty() && u.max_index() >= static_cast<SparseVector::Index>(n))
            throw DimensionMismatch("reflection factor exceeds word dimension");
        Eigen::VectorXd dense = Eigen::VectorXd::Zero(n);
        for (const auto& [i, c] : u.entries()) dense(static_cast<Eigen::Index>(i)) = c;
        l -= 2.0 * dense * dense.transpose();
    }
    return l;
}

}  // namespace detail

/// Ordered product of the factor reflections as a dense matrix, first factor
/// leftmost.
inline DenseOrthoMatrix reconstruct(const ReflectionWord& word) {
    const auto n = static_cast<Eigen::Index>(word.dimension);
    if (n < 1) throw DimensionMismatch("word dimension must be at least 1");
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (const OrthonormalFamily& f : word.factors)
        m *= detail::flip_reflection_dense(f, n);
    return DenseOrthoMatrix(std::move(m), 1e-8);
}

/// Column-reduction decomposition of an orthogonal matrix into at most n
/// reflections. Step j sends the current column j to e_j with the Householder
/// flip along u = (c - e_j)/|c - e_j|; the components of c - e_j are computed
/// without cancellation for a unit column, so no alternate sign choice is
/// needed. Columns already within tolerance of e_j are skipped, and a column
/// at -e_j degenerates to the coordinate flip along e_j.
inline ReflectionWord householder_decompose(const DenseOrthoMatrix& input) {
    const Eigen::Index n = input.dim();
    Eigen::MatrixXd work = input.entries();
    ReflectionWord word;
    word.dimension = static_cast<std::size_t>(n);

    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::VectorXd c = work.col(j);
        Eigen::VectorXd target = Eigen::VectorXd::Unit(n, j);
        if ((c - target).norm() < kReducedColumnTol) continue;

        Eigen::VectorXd u;
        if ((c + target).norm() < kReducedColumnTol) {
            u = target;  // flip of coordinate j sends -e_j to e_j
        } else {
            u = c - target;
            u.normalize();
        }
        work -= 2.0 * u * (u.transpose() * work);

        double step_residual = (work.col(j) - target).norm();
        if (step_residual > kDecomposeStepTol)
            throw NotOrthogonal("column reduction failed; input is too far from orthogonal",
                                step_residual);

        word.factors.emplace_back(
            std::vector<SparseVector>{detail::column_to_sparse(u)});
    }
    return word;
}

/// Inclusion of a finite orthogonal matrix into the operator class: acts as
/// the matrix on coordinates 0..n-1 and as the identity above.
inline GOperator embed(const DenseOrthoMatrix& m) {
    std::vector<SparseVector> coords;
    coords.reserve(static_cast<std::size_t>(m.dim()));
    for (Eigen::Index i = 0; i < m.dim(); ++i)
        coords.push_back(SparseVector::basis(static_cast<SparseVector::Index>(i)));
    return GOperator(SignPattern::identity(),
                     BlockPart(OrthonormalFamily(std::move(coords)), m.entries()));
}

/// The operator-class element represented by a word: the composition of its
/// flip reflections in order.
inline GOperator word_to_operator(const ReflectionWord& word) {
    GOperator acc = GOperator::identity();
    for (const OrthonormalFamily& f : word.factors)
        acc = compose(acc, reflection_flipping(f));
    return acc;
}

}  // namespace orthoseq
