#pragma once

#include <Eigen/Core>
#include <Eigen/SVD>

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "orthoseq/errors.hpp"
#include "orthoseq/orthonormal.hpp"
#include "orthoseq/sign_pattern.hpp"
#include "orthoseq/sparse_vector.hpp"

namespace orthoseq {

/// Entrywise tolerance for the block matrix orthogonality check M^T M = I.
inline constexpr double kBlockOrthoTol = 1e-9;

/// Pointwise tolerance defining operator equality. The same operator has
/// many normal forms after basis merges, so equality is never representational.
inline constexpr double kOperatorEqTol = 1e-9;

/// Finite-rank orthogonal correction: acts as an orthogonal k x k matrix on
/// span(basis) and as the identity on its orthogonal complement. Column i of
/// `matrix` holds the coordinates of the image of basis[i] in `basis`.
class BlockPart {
public:
    BlockPart() : matrix_(0, 0) {}

    BlockPart(OrthonormalFamily basis, Eigen::MatrixXd matrix)
        : basis_(std::move(basis)), matrix_(std::move(matrix)) {
        const auto k = static_cast<Eigen::Index>(basis_.size());
        if (matrix_.rows() != k || matrix_.cols() != k)
            throw DimensionMismatch("block matrix size does not match basis size");
        if (!basis_.is_orthonormal())
            throw NotOrthogonal("block basis is not orthonormal",
                                basis_.orthonormality_residual());
        if (k > 0) {
            double residual = (matrix_.transpose() * matrix_ -
                               Eigen::MatrixXd::Identity(k, k))
                                  .cwiseAbs()
                                  .maxCoeff();
            if (residual > kBlockOrthoTol)
                throw NotOrthogonal("block matrix is not orthogonal", residual);
        }
    }

    static BlockPart identity() { return BlockPart(); }

    /// -I on the span of the family, identity elsewhere.
    static BlockPart negated_span(OrthonormalFamily family) {
        const auto k = static_cast<Eigen::Index>(family.size());
        return BlockPart(std::move(family), -Eigen::MatrixXd::Identity(k, k));
    }

    const OrthonormalFamily& basis() const noexcept { return basis_; }
    const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
    std::size_t rank_bound() const noexcept { return basis_.size(); }

    SparseVector apply(const SparseVector& x) const {
        if (basis_.empty()) return x;
        const auto k = static_cast<Eigen::Index>(basis_.size());
        Eigen::VectorXd coords(k);
        for (Eigen::Index i = 0; i < k; ++i)
            coords(i) = inner(x, basis_[static_cast<std::size_t>(i)]);
        Eigen::VectorXd rotated = matrix_ * coords;
        SparseVector out = x;
        for (Eigen::Index i = 0; i < k; ++i) {
            const auto& b = basis_[static_cast<std::size_t>(i)];
            out = out + (rotated(i) - coords(i)) * b;
        }
        return out;
    }

private:
    OrthonormalFamily basis_;
    Eigen::MatrixXd matrix_;
};

/// Computable orthogonal operator: a global sign pattern composed after a
/// finite-rank orthogonal block (operator = sign o block). Closed under
/// composition, inverse and conjugation; contains +-I, every reflection with
/// finite-rank or finite-corank projection, and all finite products of them.
class GOperator {
public:
    GOperator() = default;
    GOperator(SignPattern sign, BlockPart block)
        : sign_(std::move(sign)), block_(std::move(block)) {}

    static GOperator identity() { return GOperator(); }
    static GOperator negation() {
        return GOperator(SignPattern::negation(), BlockPart::identity());
    }

    const SignPattern& sign() const noexcept { return sign_; }
    const BlockPart& block() const noexcept { return block_; }

private:
    SignPattern sign_;
    BlockPart block_;
};

inline SparseVector apply(const GOperator& op, const SparseVector& x) {
    return op.sign().apply(op.block().apply(x));
}

/// L = 2P - I for the projection P onto span(F): fixes the span, negates its
/// complement. F = {} gives -I; a family spanning the whole model gives I.
inline GOperator reflection_spanning(const OrthonormalFamily& family) {
    return GOperator(SignPattern::negation(), BlockPart::negated_span(family));
}

/// I - 2P for the projection P onto span(G): negates the span, fixes its
/// complement. Single-vector G is the classical Householder reflection.
inline GOperator reflection_flipping(const OrthonormalFamily& family) {
    return GOperator(SignPattern::identity(), BlockPart::negated_span(family));
}

inline GOperator reflection_flipping(const SparseVector& unit) {
    return reflection_flipping(OrthonormalFamily({unit}));
}

namespace detail {

/// D B D for a diagonal sign D: same matrix, basis members sign-flipped.
inline BlockPart conjugate_by_sign(const BlockPart& block, const SignPattern& sign) {
    if (block.basis().empty() || sign.is_identity()) return block;
    std::vector<SparseVector> flipped;
    flipped.reserve(block.basis().size());
    for (const SparseVector& b : block.basis().members())
        flipped.push_back(sign.apply(b));
    return BlockPart(OrthonormalFamily(std::move(flipped)), block.matrix());
}

/// Composition of two finite-rank blocks on the merged active subspace.
inline BlockPart block_compose(const BlockPart& a, const BlockPart& b) {
    if (a.basis().empty()) return b;
    if (b.basis().empty()) return a;

    std::vector<SparseVector> pool = a.basis().members();
    for (const SparseVector& v : b.basis().members()) pool.push_back(v);
    OrthonormalFamily merged = orthonormalize(pool);

    const auto m = static_cast<Eigen::Index>(merged.size());
    Eigen::MatrixXd ma(m, m), mb(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const SparseVector& e = merged[static_cast<std::size_t>(i)];
        SparseVector ia = a.apply(e);
        SparseVector ib = b.apply(e);
        for (Eigen::Index j = 0; j < m; ++j) {
            const SparseVector& f = merged[static_cast<std::size_t>(j)];
            ma(j, i) = inner(ia, f);
            mb(j, i) = inner(ib, f);
        }
    }
    return BlockPart(std::move(merged), ma * mb);
}

}  // namespace detail

/// Operator product A o B in the canonical sign-after-block normal form.
/// A's block is pushed through B's sign via D B = (D B D) D, then the two
/// blocks merge on the re-orthonormalized union of their active bases.
inline GOperator compose(const GOperator& a, const GOperator& b) {
    SignPattern sign = multiply(a.sign(), b.sign());
    BlockPart pushed = detail::conjugate_by_sign(a.block(), b.sign());
    BlockPart block = detail::block_compose(pushed, b.block());
    return GOperator(std::move(sign), std::move(block));
}

/// The adjoint, which for this class is also the inverse: block matrix
/// transposed in the sign-conjugated basis, sign pattern unchanged.
inline GOperator adjoint_inverse(const GOperator& a) {
    BlockPart conj = detail::conjugate_by_sign(a.block(), a.sign());
    BlockPart inv(conj.basis(), conj.matrix().transpose());
    return GOperator(a.sign(), std::move(inv));
}

/// Transports a reflection family through X: the returned family G satisfies
/// reflection_spanning(G) = X^-1 . reflection_spanning(F) . X pointwise, the
/// executable witness that finite products of reflections form a normal
/// subgroup of the orthogonal operators.
inline OrthonormalFamily conjugate_reflection(const GOperator& x,
                                              const OrthonormalFamily& family) {
    GOperator xt = adjoint_inverse(x);
    std::vector<SparseVector> moved;
    moved.reserve(family.size());
    for (const SparseVector& e : family.members()) moved.push_back(apply(xt, e));
    return OrthonormalFamily(std::move(moved));
}

namespace detail {

/// Basis indices where either operator can differ from a plain tail sign:
/// block supports plus sign exceptional sets of both.
inline std::vector<SparseVector::Index> merged_active_indices(const GOperator& a,
                                                              const GOperator& b) {
    std::set<SparseVector::Index> s;
    for (const GOperator* op : {&a, &b}) {
        for (const SparseVector& v : op->block().basis().members())
            for (const auto& [i, c] : v.entries()) s.insert(i);
        for (auto i : op->sign().indices()) s.insert(i);
    }
    return {s.begin(), s.end()};
}

}  // namespace detail

/// Exact operator norm of A - B for this class. Both operators preserve the
/// coordinate subspace spanned by the merged active indices and act as
/// constant +-1 tails outside it, so the norm splits into the largest
/// singular value of the dense difference on that subspace and the tail
/// disagreement (0 or 2).
inline double op_distance(const GOperator& a, const GOperator& b) {
    auto active = detail::merged_active_indices(a, b);
    double tail = std::abs(a.sign().tail_sign() - b.sign().tail_sign());
    if (active.empty()) return tail;

    const auto m = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd diff(m, m);
    for (Eigen::Index col = 0; col < m; ++col) {
        SparseVector e = SparseVector::basis(active[static_cast<std::size_t>(col)]);
        SparseVector d = apply(a, e) - apply(b, e);
        for (Eigen::Index row = 0; row < m; ++row)
            diff(row, col) = d.coeff(active[static_cast<std::size_t>(row)]);
    }
    double sigma = 0.0;
    if (diff.cwiseAbs().maxCoeff() > 0.0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff);
        sigma = svd.singularValues()(0);
    }
    return std::max(sigma, tail);
}

/// Pointwise equality within tolerance on the merged active subspace plus
/// one witness coordinate outside it.
inline bool approx_equal(const GOperator& a, const GOperator& b,
                         double tol = kOperatorEqTol) {
    auto active = detail::merged_active_indices(a, b);
    SparseVector::Index witness = active.empty() ? 0 : active.back() + 1;
    active.push_back(witness);
    for (auto i : active) {
        SparseVector e = SparseVector::basis(i);
        if (distance(apply(a, e), apply(b, e)) > tol) return false;
    }
    return true;
}

/// True iff the operator deviates from the identity on finitely many
/// coordinates. The block is a finite-rank correction by construction, so
/// membership is decided by the sign tail: a cofinite flip set negates
/// infinitely many basis directions.
inline bool is_stable_O_member(const GOperator& a) {
    return a.sign().mode() == SignMode::Finite;
}

}  // namespace orthoseq
