#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <utility>

#include "orthoseq/errors.hpp"

namespace orthoseq {

/// Acceptance tolerance for the orthogonality of dense inputs.
inline constexpr double kDenseOrthoTol = 1e-9;

/// Finite-dimensional orthogonal matrix with a validated Gram residual.
class DenseOrthoMatrix {
public:
    explicit DenseOrthoMatrix(Eigen::MatrixXd entries, double tol = kDenseOrthoTol)
        : entries_(std::move(entries)) {
        if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
            throw DimensionMismatch("orthogonal matrix must be square and non-empty");
        double residual = gram_residual(entries_);
        if (residual > tol)
            throw NotOrthogonal("matrix failed the orthogonality check", residual);
    }

    static DenseOrthoMatrix identity(Eigen::Index n) {
        return DenseOrthoMatrix(Eigen::MatrixXd::Identity(n, n));
    }

    static double gram_residual(const Eigen::MatrixXd& m) {
        return (m.transpose() * m -
                Eigen::MatrixXd::Identity(m.rows(), m.cols()))
            .cwiseAbs()
            .maxCoeff();
    }

    Eigen::Index dim() const noexcept { return entries_.rows(); }
    const Eigen::MatrixXd& entries() const noexcept { return entries_; }

private:
    Eigen::MatrixXd entries_;
};

/// Deterministic orthogonal matrix: the product of n Householder reflections
/// with standard-normal directions and a random diagonal sign, all drawn
/// from a generator seeded with `seed`.
inline DenseOrthoMatrix random_orthogonal(Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw DimensionMismatch("dimension must be at least 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> coin(0, 1);

    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::VectorXd v(n);
        do {
            for (Eigen::Index i = 0; i < n; ++i) v(i) = gauss(rng);
        } while (v.norm() < 1e-8);
        v.normalize();
        m -= 2.0 * v * (v.transpose() * m);
    }
    for (Eigen::Index i = 0; i < n; ++i)
        if (coin(rng)) m.col(i) = -m.col(i);
    return DenseOrthoMatrix(std::move(m));
}

}  // namespace orthoseq
