#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "orthoseq/sparse_vector.hpp"

namespace orthoseq {

/// Pairwise orthonormality tolerance for families: |<v_i,v_j> - delta_ij|.
inline constexpr double kOrthonormalTol = 1e-10;

/// A candidate vector whose residual after orthogonalization falls below
/// this is treated as linearly dependent and dropped.
inline constexpr double kDependenceThreshold = 1e-12;

/// Ordered finite list of pairwise-orthonormal vectors. Induces the
/// projection onto its span and the reflections built from it.
class OrthonormalFamily {
public:
    OrthonormalFamily() = default;
    explicit OrthonormalFamily(std::vector<SparseVector> members)
        : members_(std::move(members)) {}

    const std::vector<SparseVector>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const SparseVector& operator[](std::size_t i) const { return members_[i]; }

    /// Worst pairwise deviation |<v_i,v_j> - delta_ij| over all pairs.
    double orthonormality_residual() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < members_.size(); ++i)
            for (std::size_t j = i; j < members_.size(); ++j) {
                double target = (i == j) ? 1.0 : 0.0;
                double dev = std::abs(inner(members_[i], members_[j]) - target);
                if (dev > worst) worst = dev;
            }
        return worst;
    }

    bool is_orthonormal(double tol = kOrthonormalTol) const {
        return orthonormality_residual() <= tol;
    }

private:
    std::vector<SparseVector> members_;
};

/// Modified Gram-Schmidt with one re-orthogonalization pass. Vectors whose
/// residual norm falls below the dependence threshold are dropped, so the
/// output spans the same subspace with size <= input size.
inline OrthonormalFamily orthonormalize(const std::vector<SparseVector>& input) {
    std::vector<SparseVector> out;
    for (const SparseVector& v : input) {
        SparseVector w = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const SparseVector& u : out) w = w - inner(w, u) * u;
        double r = norm(w);
        if (r < kDependenceThreshold) continue;
        out.push_back(w * (1.0 / r));
    }
    return OrthonormalFamily(std::move(out));
}

/// Orthogonal projection induced by an orthonormal family (x maps to the
/// sum of <x,v> v over the family). Idempotent and self-adjoint.
struct ProjectionSpec {
    OrthonormalFamily family;
};

inline SparseVector project(const ProjectionSpec& spec, const SparseVector& x) {
    SparseVector out;
    for (const SparseVector& v : spec.family.members()) out = out + inner(x, v) * v;
    return out;
}

inline SparseVector project(const OrthonormalFamily& family, const SparseVector& x) {
    return project(ProjectionSpec{family}, x);
}

}  // namespace orthoseq
