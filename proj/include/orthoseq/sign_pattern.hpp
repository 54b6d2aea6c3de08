#pragma once

#include <set>
#include <utility>

#include "orthoseq/sparse_vector.hpp"

namespace orthoseq {

enum class SignMode { Finite, Cofinite };

/// Diagonal +-1 operator given by the set of basis indices carrying -1.
/// FINITE stores that set directly; COFINITE stores its complement, so a
/// global negation is {Cofinite, {}}. Squares to the identity.
class SignPattern {
public:
    using Index = SparseVector::Index;
    using IndexSet = std::set<Index>;

    SignPattern() : mode_(SignMode::Finite) {}
    SignPattern(SignMode mode, IndexSet indices)
        : mode_(mode), indices_(std::move(indices)) {}

    static SignPattern identity() { return SignPattern(); }
    static SignPattern negation() { return SignPattern(SignMode::Cofinite, {}); }

    SignMode mode() const noexcept { return mode_; }
    const IndexSet& indices() const noexcept { return indices_; }

    /// +1 or -1 at basis index i.
    double at(Index i) const {
        bool listed = indices_.count(i) > 0;
        bool negative = (mode_ == SignMode::Finite) ? listed : !listed;
        return negative ? -1.0 : 1.0;
    }

    /// Sign taken at every index outside the stored exceptional set.
    double tail_sign() const noexcept {
        return mode_ == SignMode::Finite ? 1.0 : -1.0;
    }

    bool is_identity() const noexcept {
        return mode_ == SignMode::Finite && indices_.empty();
    }

    SparseVector apply(const SparseVector& x) const {
        SparseVector::Map out;
        for (const auto& [i, c] : x.entries()) out.emplace(i, at(i) * c);
        return SparseVector(std::move(out));
    }

    /// Pointwise product of two diagonal sign operators. The negative set of
    /// the product is the symmetric difference of the factors' negative sets,
    /// which keeps the finite/cofinite representation closed.
    friend SignPattern multiply(const SignPattern& a, const SignPattern& b) {
        IndexSet sym;
        for (Index i : a.indices_)
            if (!b.indices_.count(i)) sym.insert(i);
        for (Index i : b.indices_)
            if (!a.indices_.count(i)) sym.insert(i);
        SignMode mode = (a.mode_ == b.mode_) ? SignMode::Finite : SignMode::Cofinite;
        return SignPattern(mode, std::move(sym));
    }

    bool operator==(const SignPattern& rhs) const = default;

private:
    SignMode mode_;
    IndexSet indices_;
};

}  // namespace orthoseq
