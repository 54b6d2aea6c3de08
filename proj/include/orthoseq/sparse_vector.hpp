#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

namespace orthoseq {

/// Entries with |coefficient| below this are pruned from storage, keeping
/// supports finite under repeated arithmetic.
inline constexpr double kStorageEpsilon = 1e-14;

/// Finite-support real vector indexed by natural numbers: the computable
/// model of a sequence-space element. Absent index means coefficient 0.
/// Immutable by convention; every operation returns a fresh vector.
class SparseVector {
public:
    using Index = std::uint64_t;
    using Map = std::map<Index, double>;

    SparseVector() = default;

    explicit SparseVector(Map entries) : entries_(std::move(entries)) { prune(); }

    SparseVector(std::initializer_list<std::pair<const Index, double>> init)
        : entries_(init) {
        prune();
    }

    /// The i-th standard basis vector.
    static SparseVector basis(Index i) { return SparseVector{{i, 1.0}}; }

    const Map& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t support_size() const noexcept { return entries_.size(); }

    double coeff(Index i) const {
        auto it = entries_.find(i);
        return it == entries_.end() ? 0.0 : it->second;
    }

    /// Largest support index; only meaningful when non-empty.
    Index max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

    SparseVector operator+(const SparseVector& rhs) const {
        Map out = entries_;
        for (const auto& [i, c] : rhs.entries_) out[i] += c;
        return SparseVector(std::move(out));
    }

    SparseVector operator-(const SparseVector& rhs) const {
        Map out = entries_;
        for (const auto& [i, c] : rhs.entries_) out[i] -= c;
        return SparseVector(std::move(out));
    }

    SparseVector operator*(double s) const {
        Map out;
        for (const auto& [i, c] : entries_) out.emplace(i, c * s);
        return SparseVector(std::move(out));
    }

    SparseVector operator-() const { return (*this) * -1.0; }

    friend SparseVector operator*(double s, const SparseVector& v) { return v * s; }

    bool operator==(const SparseVector& rhs) const = default;

private:
    void prune() {
        for (auto it = entries_.begin(); it != entries_.end();) {
            if (std::abs(it->second) < kStorageEpsilon)
                it = entries_.erase(it);
            else
                ++it;
        }
    }

    Map entries_;
};

/// Inner product over the (finite) intersection of supports.
inline double inner(const SparseVector& x, const SparseVector& y) {
    // Walk the smaller support, probe the larger.
    const auto& a = x.support_size() <= y.support_size() ? x : y;
    const auto& b = x.support_size() <= y.support_size() ? y : x;
    double sum = 0.0;
    for (const auto& [i, c] : a.entries()) sum += c * b.coeff(i);
    return sum;
}

inline double norm(const SparseVector& x) { return std::sqrt(inner(x, x)); }

inline double distance(const SparseVector& x, const SparseVector& y) {
    return norm(x - y);
}

}  // namespace orthoseq
