#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "orthoseq/dense_ortho.hpp"
#include "orthoseq/euclid.hpp"
#include "orthoseq/g_operator.hpp"
#include "orthoseq/orthonormal.hpp"
#include "orthoseq/reflection_word.hpp"
#include "orthoseq/sparse_vector.hpp"

namespace orthoseq::sampling {

/// Mixes a base seed with a stream index so independent samples get
/// independent, order-stable generators (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Random vector with the given support size drawn from indices < index_bound
/// and standard-normal coefficients.
inline SparseVector random_vector(std::mt19937_64& rng, std::size_t support,
                                  SparseVector::Index index_bound = 32) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<SparseVector::Index> pick(0, index_bound - 1);
    SparseVector::Map m;
    while (m.size() < support) m[pick(rng)] = gauss(rng);
    return SparseVector(std::move(m));
}

inline SparseVector random_unit(std::mt19937_64& rng, std::size_t support = 4,
                                SparseVector::Index index_bound = 32) {
    for (;;) {
        SparseVector v = random_vector(rng, support, index_bound);
        double n = norm(v);
        if (n > 1e-3) return v * (1.0 / n);
    }
}

/// Random orthonormal family of the given size over indices < index_bound.
inline OrthonormalFamily random_family(std::mt19937_64& rng, std::size_t size,
                                       SparseVector::Index index_bound = 32) {
    for (;;) {
        std::vector<SparseVector> raw;
        raw.reserve(size);
        for (std::size_t i = 0; i < size; ++i)
            raw.push_back(random_vector(rng, 3, index_bound));
        OrthonormalFamily f = orthonormalize(raw);
        if (f.size() == size) return f;
    }
}

/// Random operator: a sign pattern (finite or cofinite flips) composed with
/// a random orthogonal block on a random finite active subspace.
inline GOperator random_operator(std::mt19937_64& rng,
                                 SparseVector::Index index_bound = 32) {
    std::uniform_int_distribution<int> block_size(0, 3);
    std::uniform_int_distribution<int> flips(0, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<SparseVector::Index> pick(0, index_bound - 1);

    int k = block_size(rng);
    BlockPart block;
    if (k > 0) {
        OrthonormalFamily basis =
            random_family(rng, static_cast<std::size_t>(k), index_bound);
        DenseOrthoMatrix m = random_orthogonal(k, rng());
        block = BlockPart(std::move(basis), m.entries());
    }
    SignPattern::IndexSet negatives;
    int nf = flips(rng);
    for (int i = 0; i < nf; ++i) negatives.insert(pick(rng));
    SignMode mode = coin(rng) ? SignMode::Cofinite : SignMode::Finite;
    return GOperator(SignPattern(mode, std::move(negatives)), std::move(block));
}

/// Random operator fixing e_0, ..., e_{n-1}: block and flips drawn from
/// indices at or above n.
inline GOperator random_stabilizer(std::mt19937_64& rng, SparseVector::Index n,
                                   SparseVector::Index index_bound = 32) {
    std::uniform_int_distribution<int> block_size(0, 2);
    std::uniform_int_distribution<int> flips(0, 2);
    std::uniform_int_distribution<SparseVector::Index> pick(n, index_bound - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);

    int k = block_size(rng);
    BlockPart block;
    if (k > 0) {
        std::vector<SparseVector> raw;
        for (int i = 0; i < k; ++i) {
            SparseVector::Map m;
            while (m.size() < 3) m[pick(rng)] = gauss(rng);
            raw.push_back(SparseVector(std::move(m)));
        }
        OrthonormalFamily basis = orthonormalize(raw);
        if (basis.size() != static_cast<std::size_t>(k))
            return random_stabilizer(rng, n, index_bound);
        DenseOrthoMatrix m = random_orthogonal(k, rng());
        block = BlockPart(std::move(basis), m.entries());
    }
    SignPattern::IndexSet negatives;
    int nf = flips(rng);
    for (int i = 0; i < nf; ++i) negatives.insert(pick(rng));
    return GOperator(SignPattern(SignMode::Finite, std::move(negatives)),
                     std::move(block));
}

/// Random reflection word over indices < n with the given number of
/// single-vector factors.
inline ReflectionWord random_word(std::mt19937_64& rng, std::size_t n,
                                  std::size_t length) {
    ReflectionWord w;
    w.dimension = n;
    for (std::size_t i = 0; i < length; ++i)
        w.factors.emplace_back(std::vector<SparseVector>{
            random_unit(rng, 3, static_cast<SparseVector::Index>(n))});
    return w;
}

inline EuclidElement random_euclid(std::mt19937_64& rng,
                                   SparseVector::Index index_bound = 32) {
    return {random_vector(rng, 4, index_bound), random_operator(rng, index_bound), {}};
}

}  // namespace orthoseq::sampling
