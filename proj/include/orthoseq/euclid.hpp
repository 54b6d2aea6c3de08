#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "orthoseq/errors.hpp"
#include "orthoseq/g_operator.hpp"
#include "orthoseq/reflection_word.hpp"
#include "orthoseq/sparse_vector.hpp"

namespace orthoseq {

/// Rigid motion of the sequence space: a translation composed after an
/// orthogonal rotor, acting as x -> rotor(x) + shift. When `word` is present
/// the rotor is the product of the word's flip reflections, marking the
/// element as reflection-generated.
struct EuclidElement {
    SparseVector shift;
    GOperator rotor;
    std::optional<ReflectionWord> word;

    static EuclidElement identity() { return {SparseVector{}, GOperator::identity(), {}}; }

    static EuclidElement translation(SparseVector v) {
        return {std::move(v), GOperator::identity(), {}};
    }

    static EuclidElement rotation(GOperator op) {
        return {SparseVector{}, std::move(op), {}};
    }

    static EuclidElement from_word(SparseVector shift, ReflectionWord w) {
        GOperator rotor = word_to_operator(w);
        return {std::move(shift), std::move(rotor), std::move(w)};
    }
};

/// Semidirect composition (g.shift + g.rotor(h.shift), g.rotor o h.rotor).
inline EuclidElement e_compose(const EuclidElement& g, const EuclidElement& h) {
    return {g.shift + apply(g.rotor, h.shift), compose(g.rotor, h.rotor), {}};
}

/// (shift, rotor)^-1 = (-rotor^-1(shift), rotor^-1).
inline EuclidElement e_inverse(const EuclidElement& g) {
    GOperator inv = adjoint_inverse(g.rotor);
    return {-apply(inv, g.shift), std::move(inv), {}};
}

/// Action on the space: x -> rotor(x) + shift. Distance preserving.
inline SparseVector e_act(const EuclidElement& g, const SparseVector& x) {
    return apply(g.rotor, x) + g.shift;
}

/// Conjugate g^-1 a g of a reflection-word-backed element, with the rotor
/// re-expressed as a word by transporting every factor family through the
/// conjugating rotor. Shift follows the closed form
/// -M^-1 m + M^-1 a + M^-1 A m for g = (m, M), a = (a, A); the word route
/// and the direct triple composition agree pointwise, which is the
/// executable witness that reflection-generated motions are normal in the
/// full motion group.
inline EuclidElement xi_conjugation_witness(const EuclidElement& g,
                                            const EuclidElement& a) {
    if (!a.word)
        throw WordRequired("conjugation witness needs a reflection-word-backed element");

    GOperator m_inv = adjoint_inverse(g.rotor);
    SparseVector shift =
        apply(m_inv, a.shift + apply(a.rotor, g.shift) - g.shift);

    ReflectionWord moved;
    moved.dimension = a.word->dimension;
    moved.factors.reserve(a.word->factors.size());
    for (const OrthonormalFamily& f : a.word->factors) {
        OrthonormalFamily transported = conjugate_reflection(g.rotor, f);
        for (const SparseVector& u : transported.members())
            if (!u.empty())
                moved.dimension = std::max<std::size_t>(moved.dimension,
                                                        u.max_index() + 1);
        moved.factors.push_back(std::move(transported));
    }

    GOperator rotor = word_to_operator(moved);
    return {std::move(shift), std::move(rotor), std::move(moved)};
}

}  // namespace orthoseq
