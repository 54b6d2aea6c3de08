#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "orthoseq/errors.hpp"
#include "orthoseq/sparse_vector.hpp"

namespace orthoseq {

/// Unit-norm tolerance for sphere points.
inline constexpr double kSphereTol = 1e-10;
/// Strictness margin for the open-hemisphere chart condition <x, e_p> > 0.
inline constexpr double kHemisphereMargin = 1e-10;
/// Margin guarding the sqrt(1 - |y|^2) singularity at the disc boundary.
inline constexpr double kDiscMargin = 1e-12;
/// Allowed pole component of a disc coordinate.
inline constexpr double kPoleComponentTol = 1e-12;
/// The first homotopy's denominator must stay above this.
inline constexpr double kDenominatorFloor = 1e-6;

/// A unit vector of the sequence-space model.
class SpherePoint {
public:
    explicit SpherePoint(SparseVector v) : v_(std::move(v)) {
        if (std::abs(norm(v_) - 1.0) > kSphereTol)
            throw NotUnit("sphere point must have unit norm");
    }

    /// Normalizes before constructing; rejects vectors too short to scale.
    static SpherePoint normalized(const SparseVector& v) {
        double n = norm(v);
        if (n < kDenominatorFloor)
            throw NotUnit("vector is too short to normalize onto the sphere");
        return SpherePoint(v * (1.0 / n));
    }

    static SpherePoint pole(SparseVector::Index i) {
        return SpherePoint(SparseVector::basis(i));
    }

    const SparseVector& vector() const noexcept { return v_; }

private:
    SparseVector v_;
};

/// Hemisphere chart {x : <x, e_p> > 0} identified by its pole index.
struct ChartPole {
    SparseVector::Index pole_index = 0;
};

/// Chart map: drop the pole coordinate, x -> x - <x, e_p> e_p. Lands in the
/// open unit disc of the pole's complement hyperplane.
inline SparseVector chart_forward(ChartPole p, const SpherePoint& x) {
    double c = x.vector().coeff(p.pole_index);
    if (c <= kHemisphereMargin)
        throw OutsideChart("point is not in the open hemisphere of the chart");
    return x.vector() - c * SparseVector::basis(p.pole_index);
}

/// Inverse chart map: y -> y + sqrt(1 - |y|^2) e_p.
inline SpherePoint chart_inverse(ChartPole p, const SparseVector& y) {
    double n = norm(y);
    if (n >= 1.0 - kDiscMargin)
        throw OutsideDisc("disc coordinate has norm too close to 1");
    if (std::abs(y.coeff(p.pole_index)) > kPoleComponentTol)
        throw NonzeroPoleComponent("disc coordinate must vanish along the pole");
    double lift = std::sqrt(1.0 - n * n);
    return SpherePoint(y + lift * SparseVector::basis(p.pole_index));
}

/// Transition map between two hemisphere charts.
inline SparseVector transition(ChartPole u, ChartPole v, const SparseVector& y) {
    return chart_forward(u, chart_inverse(v, y));
}

/// Analytic derivative of the transition map at y applied to h:
/// P_U(h) - (<y,h>/sqrt(1-|y|^2)) P_U(e_V), with P_U the linear chart map.
inline SparseVector frechet_transition(ChartPole u, ChartPole v,
                                       const SparseVector& y,
                                       const SparseVector& h) {
    double n = norm(y);
    if (n >= 1.0 - kDiscMargin)
        throw OutsideDisc("disc coordinate has norm too close to 1");
    if (std::abs(y.coeff(v.pole_index)) > kPoleComponentTol)
        throw NonzeroPoleComponent("disc coordinate must vanish along the pole");
    if (std::abs(h.coeff(v.pole_index)) > kPoleComponentTol)
        throw NonzeroPoleComponent("direction must vanish along the pole");

    auto drop_u = [&u](const SparseVector& z) {
        return z - z.coeff(u.pole_index) * SparseVector::basis(u.pole_index);
    };
    double scale = inner(y, h) / std::sqrt(1.0 - n * n);
    return drop_u(h) - scale * drop_u(SparseVector::basis(v.pole_index));
}

/// Relabels every support index i to i + lambda. An exact isometry that is
/// not surjective: the first lambda coordinates of the image vanish.
inline SparseVector shift_apply(SparseVector::Index lambda, const SparseVector& x) {
    if (lambda == 0) return x;
    SparseVector::Map out;
    for (const auto& [i, c] : x.entries()) out.emplace(i + lambda, c);
    return SparseVector(std::move(out));
}

/// Denominator of the first contraction homotopy at (t, x).
inline double f1_denominator(double t, const SpherePoint& x) {
    return norm(t * shift_apply(1, x.vector()) + (1.0 - t) * x.vector());
}

/// First homotopy stage: normalized convex combination of x with its shift.
/// Connects the identity (t=0) to the shift (t=1).
inline SpherePoint homotopy_F1(double t, const SpherePoint& x) {
    SparseVector mix = t * shift_apply(1, x.vector()) + (1.0 - t) * x.vector();
    double d = norm(mix);
    if (d <= kDenominatorFloor)
        throw DegenerateDenominator("homotopy denominator vanished");
    return SpherePoint(mix * (1.0 / d));
}

/// Second homotopy stage: t e_0 + sqrt(1-t^2) shift(x). Unit norm is exact
/// because the shifted vector has no e_0 component. Connects the shift (t=0)
/// to the constant map at e_0 (t=1).
inline SpherePoint homotopy_F2(double t, const SpherePoint& x) {
    SparseVector out = t * SparseVector::basis(0) +
                       std::sqrt(1.0 - t * t) * shift_apply(1, x.vector());
    return SpherePoint(std::move(out));
}

/// Sampled contraction path on the sphere with unit-norm samples.
struct HomotopyPath {
    struct Sample {
        double t;
        SpherePoint point;
    };
    std::vector<Sample> samples;

    /// Largest consecutive gap divided by the time step: a discrete
    /// Lipschitz-style continuity certificate.
    double continuity_constant() const {
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
            double dt = samples[i + 1].t - samples[i].t;
            if (dt <= 0.0) continue;
            double gap =
                distance(samples[i + 1].point.vector(), samples[i].point.vector());
            worst = std::max(worst, gap / dt);
        }
        return worst;
    }
};

/// Glued contraction of the sphere sampled at `steps` uniform times: the
/// first half runs the identity-to-shift homotopy, the second half the
/// shift-to-pole homotopy; the junction at t = 1/2 matches exactly.
inline HomotopyPath contract_path(const SpherePoint& x, std::size_t steps) {
    if (steps < 2) throw DimensionMismatch("a path needs at least 2 samples");
    HomotopyPath path;
    path.samples.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(steps - 1);
        SpherePoint p = (t <= 0.5) ? homotopy_F1(2.0 * t, x)
                                   : homotopy_F2(2.0 * t - 1.0, x);
        path.samples.push_back({t, std::move(p)});
    }
    return path;
}

}  // namespace orthoseq
