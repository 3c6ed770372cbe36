#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "halley/polycore.hpp"

namespace halley {

/// A point of the Riemann sphere: a finite complex number or infinity.
class SpherePoint {
public:
    SpherePoint() = default;
    SpherePoint(Complex z) : z_(z) {}  // NOLINT(google-explicit-constructor)

    static SpherePoint infinity() {
        SpherePoint p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinity() const { return infinite_; }
    /// Finite coordinate; throws InvalidArgument at infinity.
    Complex value() const;

private:
    Complex z_ = 0.0;
    bool infinite_ = false;
};

/// num/den with den nonzero. When `reduced()` holds, num and den share no
/// root within the matching tolerance.
class RationalMap {
public:
    RationalMap(Polynomial num, Polynomial den, bool reduced);

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    bool reduced() const { return reduced_; }
    int degree() const { return std::max(num_.degree(), den_.degree()); }

    /// Plain num(z)/den(z) without any sphere handling.
    Complex operator()(Complex z) const { return num_(z) / den_(z); }

    /// R'(z) by the quotient rule.
    Complex derivative(Complex z) const;

    /// num' den - num den', whose roots are the finite critical points.
    Polynomial critical_polynomial() const;
    /// num - z den, whose roots are the finite fixed points.
    Polynomial fixed_point_polynomial() const;

private:
    Polynomial num_;
    Polynomial den_;
    bool reduced_;
};

/// Matching tolerance for cancelling common roots of num and den.
inline constexpr double kCancelTolerance = 1e-7;
/// Beyond this modulus, evaluation switches to the chart w = 1/z.
inline constexpr double kHandoffRadius = 1e8;

/// Cancels the roots shared by num and den (matched within kCancelTolerance),
/// rebuilding both from their surviving roots. Leading coefficients are kept.
RationalMap reduce(const Polynomial& num, const Polynomial& den);

/// z - 2 p p' / (2 p'^2 - p p''), reduced. Throws DegenerateMap when p has
/// fewer than two distinct roots.
RationalMap halley_of(const Polynomial& p);

/// Konig's method of order n >= 2, reduced. n = 2 is Newton, n = 3 Halley.
RationalMap konig_of(const Polynomial& p, int n);

/// z - [1 + (1/2) p p'' / (p'^2 - sigma p p'')] p / p', reduced.
RationalMap chebyshev_halley_of(const Polynomial& p, Complex sigma);

/// R on the Riemann sphere. Throws Indeterminate when num and den both
/// vanish at z.
SpherePoint eval_sphere(const RationalMap& r, const SpherePoint& z);

/// True when R(infinity) = infinity.
bool fixes_infinity(const RationalMap& r);

/// Finite fixed points (roots of num - z den) plus infinity when fixed.
std::vector<SpherePoint> fixed_points(const RationalMap& r, const RootFinderOptions& opts = {});

/// Derivative at a fixed point; at infinity, the derivative at 0 of
/// w -> 1 / R(1/w). Throws NotFixed when z is not fixed.
Complex multiplier_at(const RationalMap& r, const SpherePoint& z);

struct CriticalPoints {
    /// Critical points lying on one of the supplied roots.
    std::vector<RootCluster> at_roots;
    /// Everything else ("free" critical points).
    std::vector<RootCluster> free;
};

/// Finite critical points with multiplicity, split against `roots`.
CriticalPoints critical_points(const RationalMap& r, std::span<const Complex> roots,
                               const RootFinderOptions& opts = {});

/// Roots of the denominator with multiplicity.
std::vector<RootCluster> poles(const RationalMap& r, const RootFinderOptions& opts = {});

/// 1 + multiplicity of z0 as a critical point. Throws NotFixed when z0 is not
/// a fixed point.
int local_degree_at(const RationalMap& r, Complex z0, const RootFinderOptions& opts = {});

/// N distinct roots, s special (multiple, non-root) critical points of total
/// multiplicity B; the Halley map has degree 2N + s - B - 1.
struct DegreeCensus {
    int distinct_roots = 0;
    int special_critical_points = 0;
    int special_multiplicity = 0;
    int predicted_degree = 0;
};

DegreeCensus degree_census(const Polynomial& p, const RootFinderOptions& opts = {});

/// Checks H_{c p o T} = T^{-1} o H_p o T at `samples` random points.
bool scaling_check(const Polynomial& p, const AffineMap& t, Complex c, int samples,
                   std::uint64_t seed = 7);

/// |a - b| <= rel * max(1, |a|, |b|), with both-infinite counted equal.
bool nearly_equal(const SpherePoint& a, const SpherePoint& b, double rel);

}  // namespace halley
