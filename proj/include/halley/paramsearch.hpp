#pragma once

#include <cstdint>
#include <vector>

#include "halley/ratmap.hpp"

namespace halley {

/// Halley map of z^3 + 6z + b in closed form:
/// (z^5 - 2z^3 - 2bz^2 - 2b) / (2z^4 + 6z^2 - bz + 12).
/// Throws ExcludedParameter for b in {0, 4i sqrt 2, -4i sqrt 2}.
RationalMap halley_b(Complex b);

/// Image of the free critical point 1: (1 + 4b) / (b - 20). Throws PoleAtTwenty.
Complex xi_of(Complex b);

/// Degree-6 polynomial in b vanishing exactly when the map sends xi(b) back
/// to 1: (b - 20)^5 [N_b(xi) - D_b(xi)]. Built by interpolation at seven
/// points on |b| = 10 and checked at two held-out points; throws
/// InterpolationInconsistent when those disagree or when b = -7 is not a root.
Polynomial cycle_condition_polynomial();

struct LinearDivision {
    Polynomial quotient;
    Complex remainder;
};

/// p(b) = (b - a) q(b) + remainder.
LinearDivision divide_by_linear(const Polynomial& p, Complex a);

/// cycle_condition_polynomial() / (b + 7), scaled to leading coefficient 10.
Polynomial cycle_quintic();

/// The five roots of cycle_quintic(), sorted by real part.
std::vector<Complex> roots_of_F();

struct CycleCandidate {
    Complex b;
    /// The critical point the cycle passes through (1 or -1).
    Complex start;
    Complex xi;
    Complex multiplier;
    double residual;
};

/// Looks for the 2-cycle through 1, then through -1. Throws NoCycle when
/// neither returns within 1e-8.
CycleCandidate verify_cycle(Complex b);

/// H_b(-z) = -H_{-b}(z) at `samples` random points to 1e-9.
bool conjugacy_check(Complex b, int samples, std::uint64_t seed = 5);

}  // namespace halley
