#pragma once

#include <cstdint>

#include "halley/dynamics.hpp"

namespace halley {

/// beta of the normalized form z^alpha p0(z^beta). Throws NotNormalized.
int polynomial_symmetry_order(const Polynomial& p);

/// Largest n <= n_max with R(lambda z) = lambda R(z), lambda = exp(2 pi i / n),
/// at `samples` random points to relative error `tol`. Returns 1 when none.
int map_rotation_order(const RationalMap& r, int n_max, int samples = 64, double tol = 1e-9,
                       std::uint64_t seed = 17);

/// Largest n <= n_max such that rotating cell centers by 2 pi / n reproduces
/// the labels up to one global permutation on at least `agreement` of the
/// compared cells. Cells next to a label change are skipped. The window must
/// be square and centered at the origin (WindowNotCentered otherwise).
int grid_symmetry_order(const BasinGrid& grid, int n_max, double agreement = 0.99);

struct SymmetryOptions {
    int n_max = 12;
    int resolution = 400;
    double half_width = 2.0;
    OrbitOptions orbit;
};

struct SymmetryReport {
    int polynomial_order = 1;
    int map_order = 1;
    int grid_order = 1;
    /// polynomial_order divides both other orders.
    bool containment = false;
    /// All three orders coincide.
    bool equality = false;
};

/// Requires a normalized p with at least three distinct roots.
SymmetryReport symmetry_report(const Polynomial& p, const SymmetryOptions& opts = {});

}  // namespace halley
