#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "halley/ratmap.hpp"

namespace halley {

struct OrbitOptions {
    int max_iter = 200;
    double capture_radius = 1e-8;
    double cycle_tolerance = 1e-9;
    int max_period = 32;
};

enum class OrbitKind { ConvergedToRoot, ConvergedToCycle, Undecided };

struct OrbitOutcome {
    OrbitKind kind = OrbitKind::Undecided;
    /// Index into the roots passed to iterate_orbit (ConvergedToRoot only).
    int root_index = -1;
    /// Iterations until first entering the capture disc, or until the cycle
    /// was recognised.
    int iterations = 0;
    /// Cycle points starting from the one reached first (ConvergedToCycle only).
    std::vector<Complex> cycle;
    SpherePoint last;

    int period() const { return static_cast<int>(cycle.size()); }
};

/// Iterates R from z0. A root is declared once the orbit enters its capture
/// disc and stays there for two more iterations; attracting cycles up to
/// max_period are found with Brent's method. Landing on infinity is Undecided.
OrbitOutcome iterate_orbit(const RationalMap& r, const SpherePoint& z0, std::span<const Complex> roots,
                           const OrbitOptions& opts = {});

struct Window {
    Complex center = 0.0;
    double half_width = 2.0;
    double half_height = 2.0;

    static Window square(double half, Complex center = 0.0) { return {center, half, half}; }
};

/// Label encoding: 0 undecided, i + 1 for root i, -(j + 1) for cycle j.
inline constexpr int kUndecidedLabel = 0;
inline int root_label(int root_index) { return root_index + 1; }
inline int cycle_label(int cycle_index) { return -(cycle_index + 1); }

struct BasinGrid {
    Window window;
    int width = 0;
    int height = 0;
    int max_iter = 0;
    std::vector<int> labels;
    std::vector<int> iterations;
    /// Distinct attracting cycles, in order of first appearance (row-major).
    std::vector<std::vector<Complex>> cycles;

    double pitch_x() const { return 2.0 * window.half_width / width; }
    double pitch_y() const { return 2.0 * window.half_height / height; }
    /// Cell center; row 0 is the top edge (largest imaginary part).
    Complex pixel_center(int x, int y) const;
    /// Pixel containing z, or nullopt outside the window.
    std::optional<std::pair<int, int>> pixel_of(Complex z) const;
    int label(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

/// Classifies every cell center. Rows are split across `threads` workers
/// (0 = hardware concurrency); the result does not depend on the split.
BasinGrid classify_grid(const RationalMap& r, std::span<const Complex> roots, const Window& w, int width,
                        int height, const OrbitOptions& opts = {}, unsigned threads = 0);

struct CriticalFate {
    Complex point;
    int multiplicity = 1;
    OrbitOutcome outcome;
};

/// Orbits of the critical points of r = halley_of(p) that are not roots of p.
std::vector<CriticalFate> free_critical_fates(const Polynomial& p, const RationalMap& r,
                                              const OrbitOptions& opts = {});

struct BasinComponent {
    int label = 0;
    /// Row-major pixel indices, sorted.
    std::vector<int> pixels;
    bool touches_border = false;
};

/// 4-connected component of same-label pixels containing `seed`.
/// Throws SeedUnlabeled when the seed pixel is undecided.
BasinComponent immediate_basin_component(const BasinGrid& grid, Complex seed);

struct BoundednessReport {
    bool bounded = false;
    std::vector<Window> windows;
    /// Component area in the plane, one per window actually examined.
    std::vector<double> areas;
    std::vector<bool> touches_border;
};

/// Flood-fills the component of `seed` at a fixed pixel pitch (set by the
/// first window and `base_resolution`) in each window. Cells are classified
/// on demand, so only the component and its rim are iterated. Bounded when
/// no window's component reaches the border and the area changes by less
/// than 1% between the last two windows.
BoundednessReport boundedness_evidence(const RationalMap& r, std::span<const Complex> roots, Complex seed,
                                       std::span<const Window> windows, int base_resolution,
                                       const OrbitOptions& opts = {});

enum class ObstructionKind { CriticalPoint, Pole, FixedPoint };

struct Obstruction {
    ObstructionKind kind;
    double location;
};

struct IntervalReport {
    double x1 = 0.0;
    double x2 = 0.0;
    std::optional<Obstruction> obstruction;
    std::optional<double> predicted_limit;
    bool verified = false;
    int samples_converged = 0;
};

/// Checks that points of (x1, x2) converge monotonically to an endpoint.
/// Either endpoint may be infinite. With no real critical point, pole or
/// fixed point inside, the sign of R(x) - x decides the limit, which is then
/// confirmed by iterating `samples` interior points.
IntervalReport interval_convergence_check(const RationalMap& r, double x1, double x2, int samples,
                                          const OrbitOptions& opts = {});

struct ProfileRow {
    double x;
    double value;  // NaN at a pole
    double minus_x;
    bool pole;
};

struct Profile {
    std::vector<ProfileRow> rows;
    std::vector<double> poles;
};

/// Samples x -> R(x) on [x_min, x_max]. Rows within half a step of a real
/// pole are flagged and left as gaps.
Profile real_axis_profile(const RationalMap& r, double x_min, double x_max, int samples);

/// Profile of y -> -i R(iy), real when R maps the imaginary axis to itself.
Profile imaginary_axis_profile(const RationalMap& r, double y_min, double y_max, int samples);

/// Real roots (|Im| small) of a polynomial, ascending.
std::vector<double> real_roots(const Polynomial& p);

/// Columns x,Hx,Hx_minus_x,pole_flag.
void write_profile_csv(std::ostream& os, const Profile& profile);

bool has_real_coefficients(const RationalMap& r, double tol = 1e-12);

std::string to_string(ObstructionKind k);

}  // namespace halley
