#include "halley/symmetry.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "halley/errors.hpp"

namespace halley {

namespace {

bool near_label_change(const BasinGrid& g, int x, int y) {
    const int l = g.label(x, y);
    const int dx[] = {1, -1, 0, 0};
    const int dy[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k];
        const int ny = y + dy[k];
        if (nx < 0 || ny < 0 || nx >= g.width || ny >= g.height) continue;
        if (g.label(nx, ny) != l) return true;
    }
    return false;
}

bool grid_invariant_under(const BasinGrid& g, int n, double agreement) {
    const Complex lambda = std::polar(1.0, 2.0 * std::numbers::pi / n);
    std::vector<std::pair<int, int>> pairs;
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            if (near_label_change(g, x, y)) continue;
            const auto target = g.pixel_of(lambda * g.pixel_center(x, y));
            if (!target || near_label_change(g, target->first, target->second)) continue;
            pairs.emplace_back(g.label(x, y), g.label(target->first, target->second));
        }
    }
    if (pairs.empty()) return false;

    std::map<int, std::map<int, long>> votes;
    for (const auto& [from, to] : pairs) ++votes[from][to];
    std::map<int, int> perm;
    std::set<int> images;
    for (const auto& [from, tally] : votes) {
        int best = 0;
        long best_count = -1;
        for (const auto& [to, count] : tally) {
            if (count > best_count) {
                best = to;
                best_count = count;
            }
        }
        if (!images.insert(best).second) return false;
        perm[from] = best;
    }
    long agree = 0;
    for (const auto& [from, to] : pairs)
        if (perm[from] == to) ++agree;
    return static_cast<double>(agree) >= agreement * static_cast<double>(pairs.size());
}

}  // namespace

int polynomial_symmetry_order(const Polynomial& p) { return normalized_form(p).beta; }

int map_rotation_order(const RationalMap& r, int n_max, int samples, double tol, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::vector<Complex> points(static_cast<std::size_t>(samples));
    for (Complex& z : points) z = {coord(rng), coord(rng)};
    for (int n = n_max; n >= 2; --n) {
        const Complex lambda = std::polar(1.0, 2.0 * std::numbers::pi / n);
        bool ok = true;
        for (const Complex& z : points) {
            const SpherePoint a = eval_sphere(r, lambda * z);
            const SpherePoint b = eval_sphere(r, z);
            const SpherePoint rotated = b.is_infinity() ? b : SpherePoint(lambda * b.value());
            if (!nearly_equal(a, rotated, tol)) {
                ok = false;
                break;
            }
        }
        if (ok) return n;
    }
    return 1;
}

int grid_symmetry_order(const BasinGrid& grid, int n_max, double agreement) {
    const Window& w = grid.window;
    if (w.center != Complex(0.0) || w.half_width != w.half_height || grid.width != grid.height)
        throw WindowNotCentered("grid_symmetry_order(): grid must be square and centered at the origin");
    for (int n = n_max; n >= 2; --n)
        if (grid_invariant_under(grid, n, agreement)) return n;
    return 1;
}

SymmetryReport symmetry_report(const Polynomial& p, const SymmetryOptions& opts) {
    SymmetryReport rep;
    rep.polynomial_order = polynomial_symmetry_order(p);
    const auto roots = locations(find_roots(p));
    if (roots.size() < 3) throw InvalidArgument("symmetry_report(): needs at least three distinct roots");
    const RationalMap h = halley_of(p);
    rep.map_order = map_rotation_order(h, opts.n_max);
    const BasinGrid grid =
        classify_grid(h, roots, Window::square(opts.half_width), opts.resolution, opts.resolution, opts.orbit);
    rep.grid_order = grid_symmetry_order(grid, opts.n_max);
    rep.containment = rep.map_order % rep.polynomial_order == 0 && rep.grid_order % rep.polynomial_order == 0;
    rep.equality = rep.polynomial_order == rep.map_order && rep.map_order == rep.grid_order;
    return rep;
}

}  // namespace halley
