#include "halley/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "halley/errors.hpp"

namespace halley {

namespace {

constexpr double kRealTolerance = 1e-7;
constexpr double kCycleMatch = 1e-6;
constexpr double kFixedTolerance = 1e-6;

bool close_points(const SpherePoint& a, const SpherePoint& b, double tol) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
    return std::abs(a.value() - b.value()) <= tol * std::max(1.0, std::abs(a.value()));
}

int captured_by(const SpherePoint& z, std::span<const Complex> roots, double radius) {
    if (z.is_infinity()) return -1;
    const Complex x = z.value();
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (std::abs(x - roots[i]) < radius) return static_cast<int>(i);
    return -1;
}

bool near_root(Complex z, std::span<const Complex> roots) {
    for (const Complex& r : roots)
        if (std::abs(z - r) <= kCycleMatch * std::max(1.0, std::abs(r))) return true;
    return false;
}

bool same_cycle(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) return false;
    for (const Complex& z : b)
        if (std::abs(z - a.front()) <= kCycleMatch * std::max(1.0, std::abs(z))) return true;
    return false;
}

double real_or_infinite(const SpherePoint& z) {
    return z.is_infinity() ? std::numeric_limits<double>::infinity() : z.value().real();
}

// Shared 4-connected flood fill; `label_at` returns nullopt outside the domain.
struct FillResult {
    std::vector<std::pair<int, int>> cells;
    bool touches_border = false;
};

template <typename LabelAt, typename OnBorder>
FillResult flood_fill(int sx, int sy, int label, LabelAt&& label_at, OnBorder&& on_border, bool stop_at_border) {
    FillResult out;
    std::unordered_map<std::int64_t, char> seen;
    auto key = [](int x, int y) { return (static_cast<std::int64_t>(x) << 32) ^ static_cast<std::uint32_t>(y); };
    std::deque<std::pair<int, int>> queue{{sx, sy}};
    seen[key(sx, sy)] = 1;
    while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        out.cells.emplace_back(x, y);
        if (on_border(x, y)) {
            out.touches_border = true;
            if (stop_at_border) return out;
        }
        const int dx[] = {1, -1, 0, 0};
        const int dy[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            const int nx = x + dx[k];
            const int ny = y + dy[k];
            if (seen.count(key(nx, ny))) continue;
            const std::optional<int> l = label_at(nx, ny);
            if (!l) continue;
            seen[key(nx, ny)] = 1;
            if (*l == label) queue.emplace_back(nx, ny);
        }
    }
    return out;
}

}  // namespace

OrbitOutcome iterate_orbit(const RationalMap& r, const SpherePoint& z0, std::span<const Complex> roots,
                           const OrbitOptions& opts) {
    OrbitOutcome out;
    SpherePoint z = z0;
    SpherePoint tortoise = z0;
    int power = 1;
    int lam = 0;
    const int power_cap = 2 * std::max(1, opts.max_period);
    for (int n = 0;; ++n) {
        out.last = z;
        out.iterations = n;
        if (z.is_infinity()) return out;
        const int idx = captured_by(z, roots, opts.capture_radius);
        if (idx >= 0) {
            SpherePoint w = z;
            bool stays = true;
            for (int k = 0; k < 2 && stays; ++k) {
                w = eval_sphere(r, w);
                stays = captured_by(w, roots, opts.capture_radius) == idx;
            }
            if (stays) {
                out.kind = OrbitKind::ConvergedToRoot;
                out.root_index = idx;
                out.last = w;
                return out;
            }
        }
        if (n >= opts.max_iter) return out;

        const SpherePoint next = eval_sphere(r, z);
        ++lam;
        if (!next.is_infinity() && lam <= opts.max_period && close_points(next, tortoise, opts.cycle_tolerance)) {
            std::vector<Complex> cycle{tortoise.value()};
            SpherePoint c = tortoise;
            Complex multiplier = r.derivative(tortoise.value());
            bool usable = true;
            for (int k = 1; k < lam && usable; ++k) {
                c = eval_sphere(r, c);
                usable = !c.is_infinity();
                if (usable) {
                    cycle.push_back(c.value());
                    multiplier *= r.derivative(c.value());
                }
            }
            bool touches_root = false;
            for (const Complex& p : cycle) touches_root = touches_root || near_root(p, roots);
            if (usable && !touches_root) {
                out.last = next;
                out.iterations = n + 1;
                if (std::abs(multiplier) >= 1.0) return out;
                out.kind = OrbitKind::ConvergedToCycle;
                out.cycle = std::move(cycle);
                return out;
            }
        }
        if (lam == power) {
            tortoise = next;
            power = std::min(power * 2, power_cap);
            lam = 0;
        }
        z = next;
    }
}

Complex BasinGrid::pixel_center(int x, int y) const {
    return {window.center.real() - window.half_width + (x + 0.5) * pitch_x(),
            window.center.imag() + window.half_height - (y + 0.5) * pitch_y()};
}

std::optional<std::pair<int, int>> BasinGrid::pixel_of(Complex z) const {
    const double fx = (z.real() - (window.center.real() - window.half_width)) / pitch_x();
    const double fy = (window.center.imag() + window.half_height - z.imag()) / pitch_y();
    if (!(fx >= 0.0 && fy >= 0.0)) return std::nullopt;
    const int x = static_cast<int>(std::floor(fx));
    const int y = static_cast<int>(std::floor(fy));
    if (x >= width || y >= height) return std::nullopt;
    return std::make_pair(x, y);
}

BasinGrid classify_grid(const RationalMap& r, std::span<const Complex> roots, const Window& w, int width,
                        int height, const OrbitOptions& opts, unsigned threads) {
    if (width <= 0 || height <= 0) throw InvalidArgument("classify_grid(): resolution must be positive");
    if (!(w.half_width > 0.0) || !(w.half_height > 0.0))
        throw InvalidArgument("classify_grid(): window extents must be positive");
    BasinGrid grid;
    grid.window = w;
    grid.width = width;
    grid.height = height;
    grid.max_iter = opts.max_iter;
    const std::size_t count = static_cast<std::size_t>(width) * height;
    grid.labels.assign(count, kUndecidedLabel);
    grid.iterations.assign(count, 0);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(height));
    std::vector<std::vector<std::pair<int, std::vector<Complex>>>> found(threads);

    auto work = [&](unsigned t) {
        for (int y = static_cast<int>(t); y < height; y += static_cast<int>(threads)) {
            for (int x = 0; x < width; ++x) {
                const int idx = y * width + x;
                OrbitOutcome o = iterate_orbit(r, grid.pixel_center(x, y), roots, opts);
                grid.iterations[idx] = o.iterations;
                if (o.kind == OrbitKind::ConvergedToRoot)
                    grid.labels[idx] = root_label(o.root_index);
                else if (o.kind == OrbitKind::ConvergedToCycle)
                    found[t].emplace_back(idx, std::move(o.cycle));
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    std::vector<std::pair<int, std::vector<Complex>>> all;
    for (auto& f : found)
        for (auto& e : f) all.push_back(std::move(e));
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [idx, cycle] : all) {
        int id = -1;
        for (std::size_t j = 0; j < grid.cycles.size() && id < 0; ++j)
            if (same_cycle(grid.cycles[j], cycle)) id = static_cast<int>(j);
        if (id < 0) {
            id = static_cast<int>(grid.cycles.size());
            grid.cycles.push_back(std::move(cycle));
        }
        grid.labels[idx] = cycle_label(id);
    }
    return grid;
}

std::vector<CriticalFate> free_critical_fates(const Polynomial& p, const RationalMap& r, const OrbitOptions& opts) {
    const auto roots = locations(find_roots(p));
    std::vector<CriticalFate> out;
    for (const RootCluster& c : critical_points(r, roots).free)
        out.push_back({c.location, c.multiplicity, iterate_orbit(r, c.location, roots, opts)});
    return out;
}

BasinComponent immediate_basin_component(const BasinGrid& grid, Complex seed) {
    const auto cell = grid.pixel_of(seed);
    if (!cell) throw InvalidArgument("immediate_basin_component(): seed outside the window");
    const int label = grid.label(cell->first, cell->second);
    if (label == kUndecidedLabel) throw SeedUnlabeled("immediate_basin_component(): seed pixel is undecided");
    auto label_at = [&](int x, int y) -> std::optional<int> {
        if (x < 0 || y < 0 || x >= grid.width || y >= grid.height) return std::nullopt;
        return grid.label(x, y);
    };
    auto on_border = [&](int x, int y) { return x == 0 || y == 0 || x == grid.width - 1 || y == grid.height - 1; };
    const FillResult fill = flood_fill(cell->first, cell->second, label, label_at, on_border, false);
    BasinComponent out;
    out.label = label;
    out.touches_border = fill.touches_border;
    out.pixels.reserve(fill.cells.size());
    for (const auto& [x, y] : fill.cells) out.pixels.push_back(y * grid.width + x);
    std::sort(out.pixels.begin(), out.pixels.end());
    return out;
}

BoundednessReport boundedness_evidence(const RationalMap& r, std::span<const Complex> roots, Complex seed,
                                       std::span<const Window> windows, int base_resolution,
                                       const OrbitOptions& opts) {
    if (windows.empty()) throw InvalidArgument("boundedness_evidence(): no windows");
    if (base_resolution <= 0) throw InvalidArgument("boundedness_evidence(): resolution must be positive");
    for (std::size_t k = 1; k < windows.size(); ++k) {
        if (windows[k].center != windows[0].center)
            throw InvalidArgument("boundedness_evidence(): windows must share a center");
        if (!(windows[k].half_width > windows[k - 1].half_width && windows[k].half_height > windows[k - 1].half_height))
            throw InvalidArgument("boundedness_evidence(): windows must be strictly increasing");
    }

    // Cells are indexed by (i, j) with center c + ((i + 1/2) px, -(j + 1/2) py),
    // which matches the pixel centers of an even-sized grid over any window.
    const Window& first = windows[0];
    const int base_rows = std::max(1, static_cast<int>(std::lround(base_resolution * first.half_height / first.half_width)));
    const double px = 2.0 * first.half_width / base_resolution;
    const double py = 2.0 * first.half_height / base_rows;
    const Complex c = first.center;
    auto center_of = [&](int i, int j) { return Complex(c.real() + (i + 0.5) * px, c.imag() - (j + 0.5) * py); };

    std::unordered_map<std::int64_t, int> cache;
    auto key = [](int i, int j) { return (static_cast<std::int64_t>(i) << 32) ^ static_cast<std::uint32_t>(j); };
    auto classify = [&](int i, int j) {
        const auto it = cache.find(key(i, j));
        if (it != cache.end()) return it->second;
        const OrbitOutcome o = iterate_orbit(r, center_of(i, j), roots, opts);
        const int l = o.kind == OrbitKind::ConvergedToRoot ? root_label(o.root_index)
                      : o.kind == OrbitKind::ConvergedToCycle ? -1
                                                              : kUndecidedLabel;
        cache.emplace(key(i, j), l);
        return l;
    };

    const int si = static_cast<int>(std::floor((seed.real() - c.real()) / px));
    const int sj = static_cast<int>(std::floor((c.imag() - seed.imag()) / py));
    const int seed_label = classify(si, sj);
    if (seed_label == kUndecidedLabel) throw SeedUnlabeled("boundedness_evidence(): seed pixel is undecided");

    BoundednessReport report;
    for (const Window& w : windows) {
        const int nx = static_cast<int>(std::lround(w.half_width / px));
        const int ny = static_cast<int>(std::lround(w.half_height / py));
        if (si < -nx || si >= nx || sj < -ny || sj >= ny)
            throw InvalidArgument("boundedness_evidence(): seed outside the window");
        auto label_at = [&](int i, int j) -> std::optional<int> {
            if (i < -nx || i >= nx || j < -ny || j >= ny) return std::nullopt;
            return classify(i, j);
        };
        auto on_border = [&](int i, int j) { return i == -nx || i == nx - 1 || j == -ny || j == ny - 1; };
        const FillResult fill = flood_fill(si, sj, seed_label, label_at, on_border, true);
        report.windows.push_back(w);
        report.areas.push_back(static_cast<double>(fill.cells.size()) * px * py);
        report.touches_border.push_back(fill.touches_border);
        if (fill.touches_border) {
            report.bounded = false;
            return report;
        }
    }
    if (report.areas.size() == 1) {
        report.bounded = true;
    } else {
        const double last = report.areas.back();
        const double prev = report.areas[report.areas.size() - 2];
        report.bounded = std::abs(last - prev) < 0.01 * last;
    }
    return report;
}

bool has_real_coefficients(const RationalMap& r, double tol) {
    for (const Polynomial* p : {&r.numerator(), &r.denominator()}) {
        const double scale = p->max_abs_coeff();
        for (const Complex& c : p->coeffs())
            if (std::abs(c.imag()) > tol * scale) return false;
    }
    return true;
}

std::vector<double> real_roots(const Polynomial& p) {
    std::vector<double> out;
    if (p.degree() < 1) return out;
    for (const RootCluster& c : find_roots(p))
        if (std::abs(c.location.imag()) <= kRealTolerance * std::max(1.0, std::abs(c.location.real())))
            out.push_back(c.location.real());
    std::sort(out.begin(), out.end());
    return out;
}

IntervalReport interval_convergence_check(const RationalMap& r, double x1, double x2, int samples,
                                          const OrbitOptions& opts) {
    if (!(x1 < x2)) throw InvalidArgument("interval_convergence_check(): need x1 < x2");
    if (samples < 1) throw InvalidArgument("interval_convergence_check(): need at least one sample");
    if (!has_real_coefficients(r)) throw InvalidArgument("interval_convergence_check(): map is not real");
    for (double x : {x1, x2}) {
        if (std::isinf(x)) {
            if (!fixes_infinity(r)) throw NotFixed("interval_convergence_check(): infinity is not fixed");
            continue;
        }
        const SpherePoint image = eval_sphere(r, Complex(x));
        if (image.is_infinity() || std::abs(image.value() - x) > kFixedTolerance * std::max(1.0, std::abs(x)))
            throw NotFixed("interval_convergence_check(): endpoint is not fixed");
    }

    IntervalReport report;
    report.x1 = x1;
    report.x2 = x2;

    auto strictly_inside = [&](double t) {
        const double lo = std::isinf(x1) ? -std::numeric_limits<double>::infinity()
                                         : x1 + kFixedTolerance * std::max(1.0, std::abs(x1));
        const double hi = std::isinf(x2) ? std::numeric_limits<double>::infinity()
                                         : x2 - kFixedTolerance * std::max(1.0, std::abs(x2));
        return t > lo && t < hi;
    };
    const std::pair<ObstructionKind, Polynomial> scans[] = {
        {ObstructionKind::Pole, r.denominator()},
        {ObstructionKind::CriticalPoint, r.critical_polynomial()},
        {ObstructionKind::FixedPoint, r.fixed_point_polynomial()},
    };
    for (const auto& [kind, poly] : scans) {
        for (double t : real_roots(poly)) {
            if (!strictly_inside(t)) continue;
            if (!report.obstruction || t < report.obstruction->location) report.obstruction = Obstruction{kind, t};
        }
    }
    if (report.obstruction) return report;

    // Interior sample points; infinite sides are covered on a log scale.
    auto interior = [&](double s) {
        if (std::isfinite(x1) && std::isfinite(x2)) return x1 + (x2 - x1) * s;
        if (std::isfinite(x1)) return x1 + std::max(1.0, std::abs(x1)) * std::pow(10.0, -3.0 + 9.0 * s);
        if (std::isfinite(x2)) return x2 - std::max(1.0, std::abs(x2)) * std::pow(10.0, 6.0 - 9.0 * s);
        return std::sinh(20.0 * (s - 0.5));
    };
    const double probe = interior(0.5);
    const double moved = real_or_infinite(eval_sphere(r, Complex(probe)));
    const double limit = moved < probe ? x1 : x2;
    report.predicted_limit = limit;

    const double capture = opts.capture_radius * std::max(1.0, std::isfinite(limit) ? std::abs(limit) : 1.0);
    for (int j = 0; j < samples; ++j) {
        double x = interior((j + 0.5) / samples);
        bool monotone = true;
        bool reached = false;
        for (int n = 0; n <= opts.max_iter && monotone; ++n) {
            if (std::isfinite(limit) ? std::abs(x - limit) < capture : std::abs(x) > kHandoffRadius) {
                reached = true;
                break;
            }
            const double next = real_or_infinite(eval_sphere(r, Complex(x)));
            monotone = limit < x ? next < x : next > x;
            x = next;
        }
        if (reached) ++report.samples_converged;
    }
    report.verified = report.samples_converged == samples;
    return report;
}

Profile real_axis_profile(const RationalMap& r, double x_min, double x_max, int samples) {
    if (!(x_min < x_max) || samples < 2) throw InvalidArgument("real_axis_profile(): bad range or sample count");
    Profile out;
    for (double t : real_roots(r.denominator()))
        if (t >= x_min && t <= x_max) out.poles.push_back(t);
    const double step = (x_max - x_min) / (samples - 1);
    out.rows.reserve(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const double x = j == samples - 1 ? x_max : x_min + step * j;
        bool pole = false;
        for (double t : out.poles) pole = pole || std::abs(x - t) <= 0.5 * step;
        double v = std::numeric_limits<double>::quiet_NaN();
        if (!pole) {
            const SpherePoint y = eval_sphere(r, Complex(x));
            if (y.is_infinity())
                pole = true;
            else
                v = y.value().real();
        }
        out.rows.push_back({x, v, v - x, pole});
    }
    return out;
}

Profile imaginary_axis_profile(const RationalMap& r, double y_min, double y_max, int samples) {
    const Complex i(0.0, 1.0);
    const AffineMap rotate(i, 0.0);
    const RationalMap q(compose_affine(r.numerator(), rotate, -i), compose_affine(r.denominator(), rotate, 1.0),
                        r.reduced());
    return real_axis_profile(q, y_min, y_max, samples);
}

void write_profile_csv(std::ostream& os, const Profile& profile) {
    const auto old_precision = os.precision(17);
    os << "x,Hx,Hx_minus_x,pole_flag\n";
    for (const ProfileRow& row : profile.rows) {
        os << row.x << ',';
        if (!std::isnan(row.value)) os << row.value;
        os << ',';
        if (!std::isnan(row.minus_x)) os << row.minus_x;
        os << ',' << (row.pole ? 1 : 0) << '\n';
    }
    os.precision(old_precision);
}

std::string to_string(ObstructionKind k) {
    switch (k) {
        case ObstructionKind::CriticalPoint: return "critical-point";
        case ObstructionKind::Pole: return "pole";
        case ObstructionKind::FixedPoint: return "fixed-point";
    }
    return "unknown";
}

}  // namespace halley
