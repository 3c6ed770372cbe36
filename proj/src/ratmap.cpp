#include "halley/ratmap.hpp"

#include <cmath>
#include <random>
#include <string>

#include "halley/errors.hpp"

namespace halley {

namespace {

// Tolerance for "z is a fixed point" checks and root/critical matching.
constexpr double kFixedTolerance = 1e-6;
constexpr double kMatchTolerance = 1e-6;

double scaled(double tol, Complex z) { return tol * std::max(1.0, std::abs(z)); }

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::vector<RootCluster> require_nondegenerate(const Polynomial& p) {
    if (p.degree() < 1) throw DegenerateMap("polynomial is constant");
    auto roots = find_roots(p);
    if (roots.size() < 2)
        throw DegenerateMap("polynomial has a single distinct root; the iteration map is affine");
    return roots;
}

// p'/p = A/S with S the squarefree part and A = sum k_i prod_{j != i} (z - r_j).
struct LogDerivative {
    Polynomial s;
    Polynomial a;
};

LogDerivative log_derivative(std::span<const RootCluster> roots) {
    LogDerivative out{Polynomial::constant(1.0), Polynomial{}};
    for (const RootCluster& r : roots) {
        const Polynomial linear{-r.location, 1.0};
        out.a = out.a * linear + static_cast<double>(r.multiplicity) * out.s;
        out.s = out.s * linear;
    }
    return out;
}

// Horner for the reversed coefficient list: sum_k c_k w^{deg - k}.
Complex eval_reversed(const Polynomial& p, Complex w) {
    Complex acc = 0.0;
    for (const Complex& c : p.coeffs()) acc = acc * w + c;
    return acc;
}

const RootCluster* nearest_within(std::span<const RootCluster> clusters, Complex z, double tol) {
    const RootCluster* best = nullptr;
    double best_dist = 0.0;
    for (const RootCluster& c : clusters) {
        const double d = std::abs(c.location - z);
        if (d <= scaled(tol, z) && (best == nullptr || d < best_dist)) {
            best = &c;
            best_dist = d;
        }
    }
    return best;
}

// p / (z - r), forward when |r| <= 1 and backward otherwise; the remainder is dropped.
Polynomial deflate(const Polynomial& p, Complex r) {
    const auto a = p.coeffs();
    const int n = p.degree();
    std::vector<Complex> q(static_cast<std::size_t>(n));
    if (std::abs(r) <= 1.0) {
        Complex acc = 0.0;
        for (int k = n; k >= 1; --k) {
            acc = acc * r + a[k];
            q[k - 1] = acc;
        }
    } else {
        Complex acc = 0.0;
        for (int k = 0; k < n; ++k) {
            acc = (acc - a[k]) / r;
            q[k] = acc;
        }
    }
    return Polynomial(std::move(q));
}

bool near_any(std::span<const Complex> points, Complex z, double tol) {
    for (const Complex& p : points)
        if (std::abs(p - z) <= scaled(tol, z)) return true;
    return false;
}

}  // namespace

Complex SpherePoint::value() const {
    if (infinite_) throw InvalidArgument("SpherePoint::value(): point at infinity");
    return z_;
}

RationalMap::RationalMap(Polynomial num, Polynomial den, bool reduced)
    : num_(std::move(num)), den_(std::move(den)), reduced_(reduced) {
    if (den_.is_zero()) throw InvalidArgument("RationalMap: zero denominator");
}

Complex RationalMap::derivative(Complex z) const {
    const Derivatives n = eval_with_derivatives(num_, z);
    const Derivatives d = eval_with_derivatives(den_, z);
    return (n.first * d.value - n.value * d.first) / (d.value * d.value);
}

Polynomial RationalMap::critical_polynomial() const {
    return num_.derivative() * den_ - num_ * den_.derivative();
}

Polynomial RationalMap::fixed_point_polynomial() const {
    return num_ - Polynomial::identity() * den_;
}

RationalMap reduce(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw InvalidArgument("reduce(): zero denominator");
    if (num.is_zero()) return RationalMap({}, Polynomial::constant(1.0), true);
    if (num.degree() < 1 || den.degree() < 1) return RationalMap(num, den, true);

    std::vector<RootCluster> top = find_roots(num);
    std::vector<RootCluster> bottom = find_roots(den);
    std::vector<RootCluster> common;
    for (RootCluster& b : bottom) {
        for (RootCluster& t : top) {
            if (t.multiplicity == 0 || b.multiplicity == 0) continue;
            if (std::abs(t.location - b.location) > scaled(kCancelTolerance, b.location)) continue;
            const int k = std::min(t.multiplicity, b.multiplicity);
            t.multiplicity -= k;
            b.multiplicity -= k;
            common.push_back({t.multiplicity == 0 && b.multiplicity > 0 ? t.location : b.location, k});
        }
    }
    if (common.empty()) return RationalMap(num, den, true);

    Polynomial n = num;
    Polynomial d = den;
    for (const RootCluster& c : common) {
        for (int i = 0; i < c.multiplicity; ++i) {
            n = deflate(n, c.location);
            d = deflate(d, c.location);
        }
    }
    if (n.is_zero() || d.is_zero()) {
        std::erase_if(top, [](const RootCluster& c) { return c.multiplicity == 0; });
        std::erase_if(bottom, [](const RootCluster& c) { return c.multiplicity == 0; });
        return RationalMap(from_roots(top, num.leading()), from_roots(bottom, den.leading()), true);
    }
    return RationalMap(std::move(n), std::move(d), true);
}

// With p''/p = (A' S - A S' + A^2) / S^2 the Halley correction 2pp'/(2p'^2 - pp'')
// becomes 2AS / (A^2 - A'S + AS').
RationalMap halley_of(const Polynomial& p) {
    const auto roots = require_nondegenerate(p);
    const auto [s, a] = log_derivative(roots);
    const Polynomial den = a * a - a.derivative() * s + a * s.derivative();
    const Polynomial num = Polynomial::identity() * den - 2.0 * (a * s);
    return reduce(num, den);
}

RationalMap konig_of(const Polynomial& p, int n) {
    if (n < 2) throw InvalidArgument("konig_of(): order must be >= 2");
    (void)require_nondegenerate(p);
    // (1/p)^{(k)} = q_k / p^{k+1} with q_0 = 1, q_{k+1} = q_k' p - (k+1) q_k p'.
    const Polynomial dp = p.derivative();
    Polynomial prev = Polynomial::constant(1.0);
    Polynomial cur = prev.derivative() * p - prev * dp;
    for (int k = 1; k < n - 1; ++k) {
        Polynomial next = cur.derivative() * p - static_cast<double>(k + 1) * (cur * dp);
        prev = std::move(cur);
        cur = std::move(next);
    }
    const Polynomial num = Polynomial::identity() * cur + static_cast<double>(n - 1) * (prev * p);
    return reduce(num, cur);
}

// With M = A'S - AS' + A^2 (so pp''/p'^2 = M/A^2) the correction is
// S (2A^2 + (1 - 2 sigma) M) / (2A (A^2 - sigma M)).
RationalMap chebyshev_halley_of(const Polynomial& p, Complex sigma) {
    const auto roots = require_nondegenerate(p);
    const auto [s, a] = log_derivative(roots);
    const Polynomial a2 = a * a;
    const Polynomial m = a.derivative() * s - a * s.derivative() + a2;
    const Polynomial den = 2.0 * (a * (a2 - sigma * m));
    const Polynomial num = Polynomial::identity() * den - s * (2.0 * a2 + (1.0 - 2.0 * sigma) * m);
    return reduce(num, den);
}

bool fixes_infinity(const RationalMap& r) {
    return r.numerator().degree() > r.denominator().degree();
}

SpherePoint eval_sphere(const RationalMap& r, const SpherePoint& z) {
    const Polynomial& num = r.numerator();
    const Polynomial& den = r.denominator();
    if (z.is_infinity()) {
        if (num.degree() > den.degree()) return SpherePoint::infinity();
        if (num.degree() == den.degree()) return num.leading() / den.leading();
        return Complex(0.0);
    }
    const Complex x = z.value();
    if (std::abs(x) > kHandoffRadius) {
        const Complex w = 1.0 / x;
        const Complex rn = eval_reversed(num, w);
        const Complex rd = eval_reversed(den, w);
        if (rd == 0.0) return SpherePoint::infinity();
        const Complex out = std::pow(w, den.degree() - num.degree()) * (rn / rd);
        if (!is_finite(out)) return SpherePoint::infinity();
        return out;
    }
    const Complex n = num(x);
    const Complex d = den(x);
    if (d != 0.0 && std::abs(d) > 1e-12 * std::abs(n)) return n / d;
    const double nb = horner_error_bound(num, x);
    const double db = horner_error_bound(den, x);
    if (std::abs(d) <= db) {
        if (std::abs(n) <= nb) throw Indeterminate("eval_sphere(): numerator and denominator both vanish");
        return SpherePoint::infinity();
    }
    const Complex out = n / d;
    if (!is_finite(out)) return SpherePoint::infinity();
    return out;
}

std::vector<SpherePoint> fixed_points(const RationalMap& r, const RootFinderOptions& opts) {
    std::vector<SpherePoint> out;
    const Polynomial fp = r.fixed_point_polynomial();
    if (fp.degree() >= 1)
        for (const RootCluster& c : find_roots(fp, opts)) out.emplace_back(c.location);
    if (fixes_infinity(r)) out.push_back(SpherePoint::infinity());
    return out;
}

Complex multiplier_at(const RationalMap& r, const SpherePoint& z) {
    if (z.is_infinity()) {
        if (!fixes_infinity(r)) throw NotFixed("multiplier_at(): infinity is not fixed");
        // G(w) = 1/R(1/w) = w^{dn-dd} rd(w)/rn(w), so G'(0) = lead(den)/lead(num)
        // when dn = dd + 1 and 0 otherwise.
        if (r.numerator().degree() == r.denominator().degree() + 1)
            return r.denominator().leading() / r.numerator().leading();
        return 0.0;
    }
    const Complex x = z.value();
    const SpherePoint image = eval_sphere(r, z);
    if (image.is_infinity() || std::abs(image.value() - x) > scaled(kFixedTolerance, x))
        throw NotFixed("multiplier_at(): point is not fixed");
    return r.derivative(x);
}

CriticalPoints critical_points(const RationalMap& r, std::span<const Complex> roots,
                               const RootFinderOptions& opts) {
    CriticalPoints out;
    const Polynomial w = r.critical_polynomial();
    if (w.degree() < 1) return out;
    for (const RootCluster& c : find_roots(w, opts)) {
        (near_any(roots, c.location, kMatchTolerance) ? out.at_roots : out.free).push_back(c);
    }
    return out;
}

std::vector<RootCluster> poles(const RationalMap& r, const RootFinderOptions& opts) {
    if (r.denominator().degree() < 1) return {};
    return find_roots(r.denominator(), opts);
}

int local_degree_at(const RationalMap& r, Complex z0, const RootFinderOptions& opts) {
    const SpherePoint image = eval_sphere(r, z0);
    if (image.is_infinity() || std::abs(image.value() - z0) > scaled(kFixedTolerance, z0))
        throw NotFixed("local_degree_at(): point is not fixed");
    const Polynomial w = r.critical_polynomial();
    if (w.degree() < 1) return 1;
    const auto clusters = find_roots(w, opts);
    const RootCluster* hit = nearest_within(clusters, z0, kMatchTolerance);
    return hit == nullptr ? 1 : 1 + hit->multiplicity;
}

DegreeCensus degree_census(const Polynomial& p, const RootFinderOptions& opts) {
    if (p.degree() < 1) throw DegenerateMap("degree_census(): constant polynomial");
    const auto roots = find_roots(p, opts);
    if (roots.size() < 2) throw DegenerateMap("degree_census(): fewer than two distinct roots");
    DegreeCensus census;
    census.distinct_roots = static_cast<int>(roots.size());
    const auto root_locations = locations(roots);
    const Polynomial dp = p.derivative();
    if (dp.degree() >= 1) {
        for (const RootCluster& c : find_roots(dp, opts)) {
            if (near_any(root_locations, c.location, kMatchTolerance) || c.multiplicity < 2) continue;
            ++census.special_critical_points;
            census.special_multiplicity += c.multiplicity;
        }
    }
    census.predicted_degree =
        2 * census.distinct_roots + census.special_critical_points - census.special_multiplicity - 1;
    return census;
}

bool nearly_equal(const SpherePoint& a, const SpherePoint& b, double rel) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
    const Complex x = a.value();
    const Complex y = b.value();
    return std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)});
}

bool scaling_check(const Polynomial& p, const AffineMap& t, Complex c, int samples, std::uint64_t seed) {
    const Polynomial q = compose_affine(p, t, c);
    const RationalMap hq = halley_of(q);
    const RationalMap hp = halley_of(p);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int i = 0; i < samples; ++i) {
        const Complex z(coord(rng), coord(rng));
        const SpherePoint lhs = eval_sphere(hq, z);
        const SpherePoint inner = eval_sphere(hp, t(z));
        const SpherePoint rhs = inner.is_infinity() ? inner : SpherePoint(t.inverse(inner.value()));
        if (!nearly_equal(lhs, rhs, 1e-8)) return false;
    }
    return true;
}

}  // namespace halley
