#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "halley/errors.hpp"
#include "halley/ratmap.hpp"

using namespace halley;

namespace {

const Complex I(0.0, 1.0);

Polynomial z_times_zn_minus_1(int n) {
    std::vector<Complex> c(static_cast<std::size_t>(n) + 2, 0.0);
    c[1] = -1.0;
    c[n + 1] = 1.0;
    return Polynomial(c);
}

Polynomial zn_minus_1(int n) {
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1, 0.0);
    c[0] = -1.0;
    c[n] = 1.0;
    return Polynomial(c);
}

Polynomial power(const Polynomial& p, int k) {
    Polynomial out = Polynomial::constant(1.0);
    for (int i = 0; i < k; ++i) out = out * p;
    return out;
}

Complex random_point(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    return {u(rng), u(rng)};
}

// Relative agreement between a map and an independent closed form.
void check_against(const RationalMap& r, const std::function<Complex(Complex)>& closed, int samples,
                   double tol, std::uint64_t seed = 3) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        const Complex z = random_point(rng, 1.8);
        const Complex want = closed(z);
        const Complex got = r(z);
        CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
    }
}

bool contains(const std::vector<SpherePoint>& pts, const SpherePoint& q, double tol = 1e-9) {
    return std::any_of(pts.begin(), pts.end(), [&](const SpherePoint& p) { return nearly_equal(p, q, tol); });
}

// Random polynomial lead * prod (z - r_i)^{k_i} with separated roots.
Polynomial random_polynomial(std::mt19937_64& rng, int degree, bool allow_multiple) {
    std::uniform_int_distribution<int> mult(1, 3);
    std::vector<RootCluster> roots;
    int used = 0;
    while (used < degree) {
        int k = allow_multiple ? std::min(mult(rng), degree - used) : 1;
        if (roots.empty() && k == degree) k = degree - 1;
        const Complex z = random_point(rng, 1.2);
        bool ok = true;
        for (const auto& r : roots) ok = ok && std::abs(r.location - z) > 0.35;
        if (!ok) continue;
        roots.push_back({z, k});
        used += k;
    }
    return from_roots(roots, random_point(rng, 1.0) + Complex(1.2, 0.0));
}

}  // namespace

TEST_CASE("halley_of matches closed forms") {
    const Polynomial cubic{0.0, -1.0, 0.0, 1.0};  // z(z^2 - 1)
    const RationalMap h = halley_of(cubic);
    CHECK(h.degree() == 5);
    check_against(h, [](Complex z) {
        return z * z * z * (3.0 * z * z + 1.0) / (6.0 * std::pow(z, 4) - 3.0 * z * z + 1.0);
    }, 50, 1e-12);

    const RationalMap h2 = halley_of(Polynomial{0.0, 1.0, -2.0, 1.0});  // z(z-1)^2
    CHECK(h2.degree() == 3);
    check_against(h2, [](Complex z) { return 3.0 * z * z * z / (6.0 * z * z - 4.0 * z + 1.0); }, 50, 1e-10);

    const RationalMap h7 = halley_of(z_times_zn_minus_1(7));
    CHECK(h7.degree() == 15);
    check_against(h7, [](Complex z) {
        const Complex z7 = std::pow(z, 7);
        return 7.0 * std::pow(z, 8) * (4.0 * z7 + 3.0) / ((6.0 * z7 + 1.0) * (6.0 * z7 + 1.0));
    }, 50, 1e-10);
}

TEST_CASE("halley_of rejects single-root polynomials") {
    CHECK_THROWS_AS(halley_of(power(Polynomial{-2.0, 1.0}, 3)), DegenerateMap);
    CHECK_THROWS_AS(halley_of(Polynomial{4.0}), DegenerateMap);
    CHECK_THROWS_AS(konig_of(Polynomial::monomial(1.0, 4), 3), DegenerateMap);
    CHECK_THROWS_AS(chebyshev_halley_of(Polynomial::monomial(1.0, 2), 0.5), DegenerateMap);
    CHECK_THROWS_AS(konig_of(Polynomial{-1.0, 0.0, 1.0}, 1), InvalidArgument);
}

TEST_CASE("konig_of: order 2 is Newton, order 3 is Halley") {
    const Polynomial z2m1{-1.0, 0.0, 1.0};
    const RationalMap newton = konig_of(z2m1, 2);
    CHECK(newton.degree() == 2);
    check_against(newton, [](Complex z) { return (z * z + 1.0) / (2.0 * z); }, 30, 1e-12);

    const Polynomial cubic{0.0, -1.0, 0.0, 1.0};
    check_against(konig_of(cubic, 3), [](Complex z) {
        return z * z * z * (3.0 * z * z + 1.0) / (6.0 * std::pow(z, 4) - 3.0 * z * z + 1.0);
    }, 50, 1e-12);
}

TEST_CASE("chebyshev_halley_of") {
    const Polynomial z2m1{-1.0, 0.0, 1.0};
    CHECK(std::abs(chebyshev_halley_of(z2m1, 0.0)(2.0) - 1.109375) < 1e-14);

    const Polynomial cubic{0.0, -1.0, 0.0, 1.0};
    const RationalMap g = chebyshev_halley_of(cubic, 0.5);
    CHECK(g.degree() == 5);
    const RationalMap h = halley_of(cubic);
    check_against(g, [&](Complex z) { return h(z); }, 50, 1e-10);

    const Polynomial z3m1 = zn_minus_1(3);
    CHECK(std::abs(chebyshev_halley_of(z3m1, 0.5)(2.0) - halley_of(z3m1)(2.0)) < 1e-12);
}

TEST_CASE("eval_sphere") {
    const RationalMap h = halley_of(Polynomial{-1.0, 0.0, 1.0});
    CHECK(eval_sphere(h, SpherePoint::infinity()).is_infinity());

    const RationalMap hc = halley_of(Polynomial{0.0, -1.0, 0.0, 1.0});
    CHECK(std::abs(eval_sphere(hc, Complex(0.0)).value()) < 1e-15);
    CHECK(std::abs(eval_sphere(hc, Complex(2.0)).value() - 104.0 / 85.0) < 1e-14);

    // Pole: 6z^4 - 3z^2 + 1 = 0.
    const auto ps = poles(hc);
    REQUIRE(ps.size() == 4);
    CHECK(eval_sphere(hc, ps[0].location).is_infinity());

    // Large arguments go through the w = 1/z chart.
    const SpherePoint far = eval_sphere(hc, Complex(1e9, 1e9));
    REQUIRE(!far.is_infinity());
    CHECK(std::abs(far.value() / Complex(1e9, 1e9) - 0.5) < 1e-6);

    // Degree-equal and lower-degree limits at infinity.
    const RationalMap mobius(Polynomial{1.0, 2.0}, Polynomial{3.0, 4.0}, true);
    CHECK(std::abs(eval_sphere(mobius, SpherePoint::infinity()).value() - 0.5) < 1e-15);
    const RationalMap decay(Polynomial{1.0}, Polynomial{0.0, 1.0}, true);
    CHECK(std::abs(eval_sphere(decay, SpherePoint::infinity()).value()) == 0.0);
    CHECK(eval_sphere(decay, Complex(0.0)).is_infinity());

    const RationalMap unreduced(Polynomial{-1.0, 1.0}, Polynomial{-1.0, 1.0}, false);
    CHECK_THROWS_AS(eval_sphere(unreduced, Complex(1.0)), Indeterminate);
}

TEST_CASE("fixed_points") {
    const auto fp = fixed_points(halley_of(Polynomial{0.0, -1.0, 0.0, 1.0}));
    CHECK(fp.size() == 6);
    const double s = 1.0 / std::sqrt(3.0);
    for (Complex z : {Complex(0.0), Complex(1.0), Complex(-1.0), Complex(s), Complex(-s)})
        CHECK(contains(fp, z));
    CHECK(contains(fp, SpherePoint::infinity()));

    const auto fp2 = fixed_points(halley_of(Polynomial{0.0, 1.0, -2.0, 1.0}));
    CHECK(fp2.size() == 4);
    for (Complex z : {Complex(0.0), Complex(1.0), Complex(1.0 / 3.0)}) CHECK(contains(fp2, z));

    for (int n = 2; n <= 5; ++n) {
        // z^n (z - 1)
        std::vector<Complex> c(static_cast<std::size_t>(n) + 2, 0.0);
        c[n] = -1.0;
        c[n + 1] = 1.0;
        const auto f = fixed_points(halley_of(Polynomial(c)));
        CHECK(contains(f, Complex(n / (n + 1.0)), 1e-8));
    }
}

TEST_CASE("multiplier_at") {
    const Polynomial cubic{0.0, -1.0, 0.0, 1.0};
    const RationalMap h = halley_of(cubic);
    CHECK(std::abs(multiplier_at(h, Complex(1.0))) < 1e-12);
    CHECK(std::abs(multiplier_at(h, SpherePoint::infinity()) - 2.0) < 1e-12);
    CHECK(std::abs(multiplier_at(h, Complex(1.0 / std::sqrt(3.0))) - 3.0) < 1e-9);

    const RationalMap h2 = halley_of(Polynomial{0.0, 1.0, -2.0, 1.0});
    CHECK(std::abs(multiplier_at(h2, Complex(1.0 / 3.0)) - 3.0) < 1e-9);
    CHECK(std::abs(multiplier_at(h2, Complex(1.0)) - 1.0 / 3.0) < 1e-9);

    CHECK_THROWS_AS(multiplier_at(h, Complex(0.3)), NotFixed);
    const RationalMap mobius(Polynomial{1.0, 2.0}, Polynomial{3.0, 4.0}, true);
    CHECK_THROWS_AS(multiplier_at(mobius, SpherePoint::infinity()), NotFixed);
}

TEST_CASE("critical_points") {
    auto roots_of = [](const Polynomial& p) { return locations(find_roots(p)); };

    const Polynomial z3m1 = zn_minus_1(3);
    auto cp = critical_points(halley_of(z3m1), roots_of(z3m1));
    CHECK(cp.free.empty());
    CHECK(cp.at_roots.size() == 3);

    const Polynomial cubic{0.0, -1.0, 0.0, 1.0};
    cp = critical_points(halley_of(cubic), roots_of(cubic));
    REQUIRE(cp.free.size() == 2);
    for (const auto& c : cp.free) {
        CHECK(std::abs(c.location.real()) < 1e-12);
        CHECK(std::abs(std::abs(c.location.imag()) - 1.0 / std::sqrt(6.0)) < 1e-12);
    }

    const Polynomial quartic = z_times_zn_minus_1(3);
    cp = critical_points(halley_of(quartic), roots_of(quartic));
    REQUIRE(cp.free.size() == 3);
    for (const auto& c : cp.free) CHECK(std::abs(std::pow(c.location, 3) + 0.2) < 1e-12);
}

TEST_CASE("poles") {
    const Polynomial z2m1{-1.0, 0.0, 1.0};
    for (int k = 1; k <= 3; ++k) {
        const auto ps = poles(halley_of(power(z2m1, k)));
        REQUIRE(ps.size() == 2);
        for (const auto& p : ps) CHECK(std::abs(p.location * p.location + 1.0 / (2 * k + 1)) < 1e-10);
    }

    const auto p7 = poles(halley_of(z_times_zn_minus_1(7)));
    REQUIRE(p7.size() == 7);
    for (const auto& p : p7) {
        CHECK(p.multiplicity == 2);
        CHECK(std::abs(std::pow(p.location, 7) + 1.0 / 6.0) < 1e-10);
    }

    const auto p3 = poles(halley_of(zn_minus_1(3)));
    REQUIRE(p3.size() == 3);
    for (const auto& p : p3) CHECK(std::abs(std::pow(p.location, 3) + 0.5) < 1e-12);
}

TEST_CASE("local_degree_at") {
    const Polynomial cubic{0.0, -1.0, 0.0, 1.0};
    const RationalMap h = halley_of(cubic);
    for (Complex r : {Complex(0.0), Complex(1.0), Complex(-1.0)}) CHECK(local_degree_at(h, r) >= 3);
    CHECK(local_degree_at(h, Complex(1.0 / std::sqrt(3.0))) == 1);
    CHECK(local_degree_at(halley_of(Polynomial{-1.0, 0.0, 1.0}), Complex(1.0)) == 3);
    CHECK_THROWS_AS(local_degree_at(h, Complex(0.5)), NotFixed);
}

TEST_CASE("degree_census") {
    auto c = degree_census(zn_minus_1(3));
    CHECK(c.distinct_roots == 3);
    CHECK(c.special_critical_points == 1);
    CHECK(c.special_multiplicity == 2);
    CHECK(c.predicted_degree == 4);
    CHECK(halley_of(zn_minus_1(3)).degree() == 4);

    c = degree_census(Polynomial{0.0, 0.0, -1.0, 0.0, 1.0});
    CHECK(c.distinct_roots == 3);
    CHECK(c.special_critical_points == 0);
    CHECK(c.special_multiplicity == 0);
    CHECK(c.predicted_degree == 5);

    c = degree_census(Polynomial{0.0, -1.0, 0.0, 1.0});
    CHECK(c.distinct_roots == 3);
    CHECK(c.predicted_degree == 5);

    CHECK_THROWS_AS(degree_census(Polynomial::monomial(1.0, 3)), DegenerateMap);
}

TEST_CASE("scaling_check") {
    const Polynomial cubic{0.0, -1.0, 0.0, 1.0};
    CHECK(scaling_check(cubic, AffineMap::identity(), 1.0, 20));

    const Complex a(0.8, 0.6);
    CHECK(scaling_check(Polynomial{-a * a, 0.0, 1.0}, AffineMap(a, 0.0), 1.0, 20));

    for (Complex b : {Complex(3.0), Complex(0.0, 1.0), Complex(62.5144396)}) {
        CHECK(scaling_check(Polynomial{b, 6.0, 0.0, 1.0}, AffineMap(-1.0, 0.0), -1.0, 20));
    }
    std::mt19937_64 rng(9);
    CHECK(scaling_check(random_polynomial(rng, 5, true), AffineMap(Complex(0.3, -1.1), Complex(0.5, 0.25)),
                        Complex(2.0, 1.0), 40));
}

TEST_CASE("properties over a random corpus") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> deg(3, 6);
    for (int trial = 0; trial < 40; ++trial) {
        const Polynomial p = random_polynomial(rng, deg(rng), trial % 2 == 0);
        CAPTURE(trial);
        const RationalMap h = halley_of(p);
        CHECK(h.degree() == degree_census(p).predicted_degree);

        // Konig order 3 and Chebyshev-Halley sigma = 1/2 coincide with Halley.
        const RationalMap k3 = konig_of(p, 3);
        const RationalMap ch = chebyshev_halley_of(p, 0.5);
        for (int i = 0; i < 100; ++i) {
            const SpherePoint z = i == 0 ? SpherePoint::infinity() : SpherePoint(random_point(rng, 2.0));
            const SpherePoint want = eval_sphere(h, z);
            CHECK(nearly_equal(eval_sphere(k3, z), want, 1e-9));
            CHECK(nearly_equal(eval_sphere(ch, z), want, 1e-9));
        }

        // Fixed points: roots, non-root critical points of p, infinity.
        const auto roots = find_roots(p);
        std::vector<SpherePoint> expected;
        for (const auto& r : roots) expected.emplace_back(r.location);
        for (const auto& c : find_roots(p.derivative())) {
            bool is_root = false;
            for (const auto& r : roots) is_root = is_root || std::abs(r.location - c.location) < 1e-6;
            if (!is_root) expected.emplace_back(c.location);
        }
        expected.push_back(SpherePoint::infinity());
        const auto fp = fixed_points(h);
        CHECK(fp.size() == expected.size());
        for (const auto& e : expected) CHECK(contains(fp, e, 1e-6));

        // Extraneous fixed points repel.
        for (const auto& f : fp) {
            if (f.is_infinity()) continue;
            bool is_root = false;
            for (const auto& r : roots) is_root = is_root || std::abs(r.location - f.value()) < 1e-6;
            if (!is_root) CHECK(std::abs(multiplier_at(h, f)) > 1.0);
        }
    }
}

TEST_CASE("real coefficients give conjugation symmetry") {
    std::mt19937_64 rng(31);
    const Polynomial p{0.7, -1.3, 0.2, 2.0, 1.0};
    const RationalMap h = halley_of(p);
    for (int i = 0; i < 50; ++i) {
        const Complex z = random_point(rng, 2.0);
        CHECK(std::abs(h(std::conj(z)) - std::conj(h(z))) <= 1e-10 * std::max(1.0, std::abs(h(z))));
    }
}

TEST_CASE("z(z^n - 1) maps commute with rotations of order n") {
    std::mt19937_64 rng(8);
    for (int n = 2; n <= 9; ++n) {
        const RationalMap h = halley_of(z_times_zn_minus_1(n));
        const Complex lambda = std::polar(1.0, 2.0 * std::numbers::pi / n);
        for (int i = 0; i < 20; ++i) {
            const Complex z = random_point(rng, 1.5);
            CHECK(std::abs(h(lambda * z) - lambda * h(z)) <= 1e-9 * std::max(1.0, std::abs(h(z))));
        }
    }
}
