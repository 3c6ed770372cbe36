#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "halley/errors.hpp"
#include "halley/polycore.hpp"

using namespace halley;

namespace {

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

bool has_root(const std::vector<RootCluster>& roots, Complex z, int mult, double tol = 1e-9) {
    return std::any_of(roots.begin(), roots.end(), [&](const RootCluster& r) {
        return r.multiplicity == mult && close(r.location, z, tol);
    });
}

int total_multiplicity(const std::vector<RootCluster>& roots) {
    int s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
}

Complex random_point(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    return {u(rng), u(rng)};
}

}  // namespace

TEST_CASE("eval_with_derivatives on small polynomials") {
    const Polynomial z2m1{-1.0, 0.0, 1.0};
    auto d = eval_with_derivatives(z2m1, 2.0);
    CHECK(d.value == Complex(3.0));
    CHECK(d.first == Complex(4.0));
    CHECK(d.second == Complex(2.0));

    // z^3 + 6z + b at z = 1 gives (7 + b, 9, 6).
    const Complex b(2.5, -1.0);
    d = eval_with_derivatives(Polynomial{b, 6.0, 0.0, 1.0}, 1.0);
    CHECK(close(d.value, 7.0 + b, 1e-15));
    CHECK(d.first == Complex(9.0));
    CHECK(d.second == Complex(6.0));

    // (z^2 - 1)^2 = z^4 - 2z^2 + 1 at 0.
    d = eval_with_derivatives(Polynomial{1.0, 0.0, -2.0, 0.0, 1.0}, 0.0);
    CHECK(d.value == Complex(1.0));
    CHECK(d.first == Complex(0.0));
    CHECK(d.second == Complex(-4.0));
}

TEST_CASE("eval_with_derivatives matches central differences") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Complex> c(deg(rng) + 1);
        for (auto& x : c) x = random_point(rng, 2.0);
        const Polynomial p(c);
        const Polynomial dp = p.derivative();
        const Complex z = random_point(rng, 1.5);
        const double h = 1e-5;
        const Complex fd1 = (p(z + h) - p(z - h)) / (2 * h);
        const Complex fd2 = (dp(z + h) - dp(z - h)) / (2 * h);
        const auto d = eval_with_derivatives(p, z);
        CHECK(std::abs(d.value - p(z)) <= 1e-12 * std::max(1.0, std::abs(d.value)));
        CHECK(std::abs(d.first - fd1) <= 1e-6 * std::max(1.0, std::abs(d.first)));
        CHECK(std::abs(d.second - fd2) <= 1e-6 * std::max(1.0, std::abs(d.second)));
    }
}

TEST_CASE("polynomial construction trims and handles zero") {
    CHECK(Polynomial{}.degree() == -1);
    CHECK(Polynomial{0.0, 0.0}.is_zero());
    CHECK(Polynomial{1.0, 2.0, 1e-20}.degree() == 1);
    const Polynomial p{1.0, 1.0};
    CHECK((p * p).degree() == 2);
    CHECK((p - p).is_zero());
    CHECK_THROWS_AS(Polynomial{}.monic(), InvalidArgument);
}

TEST_CASE("find_roots on named examples") {
    auto r = find_roots(Polynomial{-1.0, 0.0, 1.0});
    CHECK(r.size() == 2);
    CHECK(has_root(r, 1.0, 1));
    CHECK(has_root(r, -1.0, 1));

    // z (z - 1)^2 = z^3 - 2z^2 + z
    r = find_roots(Polynomial{0.0, 1.0, -2.0, 1.0});
    CHECK(r.size() == 2);
    CHECK(has_root(r, 0.0, 1));
    CHECK(has_root(r, 1.0, 2));

    // z^3 + 6z
    r = find_roots(Polynomial{0.0, 6.0, 0.0, 1.0});
    CHECK(r.size() == 3);
    CHECK(has_root(r, 0.0, 1));
    CHECK(has_root(r, Complex(0.0, std::sqrt(6.0)), 1));
    CHECK(has_root(r, Complex(0.0, -std::sqrt(6.0)), 1));
}

TEST_CASE("find_roots merges clusters of multiple roots") {
    const Polynomial z2m1{-1.0, 0.0, 1.0};
    for (int k = 1; k <= 4; ++k) {
        Polynomial p = Polynomial::constant(1.0);
        for (int i = 0; i < k; ++i) p = p * z2m1;
        const auto r = find_roots(p);
        REQUIRE(r.size() == 2);
        CHECK(has_root(r, 1.0, k, 1e-8));
        CHECK(has_root(r, -1.0, k, 1e-8));
    }
    // Mixed multiplicities with complex locations.
    const std::vector<RootCluster> wanted{{{0.3, 0.4}, 3}, {{-0.7, 0.1}, 1}, {{0.2, -0.9}, 2}};
    const auto r = find_roots(from_roots(wanted, Complex(1.5, -0.5)));
    REQUIRE(r.size() == 3);
    for (const auto& s : wanted) CHECK(has_root(r, s.location, s.multiplicity, 1e-8));
    CHECK(total_multiplicity(r) == 6);
}

TEST_CASE("find_roots expansion reproduces coefficients for well-separated roots") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = deg(rng);
        std::vector<RootCluster> truth;
        while (static_cast<int>(truth.size()) < n) {
            const Complex z = random_point(rng, 2.0);
            bool ok = true;
            for (const auto& t : truth) ok = ok && std::abs(t.location - z) > 0.2;
            if (ok) truth.push_back({z, 1});
        }
        const Complex lead = random_point(rng, 2.0) + Complex(0.1, 0.0);
        const Polynomial p = from_roots(truth, lead);
        const auto found = find_roots(p);
        CHECK(total_multiplicity(found) == n);
        const Polynomial rebuilt = from_roots(found, p.leading());
        const double scale = p.max_abs_coeff();
        for (int k = 0; k <= n; ++k) CHECK(std::abs(rebuilt[k] - p[k]) <= 1e-8 * scale);
        for (const auto& f : found) CHECK(std::abs(p(f.location)) <= 1e-9 * scale);
    }
}

TEST_CASE("find_roots rejects constants and reports non-convergence") {
    CHECK_THROWS_AS(find_roots(Polynomial{3.0}), InvalidArgument);
    std::vector<Complex> c(13, 0.0);
    c[0] = -1.0;
    c[12] = 1.0;
    RootFinderOptions opts;
    opts.max_sweeps = 1;
    CHECK_THROWS_AS(find_roots(Polynomial(c), opts), NonConvergence);
}

TEST_CASE("compose_affine") {
    const Polynomial z2m1{-1.0, 0.0, 1.0};
    const Polynomial same = compose_affine(z2m1, AffineMap::identity(), 1.0);
    for (int k = 0; k <= 2; ++k) CHECK(same[k] == z2m1[k]);

    const Complex a(1.5, 0.5);
    const Polynomial p{-a * a, 0.0, 1.0};
    const Polynomial scaled = compose_affine(p, AffineMap(a, 0.0), 1.0 / (a * a));
    CHECK(close(scaled[0], -1.0, 1e-14));
    CHECK(close(scaled[1], 0.0, 1e-14));
    CHECK(close(scaled[2], 1.0, 1e-14));

    const Polynomial shifted = compose_affine(z2m1, AffineMap(1.0, 1.0), 1.0);
    CHECK(shifted.degree() == 2);
    CHECK(close(shifted[0], 0.0, 1e-15));
    CHECK(close(shifted[1], 2.0, 1e-15));
    CHECK(close(shifted[2], 1.0, 1e-15));

    CHECK_THROWS_AS(compose_affine(z2m1, AffineMap::identity(), 0.0), InvalidArgument);
    CHECK_THROWS_AS(AffineMap(0.0, 1.0), InvalidArgument);
}

TEST_CASE("normalized_form") {
    auto f = normalized_form(Polynomial{0.0, -1.0, 0.0, 1.0});
    CHECK(f.alpha == 1);
    CHECK(f.beta == 2);
    CHECK(f.p0.degree() == 1);
    CHECK(f.p0[0] == Complex(-1.0));

    f = normalized_form(Polynomial{0.0, -1.0, 0.0, 0.0, 1.0});
    CHECK(f.alpha == 1);
    CHECK(f.beta == 3);
    CHECK(f.p0[0] == Complex(-1.0));

    f = normalized_form(Polynomial::monomial(1.0, 5));
    CHECK(f.alpha == 5);
    CHECK(f.beta == 1);
    CHECK(f.p0.degree() == 0);

    f = normalized_form(Polynomial{0.0, 0.0, -1.0, 0.0, 1.0});
    CHECK(f.alpha == 2);
    CHECK(f.beta == 2);

    CHECK_THROWS_AS(normalized_form(Polynomial{-1.0, 0.0, 2.0}), NotNormalized);
    CHECK_THROWS_AS(normalized_form(Polynomial{0.0, 1.0, 1.0}), NotNormalized);
}

TEST_CASE("normalized_form round-trips") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> small(0, 3);
    std::uniform_int_distribution<int> terms(1, 3);
    for (int trial = 0; trial < 100; ++trial) {
        const int alpha = small(rng);
        const int beta = 1 + small(rng);
        const int m = terms(rng);
        std::vector<Complex> c(static_cast<std::size_t>(m) + 1);
        for (auto& x : c) x = random_point(rng, 3.0);
        c[m] = 1.0;
        if (beta == 1 && m >= 1) c[m - 1] = 0.0;
        NormalizedForm built{alpha, beta, Polynomial(c)};
        const Polynomial p = expand(built);
        const auto f = normalized_form(p);
        const Polynomial back = expand(f);
        REQUIRE(back.degree() == p.degree());
        for (int k = 0; k <= p.degree(); ++k) CHECK(std::abs(back[k] - p[k]) <= 1e-12);
        CHECK(f.beta % beta == 0);
    }
}
