#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "halley/classify.hpp"

using namespace halley;

namespace {

const FixedPointRecord* at(const std::vector<FixedPointRecord>& recs, Complex z, double tol = 1e-8) {
    for (const auto& r : recs)
        if (!r.location.is_infinity() && std::abs(r.location.value() - z) < tol) return &r;
    return nullptr;
}

const FixedPointRecord* at_infinity(const std::vector<FixedPointRecord>& recs) {
    for (const auto& r : recs)
        if (r.location.is_infinity()) return &r;
    return nullptr;
}

Complex random_point(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    return {u(rng), u(rng)};
}

}  // namespace

TEST_CASE("classify_multiplier bands") {
    CHECK(classify_multiplier(0.0) == FixedPointClass::Superattracting);
    CHECK(classify_multiplier(5e-9) == FixedPointClass::Superattracting);
    CHECK(classify_multiplier(1.0 / 3.0) == FixedPointClass::Attracting);
    CHECK(classify_multiplier(3.0) == FixedPointClass::Repelling);
    CHECK(classify_multiplier(Complex(-1.0, 0.0)) == FixedPointClass::RationallyIndifferent);
    CHECK(classify_multiplier(std::polar(1.0, 2.0 * std::acos(-1.0) / 7.0)) ==
          FixedPointClass::RationallyIndifferent);
    CHECK(classify_multiplier(std::polar(1.0, 2.0 * std::acos(-1.0) * (std::sqrt(5.0) - 1.0) / 2.0)) ==
          FixedPointClass::IrrationallyIndifferent);
}

TEST_CASE("z(z^2 - 1)") {
    const Polynomial p{0.0, -1.0, 0.0, 1.0};
    const auto recs = classify_fixed_points(p, halley_of(p));
    CHECK(recs.size() == 6);
    for (Complex z : {Complex(0.0), Complex(1.0), Complex(-1.0)}) {
        const auto* r = at(recs, z);
        REQUIRE(r != nullptr);
        CHECK(r->kind == FixedPointClass::Superattracting);
        CHECK(r->origin == FixedPointOrigin::RootOfP);
    }
    for (double s : {1.0, -1.0}) {
        const auto* r = at(recs, s / std::sqrt(3.0));
        REQUIRE(r != nullptr);
        CHECK(r->kind == FixedPointClass::Repelling);
        CHECK(std::abs(r->multiplier - 3.0) < 1e-9);
    }
    const auto* inf = at_infinity(recs);
    REQUIRE(inf != nullptr);
    CHECK(inf->kind == FixedPointClass::Repelling);
    CHECK(std::abs(inf->multiplier - 2.0) < 1e-12);
    CHECK(extraneous_fixed_points(recs).size() == 2);
}

TEST_CASE("(z^2 - 1)^2 has attracting roots with multiplier 1/3") {
    const Polynomial p{1.0, 0.0, -2.0, 0.0, 1.0};
    const auto recs = classify_fixed_points(p, halley_of(p));
    for (Complex z : {Complex(1.0), Complex(-1.0)}) {
        const auto* r = at(recs, z);
        REQUIRE(r != nullptr);
        CHECK(r->kind == FixedPointClass::Attracting);
        CHECK(r->multiplicity == 2);
        CHECK(std::abs(r->multiplier - 1.0 / 3.0) < 1e-9);
    }
}

TEST_CASE("z^2 (z - 1) has extraneous 2/3 with multiplier 3") {
    const Polynomial p{0.0, 0.0, -1.0, 1.0};
    const auto ex = extraneous_fixed_points(classify_fixed_points(p, halley_of(p)));
    REQUIRE(ex.size() == 1);
    CHECK(std::abs(ex[0].location.value() - 2.0 / 3.0) < 1e-9);
    CHECK(std::abs(ex[0].multiplier - 3.0) < 1e-9);
}

TEST_CASE("extraneous_fixed_points on named polynomials") {
    // z^3 - 1: the double critical point 0, multiplier 1 + 2/2.
    Polynomial p{-1.0, 0.0, 0.0, 1.0};
    auto ex = extraneous_fixed_points(classify_fixed_points(p, halley_of(p)));
    REQUIRE(ex.size() == 1);
    CHECK(std::abs(ex[0].location.value()) < 1e-9);
    CHECK(ex[0].multiplicity == 2);
    CHECK(std::abs(ex[0].multiplier - 2.0) < 1e-9);

    // z(z^3 - 1): z^3 = 1/4.
    p = Polynomial{0.0, -1.0, 0.0, 0.0, 1.0};
    ex = extraneous_fixed_points(classify_fixed_points(p, halley_of(p)));
    REQUIRE(ex.size() == 3);
    for (const auto& r : ex) {
        CHECK(std::abs(std::pow(r.location.value(), 3) - 0.25) < 1e-10);
        CHECK(r.kind == FixedPointClass::Repelling);
    }

    // (z - 1)(z + 2)^2: (bk + am)/(k + m) with a = 1, k = 1, b = -2, m = 2.
    p = Polynomial{-1.0, 1.0} * Polynomial{2.0, 1.0} * Polynomial{2.0, 1.0};
    ex = extraneous_fixed_points(classify_fixed_points(p, halley_of(p)));
    REQUIRE(ex.size() == 1);
    CHECK(std::abs(ex[0].location.value() - (-2.0 * 1.0 + 1.0 * 2.0) / 3.0) < 1e-9);
}

TEST_CASE("mismatch is reported for a map that is not Halley's") {
    const Polynomial p{0.0, -1.0, 0.0, 1.0};
    CHECK_THROWS_AS(classify_fixed_points(p, konig_of(p, 2)), PropositionMismatch);
    try {
        classify_fixed_points(p, konig_of(p, 4));
        FAIL("expected a mismatch");
    } catch (const FixedPointMismatch& e) {
        CHECK(std::string(e.what()).size() > 0);
    }
}

TEST_CASE("random corpus: predictions hold and the count is deg + 1") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> deg(3, 6);
    std::uniform_int_distribution<int> mult(1, 3);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = deg(rng);
        std::vector<RootCluster> roots;
        int used = 0;
        while (used < d) {
            int k = std::min(mult(rng), d - used);
            if (roots.empty() && k == d) k = d - 1;
            const Complex z = random_point(rng, 1.5);
            bool ok = true;
            for (const auto& r : roots) ok = ok && std::abs(r.location - z) > 0.3;
            if (!ok) continue;
            roots.push_back({z, k});
            used += k;
        }
        const Polynomial p = from_roots(roots, Complex(1.0, 0.5));
        CAPTURE(trial);
        const RationalMap h = halley_of(p);
        std::vector<FixedPointRecord> recs;
        REQUIRE_NOTHROW(recs = classify_fixed_points(p, h));
        CHECK(static_cast<int>(recs.size()) == h.degree() + 1);
        for (const auto& r : recs) {
            CHECK(r.origin != FixedPointOrigin::Other);
            CHECK(r.kind != FixedPointClass::RationallyIndifferent);
            CHECK(r.kind != FixedPointClass::IrrationallyIndifferent);
        }
        for (const auto& r : extraneous_fixed_points(recs)) CHECK(r.kind == FixedPointClass::Repelling);
    }
}
