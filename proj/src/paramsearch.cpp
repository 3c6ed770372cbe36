#include "halley/paramsearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "halley/errors.hpp"

namespace halley {

namespace {

constexpr int kCycleDegree = 6;
constexpr double kSampleRadius = 10.0;
constexpr double kHeldOutTolerance = 1e-6;
constexpr double kCycleTolerance = 1e-8;

// (b - 20)^5 [N_b(xi) - D_b(xi)] evaluated directly.
Complex cycle_condition_at(Complex b) {
    const Complex xi = xi_of(b);
    const Complex n = std::pow(xi, 5) - 2.0 * std::pow(xi, 3) - 2.0 * b * xi * xi - 2.0 * b;
    const Complex d = 2.0 * std::pow(xi, 4) + 6.0 * xi * xi - b * xi + 12.0;
    return std::pow(b - 20.0, 5) * (n - d);
}

bool excluded(Complex b) {
    const Complex s(0.0, 4.0 * std::numbers::sqrt2);
    return std::abs(b) < 1e-12 || std::abs(b - s) < 1e-12 || std::abs(b + s) < 1e-12;
}

std::pair<Complex, double> two_step(const RationalMap& h, Complex start) {
    const SpherePoint xi = eval_sphere(h, start);
    if (xi.is_infinity()) return {Complex(std::nan(""), 0.0), std::numeric_limits<double>::infinity()};
    const SpherePoint back = eval_sphere(h, xi);
    if (back.is_infinity()) return {xi.value(), std::numeric_limits<double>::infinity()};
    return {xi.value(), std::abs(back.value() - start)};
}

}  // namespace

RationalMap halley_b(Complex b) {
    if (excluded(b)) throw ExcludedParameter("halley_b(): b must avoid 0 and +-4i sqrt(2)");
    return RationalMap(Polynomial{-2.0 * b, 0.0, -2.0 * b, -2.0, 0.0, 1.0}, Polynomial{12.0, -b, 6.0, 0.0, 2.0},
                       true);
}

Complex xi_of(Complex b) {
    if (std::abs(b - 20.0) < 1e-14 * 20.0) throw PoleAtTwenty("xi_of(): b = 20");
    return (1.0 + 4.0 * b) / (b - 20.0);
}

Polynomial cycle_condition_polynomial() {
    const int m = kCycleDegree + 1;
    std::vector<Complex> values(m);
    std::vector<Complex> nodes(m);
    for (int j = 0; j < m; ++j) {
        nodes[j] = std::polar(kSampleRadius, 2.0 * std::numbers::pi * j / m);
        values[j] = cycle_condition_at(nodes[j]);
    }
    std::vector<Complex> coeffs(m);
    for (int k = 0; k < m; ++k) {
        Complex acc = 0.0;
        for (int j = 0; j < m; ++j) acc += values[j] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / m);
        coeffs[k] = acc / (static_cast<double>(m) * std::pow(kSampleRadius, k));
    }
    // The polynomial has real coefficients; drop the rounding residue.
    for (Complex& c : coeffs) c = Complex(c.real(), 0.0);
    Polynomial p(coeffs);

    for (Complex b : {Complex(3.0), Complex(-5.0, 2.0)}) {
        const Complex direct = cycle_condition_at(b);
        if (std::abs(p(b) - direct) > kHeldOutTolerance * std::max(1.0, std::abs(direct)))
            throw InterpolationInconsistent("cycle_condition_polynomial(): held-out sample disagrees");
    }
    const LinearDivision div = divide_by_linear(p, -7.0);
    if (std::abs(div.remainder) > kHeldOutTolerance * p.max_abs_coeff())
        throw InterpolationInconsistent("cycle_condition_polynomial(): b = -7 is not a root");
    return p;
}

LinearDivision divide_by_linear(const Polynomial& p, Complex a) {
    const auto c = p.coeffs();
    const int n = p.degree();
    if (n < 1) return {Polynomial{}, n == 0 ? c[0] : Complex(0.0)};
    std::vector<Complex> q(static_cast<std::size_t>(n));
    Complex acc = 0.0;
    for (int k = n; k >= 1; --k) {
        acc = acc * a + c[k];
        q[k - 1] = acc;
    }
    return {Polynomial(std::move(q)), acc * a + c[0]};
}

Polynomial cycle_quintic() {
    const Polynomial q = divide_by_linear(cycle_condition_polynomial(), -7.0).quotient;
    return (10.0 / q.leading()) * q;
}

std::vector<Complex> roots_of_F() {
    std::vector<Complex> out = locations(find_roots(cycle_quintic()));
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

CycleCandidate verify_cycle(Complex b) {
    const RationalMap h = halley_b(b);
    for (Complex start : {Complex(1.0), Complex(-1.0)}) {
        const auto [xi, residual] = two_step(h, start);
        if (!(residual < kCycleTolerance)) continue;
        return {b, start, xi, h.derivative(start) * h.derivative(xi), residual};
    }
    throw NoCycle("verify_cycle(): neither critical point returns after two steps");
}

bool conjugacy_check(Complex b, int samples, std::uint64_t seed) {
    const RationalMap hb = halley_b(b);
    const RationalMap hm = halley_b(-b);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int i = 0; i < samples; ++i) {
        const Complex z(coord(rng), coord(rng));
        const SpherePoint lhs = eval_sphere(hb, -z);
        const SpherePoint inner = eval_sphere(hm, z);
        const SpherePoint rhs = inner.is_infinity() ? inner : SpherePoint(-inner.value());
        if (!nearly_equal(lhs, rhs, 1e-9)) return false;
    }
    return true;
}

}  // namespace halley
