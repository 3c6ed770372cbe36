#include "halley/polycore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "halley/errors.hpp"

namespace halley {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Low-order coefficients this small (relative) are treated as exact zeros
// when deflating roots at the origin.
constexpr double kZeroRootTolerance = 1e-14;

struct HornerResult {
    Complex value;
    Complex first;
    double error_bound;
};

HornerResult horner_with_bound(std::span<const Complex> a, Complex z) {
    const int n = static_cast<int>(a.size()) - 1;
    Complex b = a[n];
    Complex d = 0.0;
    const double az = std::abs(z);
    double mu = std::abs(b) / 2.0;
    for (int k = n - 1; k >= 0; --k) {
        d = d * z + b;
        b = b * z + a[k];
        mu = mu * az + std::abs(b);
    }
    return {b, d, 4.0 * kEps * (2.0 * mu - std::abs(b) + 1e-300)};
}

// Unique positive root of |a_n| x^n = sum_{k<n} |a_k| x^k.
double cauchy_radius(std::span<const Complex> a) {
    const int n = static_cast<int>(a.size()) - 1;
    const double lead = std::abs(a[n]);
    double hi = 1.0;
    for (int k = 0; k < n; ++k) hi = std::max(hi, 1.0 + std::abs(a[k]) / lead);
    double lo = 0.0;
    auto excess = [&](double x) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += std::abs(a[k]) * std::pow(x, k - n);
        return lead - s;
    };
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= 0.0) break;
        (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    return hi;
}

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int i) {
        while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
        return i;
    }
    void unite(int i, int j) {
        i = find(i);
        j = find(j);
        if (i != j) parent_[std::max(i, j)] = std::min(i, j);
    }

private:
    std::vector<int> parent_;
};

// Newton on the (k-1)-th derivative: a k-fold root of p is a simple root there.
Complex polish_multiple(const Polynomial& p, Complex start, int multiplicity, double max_move) {
    Polynomial q = p;
    for (int i = 1; i < multiplicity; ++i) q = q.derivative();
    const Polynomial dq = q.derivative();
    Complex z = start;
    for (int it = 0; it < 8; ++it) {
        const Complex d = dq(z);
        if (d == 0.0) break;
        const Complex step = q(z) / d;
        z -= step;
        if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(z))) break;
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z - start) > max_move)
        return start;
    return z;
}

std::vector<RootCluster> aberth(const Polynomial& q, const RootFinderOptions& opts) {
    const auto a = q.coeffs();
    const int n = q.degree();
    if (n == 1) return {{-a[0] / a[1], 1}};

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double radius = cauchy_radius(a);
    const double sector = 2.0 * std::numbers::pi / n;
    const double offset = sector * unit(rng);
    std::vector<Complex> z(n);
    for (int i = 0; i < n; ++i) {
        const double angle = offset + sector * (i + 0.2 * (unit(rng) - 0.5));
        z[i] = std::polar(radius * (1.0 + 0.01 * unit(rng)), angle);
    }

    std::vector<char> done(n, 0);
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        bool all_done = true;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            const HornerResult h = horner_with_bound(a, z[i]);
            if (std::abs(h.value) <= h.error_bound) {
                done[i] = 1;
                continue;
            }
            all_done = false;
            Complex sum = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex diff = z[i] - z[j];
                if (diff == 0.0) diff = Complex(kEps, kEps) * std::max(1.0, std::abs(z[i]));
                sum += 1.0 / diff;
            }
            const Complex denom = h.first - h.value * sum;
            const Complex step = denom == 0.0 ? Complex(1e-8, 1e-8) * std::max(1.0, std::abs(z[i]))
                                              : h.value / denom;
            z[i] -= step;
            if (std::abs(step) <= 2.0 * kEps * std::abs(z[i])) done[i] = 1;
        }
        if (all_done) break;
    }

    std::vector<double> inclusion(n);
    const double lead = std::abs(a[n]);
    for (int i = 0; i < n; ++i) {
        const HornerResult h = horner_with_bound(a, z[i]);
        if (!done[i] && std::abs(h.value) > 1e3 * h.error_bound) {
            throw NonConvergence("root finder did not converge after " +
                                 std::to_string(opts.max_sweeps) + " sweeps (degree " +
                                 std::to_string(n) + ")");
        }
        double prod = lead;
        for (int j = 0; j < n; ++j)
            if (j != i) prod *= std::abs(z[i] - z[j]);
        const double numer = n * std::max(std::abs(h.value), h.error_bound);
        inclusion[i] = prod > 0.0 ? numer / prod : std::numeric_limits<double>::infinity();
    }

    // Overlapping inclusion discs cannot be certified as separate roots.
    DisjointSets sets(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dist = std::abs(z[i] - z[j]);
            if (dist <= opts.cluster_radius || dist <= inclusion[i] + inclusion[j]) sets.unite(i, j);
        }
    }

    std::vector<RootCluster> clusters;
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
        if (sets.find(i) != i) continue;
        members.clear();
        for (int j = 0; j < n; ++j)
            if (sets.find(j) == i) members.push_back(j);
        Complex centroid = 0.0;
        for (int j : members) centroid += z[j];
        centroid /= static_cast<double>(members.size());
        const int k = static_cast<int>(members.size());
        if (k > 1) {
            double spread = 0.0;
            for (int j : members) spread = std::max(spread, std::abs(z[j] - centroid));
            centroid = polish_multiple(q, centroid, k, spread + 1e-12);
        }
        clusters.push_back({centroid, k});
    }
    return clusters;
}

}  // namespace

namespace {
std::atomic<std::uint64_t> g_root_seed{kDefaultRootSeed};
}  // namespace

std::uint64_t default_root_seed() { return g_root_seed.load(std::memory_order_relaxed); }

void set_default_root_seed(std::uint64_t seed) { g_root_seed.store(seed, std::memory_order_relaxed); }

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::constant(Complex c) { return Polynomial(std::vector<Complex>{c}); }

Polynomial Polynomial::monomial(Complex c, int k) {
    std::vector<Complex> v(static_cast<std::size_t>(k) + 1, 0.0);
    v[k] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::identity() { return monomial(1.0, 1); }

void Polynomial::trim() {
    double scale = 0.0;
    for (const Complex& c : coeffs_) scale = std::max(scale, std::abs(c));
    const double cutoff = kTrimTolerance * scale;
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cutoff) coeffs_.pop_back();
}

Complex Polynomial::operator[](int k) const {
    if (k < 0 || k > degree()) return 0.0;
    return coeffs_[k];
}

Complex Polynomial::leading() const { return coeffs_.empty() ? Complex(0.0) : coeffs_.back(); }

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Complex Polynomial::operator()(Complex z) const {
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) throw InvalidArgument("monic(): zero polynomial");
    return *this * (1.0 / leading());
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(Complex s) {
    for (Complex& c : coeffs_) c *= s;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Complex> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
}

Derivatives eval_with_derivatives(const Polynomial& p, Complex z) {
    const auto a = p.coeffs();
    if (a.empty()) return {};
    const int n = p.degree();
    Complex v = a[n];
    Complex d1 = 0.0;
    Complex d2 = 0.0;
    for (int k = n - 1; k >= 0; --k) {
        d2 = d2 * z + d1;
        d1 = d1 * z + v;
        v = v * z + a[k];
    }
    return {v, d1, 2.0 * d2};
}

double horner_error_bound(const Polynomial& p, Complex z) {
    if (p.is_zero()) return 0.0;
    return horner_with_bound(p.coeffs(), z).error_bound;
}

Polynomial from_roots(std::span<const RootCluster> roots, Complex lead) {
    std::vector<Complex> c{lead};
    for (const RootCluster& r : roots) {
        for (int m = 0; m < r.multiplicity; ++m) {
            c.push_back(0.0);
            for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r.location * c[k];
            c[0] = -r.location * c[0];
        }
    }
    return Polynomial(std::move(c));
}

std::vector<RootCluster> find_roots(const Polynomial& p, const RootFinderOptions& opts) {
    if (p.degree() < 1) throw InvalidArgument("find_roots(): polynomial must have degree >= 1");

    const auto a = p.coeffs();
    const double scale = p.max_abs_coeff();
    int zeros = 0;
    while (zeros < p.degree() && std::abs(a[zeros]) <= kZeroRootTolerance * scale) ++zeros;

    std::vector<RootCluster> out;
    if (zeros > 0) out.push_back({0.0, zeros});
    if (zeros < p.degree()) {
        const Polynomial q(std::vector<Complex>(a.begin() + zeros, a.end()));
        auto rest = aberth(q, opts);
        out.insert(out.end(), rest.begin(), rest.end());
    }
    std::sort(out.begin(), out.end(), [](const RootCluster& x, const RootCluster& y) {
        if (x.location.real() != y.location.real()) return x.location.real() < y.location.real();
        return x.location.imag() < y.location.imag();
    });
    return out;
}

std::vector<Complex> locations(std::span<const RootCluster> roots) {
    std::vector<Complex> out;
    out.reserve(roots.size());
    for (const auto& r : roots) out.push_back(r.location);
    return out;
}

AffineMap::AffineMap(Complex a, Complex b) : a_(a), b_(b) {
    if (a == 0.0) throw InvalidArgument("AffineMap: a must be nonzero");
}

Polynomial compose_affine(const Polynomial& p, const AffineMap& t, Complex c) {
    if (c == 0.0) throw InvalidArgument("compose_affine(): c must be nonzero");
    const Polynomial linear{t.b(), t.a()};
    Polynomial acc;
    const auto a = p.coeffs();
    for (int k = p.degree(); k >= 0; --k) acc = acc * linear + Polynomial::constant(a[k]);
    return acc * c;
}

NormalizedForm normalized_form(const Polynomial& p) {
    constexpr double tol = 1e-12;
    if (p.degree() < 1) throw NotNormalized("normalized_form(): degree must be >= 1");
    if (std::abs(p.leading() - 1.0) > tol) throw NotNormalized("normalized_form(): polynomial is not monic");
    const int d = p.degree();
    if (std::abs(p[d - 1]) > tol) throw NotNormalized("normalized_form(): second coefficient is nonzero");

    NormalizedForm form;
    while (std::abs(p[form.alpha]) <= tol) ++form.alpha;
    if (form.alpha == d) {
        form.beta = 1;
        form.p0 = Polynomial::constant(1.0);
        return form;
    }
    int g = 0;
    for (int k = form.alpha + 1; k <= d; ++k)
        if (std::abs(p[k]) > tol) g = std::gcd(g, k - form.alpha);
    form.beta = g;
    std::vector<Complex> c;
    for (int k = form.alpha; k <= d; k += g) c.push_back(std::abs(p[k]) > tol ? p[k] : Complex(0.0));
    form.p0 = Polynomial(std::move(c));
    return form;
}

Polynomial expand(const NormalizedForm& form) {
    std::vector<Complex> c(static_cast<std::size_t>(form.alpha + form.beta * std::max(0, form.p0.degree())) + 1, 0.0);
    for (int j = 0; j <= form.p0.degree(); ++j) c[form.alpha + j * form.beta] = form.p0[j];
    return Polynomial(std::move(c));
}

}  // namespace halley
