#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace halley {

using Complex = std::complex<double>;

/// Relative magnitude below which trailing (leading-degree) coefficients are
/// dropped when a polynomial is built.
inline constexpr double kTrimTolerance = 1e-12;

/// Dense polynomial with complex coefficients stored in ascending degree
/// order. The zero polynomial has no coefficients and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);
    Polynomial(std::initializer_list<Complex> coeffs);

    static Polynomial constant(Complex c);
    /// c * z^k
    static Polynomial monomial(Complex c, int k);
    /// The polynomial z.
    static Polynomial identity();

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    std::span<const Complex> coeffs() const { return coeffs_; }
    /// Coefficient of z^k, zero outside the stored range.
    Complex operator[](int k) const;
    Complex leading() const;
    double max_abs_coeff() const;

    Complex operator()(Complex z) const;
    Polynomial derivative() const;

    /// Leading coefficient 1; throws on the zero polynomial.
    Polynomial monic() const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(Complex s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
    friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a) { return a *= -1.0; }

private:
    void trim();

    std::vector<Complex> coeffs_;
};

/// Value and first two derivatives at a point.
struct Derivatives {
    Complex value;
    Complex first;
    Complex second;
};

/// Simultaneous Horner evaluation of p, p', p''.
Derivatives eval_with_derivatives(const Polynomial& p, Complex z);

/// Running rounding-error bound for Horner evaluation of p at z.
double horner_error_bound(const Polynomial& p, Complex z);

/// A root location together with its multiplicity.
struct RootCluster {
    Complex location;
    int multiplicity = 1;
};

/// Expands lead * prod (z - r_i)^{k_i}.
Polynomial from_roots(std::span<const RootCluster> roots, Complex lead = 1.0);

inline constexpr std::uint64_t kDefaultRootSeed = 0x5eed'a11e'11ULL;

/// Process-wide seed picked up by default-constructed RootFinderOptions.
std::uint64_t default_root_seed();
void set_default_root_seed(std::uint64_t seed);

struct RootFinderOptions {
    int max_sweeps = 200;
    /// Approximations closer than this (absolute) always merge.
    double cluster_radius = 1e-6;
    /// Seeds the random perturbation of the starting points.
    std::uint64_t seed = default_root_seed();
};

/// All roots of p via Aberth-Ehrlich iteration followed by cluster merging.
/// Multiplicities sum to deg p. Throws NonConvergence when the residuals are
/// still above rounding level after `max_sweeps`.
std::vector<RootCluster> find_roots(const Polynomial& p, const RootFinderOptions& opts = {});

/// Flattens clusters into a plain list of distinct locations.
std::vector<Complex> locations(std::span<const RootCluster> roots);

/// T(z) = a z + b with a != 0.
class AffineMap {
public:
    AffineMap(Complex a, Complex b);

    static AffineMap identity() { return {1.0, 0.0}; }

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex operator()(Complex z) const { return a_ * z + b_; }
    Complex inverse(Complex w) const { return (w - b_) / a_; }

private:
    Complex a_;
    Complex b_;
};

/// Coefficients of c * p(a z + b).
Polynomial compose_affine(const Polynomial& p, const AffineMap& t, Complex c);

/// p(z) = z^alpha * p0(z^beta) with beta maximal.
struct NormalizedForm {
    int alpha = 0;
    int beta = 1;
    Polynomial p0;
};

/// Decomposes a normalized (monic, zero second coefficient) polynomial.
/// Throws NotNormalized otherwise. Monomials get beta = 1 and p0 = 1.
NormalizedForm normalized_form(const Polynomial& p);

/// Rebuilds z^alpha * p0(z^beta).
Polynomial expand(const NormalizedForm& form);

}  // namespace halley
