#pragma once

// Exact arithmetic and linear algebra over Q[t, t^-1].

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tbound/matrix.hpp"

namespace tbound {

using Rational = mpq_class;
using Integer = mpz_class;

/// Rational Laurent polynomial sum_e c_e t^e, stored densely from the lowest
/// nonzero exponent. The zero polynomial has no coefficients; otherwise the
/// first and last stored coefficients are nonzero.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(const Rational& c) : LaurentPoly(c, 0) {}  // NOLINT: implicit scalar promotion
    LaurentPoly(int c) : LaurentPoly(Rational(c), 0) {}    // NOLINT
    LaurentPoly(const Rational& c, std::int64_t exponent);

    /// Coefficients ascending from `low`.
    static LaurentPoly from_coeffs(std::int64_t low, std::vector<Rational> coeffs);
    static LaurentPoly t(std::int64_t exponent = 1) { return LaurentPoly(Rational(1), exponent); }

    bool is_zero() const { return coeffs_.empty(); }
    /// Nonzero monomial r t^i: the units of the ring.
    bool is_unit() const { return coeffs_.size() == 1; }

    std::int64_t low() const { return low_; }
    std::int64_t high() const { return low_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
    /// high - low; the Euclidean size on Q[t, t^-1]. Zero for units.
    std::int64_t span() const { return coeffs_.empty() ? 0 : high() - low(); }

    Rational coeff(std::int64_t exponent) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& leading() const { return coeffs_.back(); }
    const Rational& trailing() const { return coeffs_.front(); }

    LaurentPoly shifted(std::int64_t k) const;  // times t^k
    LaurentPoly reciprocal() const;              // p(1/t)

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly operator-() const;

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
    }

    /// Human-readable form, descending exponents: "t^2 - 3*t + 1".
    std::string to_string() const;

private:
    void trim();

    std::int64_t low_ = 0;
    std::vector<Rational> coeffs_;
};

using LaurentMatrix = Matrix<LaurentPoly>;

/// Canonical associate: lowest exponent 0, coprime integer coefficients,
/// positive leading coefficient. Units map to 1, zero to zero.
LaurentPoly normalize(const LaurentPoly& p);
bool associate(const LaurentPoly& p, const LaurentPoly& q);

struct LaurentDivision {
    LaurentPoly quotient;
    LaurentPoly remainder;  // span(remainder) < span(divisor), or zero
};
/// Euclidean division in Q[t, t^-1] with respect to span.
LaurentDivision divmod(const LaurentPoly& a, const LaurentPoly& b);
bool divides(const LaurentPoly& d, const LaurentPoly& a);
/// a / b, throwing std::domain_error if b does not divide a.
LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly gcd(const LaurentPoly& p, const LaurentPoly& q);

/// Ordinary derivative of the polynomial part (p shifted to low exponent 0).
LaurentPoly derivative_of_polynomial_part(const LaurentPoly& p);

/// Square-free factorization of normalize(p): factors[i] has multiplicity i+1.
std::vector<LaurentPoly> squarefree_decomposition(const LaurentPoly& p);

/// Sum of absolute coefficient values.
Rational norm_l1(const LaurentPoly& p);

/// 1 + sum |b_i| for the monic polynomial with the same nonzero roots as p.
Rational cauchy_root_radius(const LaurentPoly& p);

/// Monic polynomial with the nonzero roots of p (lowest exponent 0).
LaurentPoly monic_part(const LaurentPoly& p);

// --- Matrices over Q[t, t^-1] ---

LaurentPoly determinant(const LaurentMatrix& a);
std::size_t rank(const LaurentMatrix& a);

struct SmithForm {
    std::vector<LaurentPoly> invariant_factors;  // normalized, nonzero, each divides the next
    LaurentMatrix u;                             // rows x rows, unimodular
    LaurentMatrix v;                             // cols x cols, unimodular
    LaurentMatrix d;                             // u * a * v
};
SmithForm smith_normal_form(const LaurentMatrix& a);
/// Checks u*a*v == d, d diagonal with the invariant factors, det(u), det(v) units.
bool verify_smith_certificate(const LaurentMatrix& a, const SmithForm& s);

// --- Numeric roots ---

struct ComplexRoot {
    double re = 0;
    double im = 0;
    double modulus = 0;
    int multiplicity = 1;
};

class RootFindingError : public std::runtime_error {
public:
    explicit RootFindingError(const std::string& what) : std::runtime_error(what) {}
};

/// Nonzero roots of p with multiplicities, found by Aberth-Ehrlich iteration in
/// quad precision on each square-free factor. Roots within sqrt(tol) are merged.
/// Sorted by (modulus, argument).
std::vector<ComplexRoot> complex_roots(const LaurentPoly& p, double tol);

}  // namespace tbound
