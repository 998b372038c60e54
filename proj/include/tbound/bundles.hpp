#pragma once

// Algebraic monodromy of rational-homology surface bundles, torus mapping tori
// and the characteristic-polynomial side of the root bound.

#include <string>
#include <utility>
#include <vector>

#include "tbound/laurent.hpp"
#include "tbound/presentation.hpp"
#include "tbound/torsion.hpp"

namespace tbound {

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

Rational determinant(const RationalMatrix& a);
RationalMatrix to_rational(const IntegerMatrix& a);
IntegerMatrix matrix_power(const IntegerMatrix& a, unsigned n);

/// Gluing data of a Q-homology F x I: X in SL(beta, Q) is the map
/// H1(F1) -> H1(W) -> H1(F2); Y in SL(beta, Z) is the gluing map on H1.
class HomologyBundleData {
public:
    /// Throws std::invalid_argument unless X, Y are square of equal size with det 1.
    HomologyBundleData(RationalMatrix x, IntegerMatrix y);

    std::size_t beta() const { return x_.rows(); }
    const RationalMatrix& x() const { return x_; }
    const IntegerMatrix& y() const { return y_; }

private:
    RationalMatrix x_;
    IntegerMatrix y_;
};

struct AlgebraicMonodromy {
    RationalMatrix matrix;  // Y X, det 1
};

AlgebraicMonodromy monodromy(const HomologyBundleData& data);

/// det(phi - t I), as the normalized associate.
LaurentPoly charpoly(const AlgebraicMonodromy& phi);
LaurentPoly charpoly(const RationalMatrix& a);
/// det(t I - A): monic, lowest exponent 0.
LaurentPoly charpoly_monic(const RationalMatrix& a);

/// <a, b, s | [a,b], s a s^-1 phi(a)^-1, s b s^-1 phi(b)^-1> with
/// phi(a) = a^A11 b^A21, phi(b) = a^A12 b^A22, and psi = (0, 0, 1).
std::pair<FinitePresentation, Epimorphism> mapping_torus_presentation(const IntegerMatrix& a);

struct BundleTorsionReport {
    LaurentPoly torsion;   // torsion polynomial of the mapping torus for psi = (0,0,1)
    LaurentPoly charpoly;  // normalized det(A - tI)
    std::vector<ComplexRoot> roots;
    bool pass = false;
};

/// Torsion polynomial of the torus mapping torus against charpoly(A).
BundleTorsionReport verify_bundle_torsion(const IntegerMatrix& a, double tol);

/// Monic polynomial whose roots are the n-th powers of the roots of p (with
/// multiplicity), computed exactly from power sums.
LaurentPoly root_power_polynomial(const LaurentPoly& monic, unsigned n);

struct PowerCoverReport {
    unsigned n = 1;
    LaurentPoly power_charpoly;  // monic charpoly(A^n)
    LaurentPoly powered_roots;   // monic polynomial with roots lambda^n
    bool exact_match = false;
    bool numeric_match = false;
    double max_root_error = 0;
    bool pass = false;
};

PowerCoverReport power_cover(const IntegerMatrix& a, unsigned n, double tol);

/// Monic degree-beta polynomials with constant term +-1, coefficients with
/// denominators dividing N^beta, and all roots of modulus in [1/c, c].
/// Throws std::length_error when beta > 4 or the search grid exceeds 1e7 points.
std::vector<LaurentPoly> enumerate_candidate_charpolys(unsigned beta, const Integer& n, const Rational& c);

/// All roots of p lie in the closed annulus [1/c, c] (numeric, relative slack).
bool roots_in_annulus(const LaurentPoly& p, const Rational& c, double tol = 1e-12);

/// Monic reciprocal t^deg p(1/t) / p(0).
LaurentPoly monic_reciprocal(const LaurentPoly& monic);

}  // namespace tbound
