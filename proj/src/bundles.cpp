#include "tbound/bundles.hpp"

#include <algorithm>
#include <cmath>

namespace tbound {

namespace {

LaurentMatrix char_matrix(const RationalMatrix& a) {  // t I - A
    LaurentMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m(i, j) = LaurentPoly(Rational(-a(i, j)), 0);
            if (i == j) m(i, j) += LaurentPoly::t();
        }
    return m;
}

Integer det2(const IntegerMatrix& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }

void append_power(std::vector<Letter>& out, std::uint32_t gen, const Integer& e) {
    const int sign = e < 0 ? -1 : 1;
    const long count = Integer(abs(e)).get_si();
    for (long k = 0; k < count; ++k) out.push_back(Letter{Generator{gen}, sign});
}

bool lexicographic_less(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.high() != b.high()) return a.high() < b.high();
    for (std::int64_t e = a.high(); e >= 0; --e) {
        const Rational x = a.coeff(e), y = b.coeff(e);
        if (x != y) return x < y;
    }
    return false;
}

}  // namespace

Rational determinant(const RationalMatrix& a) {
    if (!a.square()) throw std::invalid_argument("determinant: matrix is not square");
    RationalMatrix m = a;
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            m.swap_rows(p, k);
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            const Rational f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

RationalMatrix to_rational(const IntegerMatrix& a) {
    RationalMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
    return r;
}

IntegerMatrix matrix_power(const IntegerMatrix& a, unsigned n) {
    IntegerMatrix result = IntegerMatrix::identity(a.rows(), Integer(0), Integer(1));
    IntegerMatrix base = a;
    while (n) {
        if (n & 1u) result = result * base;
        base = base * base;
        n >>= 1u;
    }
    return result;
}

HomologyBundleData::HomologyBundleData(RationalMatrix x, IntegerMatrix y) : x_(std::move(x)), y_(std::move(y)) {
    if (!x_.square() || !y_.square() || x_.rows() != y_.rows() || x_.rows() == 0)
        throw std::invalid_argument("HomologyBundleData: X and Y must be square of the same positive size");
    if (determinant(x_) != 1) throw std::invalid_argument("HomologyBundleData: det(X) must be 1");
    if (determinant(to_rational(y_)) != 1) throw std::invalid_argument("HomologyBundleData: det(Y) must be 1");
}

AlgebraicMonodromy monodromy(const HomologyBundleData& data) { return {to_rational(data.y()) * data.x()}; }

LaurentPoly charpoly_monic(const RationalMatrix& a) { return determinant(char_matrix(a)); }

LaurentPoly charpoly(const RationalMatrix& a) { return normalize(charpoly_monic(a)); }

LaurentPoly charpoly(const AlgebraicMonodromy& phi) { return charpoly(phi.matrix); }

std::pair<FinitePresentation, Epimorphism> mapping_torus_presentation(const IntegerMatrix& a) {
    if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument("mapping torus: matrix must be 2x2");
    if (det2(a) != 1) throw std::invalid_argument("mapping torus: det must be 1, got " + Integer(det2(a)).get_str());
    constexpr std::uint32_t ga = 0, gb = 1, gs = 2;
    auto letter = [](std::uint32_t g, int sign) { return Letter{Generator{g}, sign}; };

    FinitePresentation p;
    p.generator_names = {"a", "b", "s"};
    p.relators.emplace_back(std::vector<Letter>{letter(ga, 1), letter(gb, 1), letter(ga, -1), letter(gb, -1)});

    for (int col = 0; col < 2; ++col) {
        // s g s^-1 (a^A1c b^A2c)^-1 = s g s^-1 b^-A2c a^-A1c
        std::vector<Letter> w{letter(gs, 1), letter(col == 0 ? ga : gb, 1), letter(gs, -1)};
        append_power(w, gb, -a(1, static_cast<std::size_t>(col)));
        append_power(w, ga, -a(0, static_cast<std::size_t>(col)));
        Word r(w);
        if (r.is_identity()) {
            p.warnings.push_back("mapping torus relator reduced to the identity");
            continue;
        }
        p.relators.push_back(std::move(r));
    }
    return {std::move(p), Epimorphism{{0, 0, 1}}};
}

BundleTorsionReport verify_bundle_torsion(const IntegerMatrix& a, double tol) {
    const auto [pres, psi] = mapping_torus_presentation(a);
    BundleTorsionReport rep;
    rep.torsion = torsion_polynomial(specialize_jacobian(pres, psi)).delta;
    rep.charpoly = charpoly(to_rational(a));
    rep.pass = rep.torsion == rep.charpoly;
    rep.roots = complex_roots(rep.charpoly, tol);
    return rep;
}

LaurentPoly root_power_polynomial(const LaurentPoly& monic, unsigned n) {
    if (monic.is_zero() || monic.low() != 0 || monic.leading() != 1)
        throw std::invalid_argument("root_power_polynomial: expects a monic polynomial");
    if (n == 0) throw std::invalid_argument("root_power_polynomial: n must be positive");
    const std::size_t d = static_cast<std::size_t>(monic.high());
    const auto& c = monic.coeffs();  // c[d] == 1
    // Newton's identities: power sums s_j of the roots.
    const std::size_t top = d * n;
    std::vector<Rational> s(top + 1, Rational(0));
    for (std::size_t j = 1; j <= top; ++j) {
        Rational acc = 0;
        if (j <= d) acc += Rational(static_cast<long>(j)) * c[d - j];
        for (std::size_t i = 1; i <= std::min(j - 1, d); ++i) acc += c[d - i] * s[j - i];
        s[j] = -acc;
    }
    // Power sums of the n-th powers back to coefficients.
    std::vector<Rational> b(d + 1, Rational(0));
    b[d] = 1;
    for (std::size_t j = 1; j <= d; ++j) {
        Rational acc = s[j * n];
        for (std::size_t i = 1; i < j; ++i) acc += b[d - i] * s[(j - i) * n];
        b[d - j] = -acc / static_cast<long>(j);
    }
    return LaurentPoly::from_coeffs(0, std::move(b));
}

PowerCoverReport power_cover(const IntegerMatrix& a, unsigned n, double tol) {
    if (n == 0) throw std::invalid_argument("power_cover: n must be positive");
    PowerCoverReport rep;
    rep.n = n;
    const LaurentPoly base = charpoly_monic(to_rational(a));
    rep.power_charpoly = charpoly_monic(to_rational(matrix_power(a, n)));
    rep.powered_roots = root_power_polynomial(base, n);
    rep.exact_match = rep.power_charpoly == rep.powered_roots;

    // Numeric check: lambda^n against the roots of charpoly(A^n), matched greedily.
    const auto lambdas = complex_roots(base, tol);
    auto targets = complex_roots(rep.power_charpoly, tol);
    rep.numeric_match = true;
    for (const auto& l : lambdas) {
        const double mod = std::pow(l.modulus, n);
        const double arg = std::atan2(l.im, l.re) * n;
        const double re = mod * std::cos(arg), im = mod * std::sin(arg);
        int need = l.multiplicity;
        while (need > 0) {
            auto best = targets.end();
            double best_err = 0;
            for (auto it = targets.begin(); it != targets.end(); ++it) {
                if (it->multiplicity == 0) continue;
                const double err = std::hypot(it->re - re, it->im - im) / std::max(1.0, it->modulus);
                if (best == targets.end() || err < best_err) {
                    best = it;
                    best_err = err;
                }
            }
            if (best == targets.end()) {
                rep.numeric_match = false;
                break;
            }
            const int take = std::min(need, best->multiplicity);
            best->multiplicity -= take;
            need -= take;
            rep.max_root_error = std::max(rep.max_root_error, best_err);
        }
    }
    // Merged clusters make the error scale like sqrt(tol).
    if (rep.max_root_error > std::sqrt(tol)) rep.numeric_match = false;
    rep.pass = rep.exact_match && rep.numeric_match;
    return rep;
}

LaurentPoly monic_reciprocal(const LaurentPoly& monic) {
    return monic_part(monic.reciprocal().shifted(monic.high()));
}

bool roots_in_annulus(const LaurentPoly& p, const Rational& c, double tol) {
    if (cauchy_root_radius(p) <= c && cauchy_root_radius(p.reciprocal()) <= c) return true;
    const double upper = c.get_d() * (1 + 1e-9);
    const double lower = Rational(1 / c).get_d() * (1 - 1e-9);
    for (const auto& r : complex_roots(p, tol))
        if (r.modulus > upper || r.modulus < lower) return false;
    return true;
}

std::vector<LaurentPoly> enumerate_candidate_charpolys(unsigned beta, const Integer& n, const Rational& c) {
    if (beta == 0) throw std::invalid_argument("enumerate_candidate_charpolys: beta must be positive");
    if (n < 1) throw std::invalid_argument("enumerate_candidate_charpolys: N must be positive");
    if (c < 1) throw std::invalid_argument("enumerate_candidate_charpolys: c must be >= 1");
    if (beta > 4) throw std::length_error("enumerate_candidate_charpolys: beta > 4 is not supported");

    Integer denom;
    mpz_pow_ui(denom.get_mpz_t(), n.get_mpz_t(), beta);

    // Coefficient of t^(beta-k) is (-1)^k e_k with |e_k| <= C(beta,k) c^k.
    std::vector<Integer> limit(beta, 0);  // numerator bound for k = 1..beta-1
    Rational volume = 2;
    Rational c_power = 1;
    Integer binom = 1;
    for (unsigned k = 1; k < beta; ++k) {
        c_power *= c;
        binom = binom * (beta - k + 1) / k;
        Rational bound = Rational(binom) * c_power * Rational(denom);
        mpz_fdiv_q(limit[k].get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
        volume *= Rational(2 * limit[k] + 1);
        if (volume > 10'000'000) throw std::length_error("enumerate_candidate_charpolys: search volume exceeds 1e7");
    }

    std::vector<LaurentPoly> out;
    std::vector<Integer> num(beta, 0);
    auto emit = [&](int constant) {
        std::vector<Rational> coeffs(beta + 1, Rational(0));
        coeffs[beta] = 1;
        coeffs[0] = constant;
        for (unsigned k = 1; k < beta; ++k) {
            Rational q(num[k], denom);
            q.canonicalize();
            coeffs[beta - k] = q;
        }
        LaurentPoly p = LaurentPoly::from_coeffs(0, std::move(coeffs));
        if (roots_in_annulus(p, c)) out.push_back(std::move(p));
    };
    auto recurse = [&](auto&& self, unsigned k) -> void {
        if (k == beta) {
            emit(1);
            emit(-1);
            return;
        }
        for (num[k] = -limit[k]; num[k] <= limit[k]; ++num[k]) self(self, k + 1);
    };
    recurse(recurse, 1);
    std::sort(out.begin(), out.end(), lexicographic_less);
    return out;
}

}  // namespace tbound
