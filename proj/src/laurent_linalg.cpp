#include "tbound/laurent.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace tbound {

namespace {

// Index of the nonzero entry of smallest span among rows [r0, rows) of column c.
std::optional<std::size_t> best_pivot_in_column(const LaurentMatrix& m, std::size_t r0, std::size_t c) {
    std::optional<std::size_t> best;
    for (std::size_t i = r0; i < m.rows(); ++i) {
        if (m(i, c).is_zero()) continue;
        if (!best || m(i, c).span() < m(*best, c).span()) best = i;
    }
    return best;
}

LaurentPoly unit_inverse(const LaurentPoly& u) {
    return LaurentPoly(Rational(1) / u.leading(), -u.low());
}

struct ExtendedGcd {
    LaurentPoly g, x, y;  // g = x a + y b
};

ExtendedGcd extended_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r0 = a, r1 = b, s0(1), s1, t0, t1(1);
    while (!r1.is_zero()) {
        const LaurentPoly q = divmod(r0, r1).quotient;
        LaurentPoly r2 = r0 - q * r1, s2 = s0 - q * s1, t2 = t0 - q * t1;
        if (!r2.is_zero()) {
            // Keep the remainder primitive; scaling a whole Bezout triple by a unit is harmless.
            const LaurentPoly k = exact_divide(normalize(r2), r2);
            r2 *= k;
            s2 *= k;
            t2 *= k;
        }
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    return {r0, s0, t0};
}

// Unit r t^k making the given entries primitive integral with lowest exponent 0.
template <class Entries>
std::optional<LaurentPoly> primitive_scale(const Entries& entries) {
    Integer num = 0, den = 1;
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    for (const LaurentPoly* p : entries) {
        if (p->is_zero()) continue;
        lo = std::min(lo, p->low());
        for (const auto& c : p->coeffs()) {
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        }
    }
    if (num == 0 || (num == 1 && den == 1 && lo == 0)) return std::nullopt;
    Rational r(den, num);
    r.canonicalize();
    return LaurentPoly(r, -lo);
}

}  // namespace

LaurentPoly determinant(const LaurentMatrix& a) {
    if (!a.square()) throw std::invalid_argument("determinant: matrix is not square");
    const std::size_t n = a.rows();
    if (n == 0) return LaurentPoly(1);

    // Clear t-denominators row by row so Bareiss runs over Q[t].
    LaurentMatrix m = a;
    std::int64_t total_shift = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t lo = std::numeric_limits<std::int64_t>::max();
        for (std::size_t j = 0; j < n; ++j)
            if (!m(i, j).is_zero()) lo = std::min(lo, m(i, j).low());
        if (lo == std::numeric_limits<std::int64_t>::max()) return {};
        for (std::size_t j = 0; j < n; ++j) m(i, j) = m(i, j).shifted(-lo);
        total_shift += lo;
    }

    int sign = 1;
    LaurentPoly prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        auto p = best_pivot_in_column(m, k, k);
        if (!p) return {};
        if (*p != k) {
            m.swap_rows(*p, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = exact_divide(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
            m(i, k) = LaurentPoly();
        }
        prev = m(k, k);
    }
    LaurentPoly det = m(n - 1, n - 1).shifted(total_shift);
    return sign < 0 ? -det : det;
}

std::size_t rank(const LaurentMatrix& a) {
    LaurentMatrix m = a;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        auto p = best_pivot_in_column(m, r, c);
        if (!p) continue;
        m.swap_rows(*p, r);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c).is_zero()) continue;
            const LaurentPoly f = m(i, c);
            LaurentPoly content;
            for (std::size_t j = c; j < m.cols(); ++j) {
                m(i, j) = m(r, c) * m(i, j) - f * m(r, j);
                content = gcd(content, m(i, j));
            }
            // Rescaling a row by a nonzero element of Q(t) leaves the rank unchanged.
            if (!content.is_zero())
                for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = exact_divide(m(i, j), content);
        }
        ++r;
    }
    return r;
}

SmithForm smith_normal_form(const LaurentMatrix& a) {
    const std::size_t n = a.rows(), m = a.cols();
    SmithForm s;
    s.d = a;
    s.u = LaurentMatrix::identity(n, LaurentPoly(), LaurentPoly(1));
    s.v = LaurentMatrix::identity(m, LaurentPoly(), LaurentPoly(1));
    auto& d = s.d;
    auto& u = s.u;
    auto& v = s.v;

    auto row_axpy = [&](std::size_t dst, std::size_t src, const LaurentPoly& q) {  // row_dst -= q row_src
        for (std::size_t j = 0; j < m; ++j)
            if (!d(src, j).is_zero()) d(dst, j) -= q * d(src, j);
        for (std::size_t j = 0; j < n; ++j)
            if (!u(src, j).is_zero()) u(dst, j) -= q * u(src, j);
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, const LaurentPoly& q) {  // col_dst -= q col_src
        for (std::size_t i = 0; i < n; ++i)
            if (!d(i, src).is_zero()) d(i, dst) -= q * d(i, src);
        for (std::size_t i = 0; i < m; ++i)
            if (!v(i, src).is_zero()) v(i, dst) -= q * v(i, src);
    };
    // Rescaling by units keeps coefficient growth in check.
    auto tidy_row = [&](std::size_t i) {
        std::vector<const LaurentPoly*> row;
        for (std::size_t j = 0; j < m; ++j) row.push_back(&d(i, j));
        if (auto s = primitive_scale(row)) {
            for (std::size_t j = 0; j < m; ++j) d(i, j) *= *s;
            for (std::size_t j = 0; j < n; ++j) u(i, j) *= *s;
        }
    };
    auto tidy_col = [&](std::size_t j) {
        std::vector<const LaurentPoly*> col;
        for (std::size_t i = 0; i < n; ++i) col.push_back(&d(i, j));
        if (auto s = primitive_scale(col)) {
            for (std::size_t i = 0; i < n; ++i) d(i, j) *= *s;
            for (std::size_t i = 0; i < m; ++i) v(i, j) *= *s;
        }
    };
    for (std::size_t i = 0; i < n; ++i) tidy_row(i);

    // Replace (row_a, row_b) by (x row_a + y row_b, -b/g row_a + a/g row_b); determinant one.
    auto row_combine = [&](std::size_t ra, std::size_t rb, const ExtendedGcd& e, const LaurentPoly& a_g,
                           const LaurentPoly& b_g) {
        for (std::size_t j = 0; j < m; ++j) {
            const LaurentPoly p = d(ra, j), q = d(rb, j);
            d(ra, j) = e.x * p + e.y * q;
            d(rb, j) = a_g * q - b_g * p;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const LaurentPoly p = u(ra, j), q = u(rb, j);
            u(ra, j) = e.x * p + e.y * q;
            u(rb, j) = a_g * q - b_g * p;
        }
    };
    auto col_combine = [&](std::size_t ca, std::size_t cb, const ExtendedGcd& e, const LaurentPoly& a_g,
                           const LaurentPoly& b_g) {
        for (std::size_t i = 0; i < n; ++i) {
            const LaurentPoly p = d(i, ca), q = d(i, cb);
            d(i, ca) = e.x * p + e.y * q;
            d(i, cb) = a_g * q - b_g * p;
        }
        for (std::size_t i = 0; i < m; ++i) {
            const LaurentPoly p = v(i, ca), q = v(i, cb);
            v(i, ca) = e.x * p + e.y * q;
            v(i, cb) = a_g * q - b_g * p;
        }
    };

    std::size_t t = 0;
    for (; t < std::min(n, m); ++t) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < n; ++i)
            for (std::size_t j = t; j < m; ++j)
                if (!d(i, j).is_zero() && (!best || d(i, j).span() < d(best->first, best->second).span()))
                    best = {i, j};
        if (!best) break;
        d.swap_rows(t, best->first);
        u.swap_rows(t, best->first);
        d.swap_cols(t, best->second);
        v.swap_cols(t, best->second);

        for (;;) {
            for (std::size_t i = t + 1; i < n; ++i) {
                if (d(i, t).is_zero()) continue;
                if (divides(d(t, t), d(i, t))) {
                    row_axpy(i, t, exact_divide(d(i, t), d(t, t)));
                } else {
                    const auto e = extended_gcd(d(t, t), d(i, t));
                    row_combine(t, i, e, exact_divide(d(t, t), e.g), exact_divide(d(i, t), e.g));
                    tidy_row(t);
                }
                tidy_row(i);
            }
            bool column_dirty = false;
            for (std::size_t j = t + 1; j < m; ++j) {
                if (d(t, j).is_zero()) continue;
                if (divides(d(t, t), d(t, j))) {
                    col_axpy(j, t, exact_divide(d(t, j), d(t, t)));
                } else {
                    const auto e = extended_gcd(d(t, t), d(t, j));
                    col_combine(t, j, e, exact_divide(d(t, t), e.g), exact_divide(d(t, j), e.g));
                    tidy_col(t);
                    column_dirty = true;
                }
                tidy_col(j);
            }
            if (column_dirty) {
                bool any = false;
                for (std::size_t i = t + 1; i < n; ++i) any |= !d(i, t).is_zero();
                if (any) continue;
            }

            // Row and column t are clear; enforce d_t | every remaining entry.
            std::optional<std::size_t> offending_row;
            for (std::size_t i = t + 1; i < n && !offending_row; ++i)
                for (std::size_t j = t + 1; j < m; ++j)
                    if (!divides(d(t, t), d(i, j))) {
                        offending_row = i;
                        break;
                    }
            if (!offending_row) break;
            row_axpy(t, *offending_row, LaurentPoly(-1));
            tidy_row(t);
        }
    }

    for (std::size_t k = 0; k < t; ++k) {
        const LaurentPoly unit = exact_divide(d(k, k), normalize(d(k, k)));
        const LaurentPoly inv = unit_inverse(unit);
        for (std::size_t j = 0; j < m; ++j) d(k, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) u(k, j) *= inv;
        s.invariant_factors.push_back(d(k, k));
    }
    return s;
}

bool verify_smith_certificate(const LaurentMatrix& a, const SmithForm& s) {
    const std::size_t n = a.rows(), m = a.cols();
    if (s.u.rows() != n || s.u.cols() != n || s.v.rows() != m || s.v.cols() != m) return false;
    if (!(s.u * a * s.v == s.d)) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j && i < s.invariant_factors.size()) {
                if (!(s.d(i, j) == s.invariant_factors[i])) return false;
            } else if (!s.d(i, j).is_zero()) {
                return false;
            }
        }
    for (std::size_t k = 0; k < s.invariant_factors.size(); ++k) {
        const auto& f = s.invariant_factors[k];
        if (f.is_zero() || !(normalize(f) == f)) return false;
        if (k + 1 < s.invariant_factors.size() && !divides(f, s.invariant_factors[k + 1])) return false;
    }
    const auto du = determinant(s.u), dv = determinant(s.v);
    return du.is_unit() && dv.is_unit();
}

}  // namespace tbound
