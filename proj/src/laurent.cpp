#include "tbound/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace tbound {

namespace {

using Coeffs = std::vector<Rational>;

void trim_poly(Coeffs& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

// Dense polynomial division over Q (ascending coefficients). b must be nonzero.
void poly_divmod(const Coeffs& a, const Coeffs& b, Coeffs& q, Coeffs& r) {
    r = a;
    trim_poly(r);
    const std::size_t db = b.size() - 1;
    if (r.size() < b.size()) {
        q.clear();
        return;
    }
    q.assign(r.size() - db, Rational(0));
    const Rational inv_lead = 1 / b.back();
    for (std::size_t k = r.size(); k-- > db;) {
        if (r[k] == 0) continue;
        Rational f = r[k] * inv_lead;
        f.canonicalize();
        q[k - db] = f;
        for (std::size_t i = 0; i <= db; ++i) r[k - db + i] -= f * b[i];
    }
    trim_poly(r);
    trim_poly(q);
}

// Scales to coprime integers with positive leading coefficient.
void make_primitive(Coeffs& c) {
    if (c.empty()) return;
    Integer den = 1, num = 0;
    for (const auto& x : c) {
        if (x == 0) continue;
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), x.get_num_mpz_t());
    }
    Rational scale(den, num);
    scale.canonicalize();
    if (c.back() < 0) scale = -scale;
    for (auto& x : c) x *= scale;
}

}  // namespace

LaurentPoly::LaurentPoly(const Rational& c, std::int64_t exponent) : low_(exponent) {
    if (c != 0) coeffs_.push_back(c);
    else low_ = 0;
}

LaurentPoly LaurentPoly::from_coeffs(std::int64_t low, std::vector<Rational> coeffs) {
    LaurentPoly p;
    p.low_ = low;
    p.coeffs_ = std::move(coeffs);
    p.trim();
    return p;
}

void LaurentPoly::trim() {
    trim_poly(coeffs_);
    std::size_t lead_zeros = 0;
    while (lead_zeros < coeffs_.size() && coeffs_[lead_zeros] == 0) ++lead_zeros;
    if (lead_zeros) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead_zeros));
        low_ += static_cast<std::int64_t>(lead_zeros);
    }
    if (coeffs_.empty()) low_ = 0;
}

Rational LaurentPoly::coeff(std::int64_t e) const {
    if (coeffs_.empty() || e < low_ || e > high()) return 0;
    return coeffs_[static_cast<std::size_t>(e - low_)];
}

LaurentPoly LaurentPoly::shifted(std::int64_t k) const {
    LaurentPoly p = *this;
    if (!p.is_zero()) p.low_ += k;
    return p;
}

LaurentPoly LaurentPoly::reciprocal() const {
    if (is_zero()) return {};
    LaurentPoly p;
    p.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    p.low_ = -high();
    return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const std::int64_t lo = std::min(low_, o.low_);
    const std::int64_t hi = std::max(high(), o.high());
    Coeffs c(static_cast<std::size_t>(hi - lo + 1), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[static_cast<std::size_t>(low_ - lo) + i] = coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[static_cast<std::size_t>(o.low_ - lo) + i] += o.coeffs_[i];
    low_ = lo;
    coeffs_ = std::move(c);
    trim();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p = *this;
    for (auto& c : p.coeffs_) c = -c;
    return p;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Coeffs c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return LaurentPoly::from_coeffs(a.low_ + b.low_, std::move(c));
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

std::string LaurentPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::int64_t e = high(); e >= low_; --e) {
        Rational c = coeff(e);
        if (c == 0) continue;
        const bool neg = c < 0;
        Rational a = abs(c);
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << '*';
        os << 't';
        if (e != 1) os << '^' << e;
    }
    return os.str();
}

LaurentPoly normalize(const LaurentPoly& p) {
    if (p.is_zero()) return {};
    Coeffs c = p.coeffs();
    make_primitive(c);
    return LaurentPoly::from_coeffs(0, std::move(c));
}

bool associate(const LaurentPoly& p, const LaurentPoly& q) { return normalize(p) == normalize(q); }

LaurentDivision divmod(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::domain_error("LaurentPoly division by zero");
    if (a.is_zero()) return {};
    // a = t^la A(t), b = t^lb B(t); A = Q B + R gives a = t^(la-lb) Q b + t^la R.
    Coeffs q, r;
    poly_divmod(a.coeffs(), b.coeffs(), q, r);
    return {LaurentPoly::from_coeffs(a.low() - b.low(), std::move(q)),
            LaurentPoly::from_coeffs(a.low(), std::move(r))};
}

bool divides(const LaurentPoly& d, const LaurentPoly& a) {
    if (d.is_zero()) return a.is_zero();
    return divmod(a, d).remainder.is_zero();
}

LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
    auto qr = divmod(a, b);
    if (!qr.remainder.is_zero()) throw std::domain_error("exact_divide: " + b.to_string() + " does not divide " + a.to_string());
    return qr.quotient;
}

LaurentPoly gcd(const LaurentPoly& p, const LaurentPoly& q) {
    if (p.is_zero()) return normalize(q);
    if (q.is_zero()) return normalize(p);
    Coeffs a = p.coeffs(), b = q.coeffs();
    make_primitive(a);
    make_primitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        Coeffs quo, rem;
        poly_divmod(a, b, quo, rem);
        make_primitive(rem);
        a = std::move(b);
        b = std::move(rem);
    }
    return normalize(LaurentPoly::from_coeffs(0, std::move(a)));
}

LaurentPoly derivative_of_polynomial_part(const LaurentPoly& p) {
    if (p.coeffs().size() <= 1) return {};
    Coeffs d(p.coeffs().size() - 1);
    for (std::size_t i = 1; i < p.coeffs().size(); ++i) d[i - 1] = p.coeffs()[i] * static_cast<long>(i);
    return LaurentPoly::from_coeffs(0, std::move(d));
}

std::vector<LaurentPoly> squarefree_decomposition(const LaurentPoly& p) {
    // Yun's algorithm over Q.
    std::vector<LaurentPoly> out;
    LaurentPoly f = normalize(p);
    if (f.is_zero() || f.span() == 0) return out;
    LaurentPoly df = derivative_of_polynomial_part(f);
    LaurentPoly a = gcd(f, df);
    LaurentPoly b = exact_divide(f, a);
    LaurentPoly c = exact_divide(df, a);
    LaurentPoly d = c - derivative_of_polynomial_part(b);
    while (b.span() > 0) {
        LaurentPoly g = gcd(b, d);
        out.push_back(g);
        b = exact_divide(b, g);
        c = exact_divide(d, g);
        d = c - derivative_of_polynomial_part(b);
    }
    while (!out.empty() && out.back().span() == 0) out.pop_back();
    return out;
}

Rational norm_l1(const LaurentPoly& p) {
    Rational s = 0;
    for (const auto& c : p.coeffs()) s += abs(c);
    return s;
}

LaurentPoly monic_part(const LaurentPoly& p) {
    if (p.is_zero()) throw std::domain_error("monic_part of zero polynomial");
    Coeffs c = p.coeffs();
    const Rational lead = c.back();
    for (auto& x : c) x /= lead;
    return LaurentPoly::from_coeffs(0, std::move(c));
}

Rational cauchy_root_radius(const LaurentPoly& p) {
    if (p.is_zero()) throw std::domain_error("cauchy_root_radius of zero polynomial");
    const auto& c = p.coeffs();
    Rational r = 1;
    const Rational lead = abs(c.back());
    for (std::size_t i = 0; i + 1 < c.size(); ++i) r += abs(c[i]) / lead;
    return r;
}

}  // namespace tbound
