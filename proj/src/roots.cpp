#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/multiprecision/cpp_complex.hpp>

#include "tbound/laurent.hpp"

namespace tbound {

namespace {

using Real = boost::multiprecision::cpp_bin_float_quad;
using Complex = boost::multiprecision::cpp_complex_quad;

constexpr int kMaxIterations = 2000;

Real to_real(const Rational& q) {
    return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

// Monic coefficients (ascending) of a polynomial with nonzero constant term.
std::vector<Complex> monic_coeffs(const LaurentPoly& p) {
    const Real lead = to_real(p.leading());
    std::vector<Complex> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.emplace_back(to_real(x) / lead);
    return c;
}

void horner(const std::vector<Complex>& c, const Complex& z, Complex& value, Complex& deriv) {
    value = c.back();
    deriv = Complex(0);
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        deriv = deriv * z + value;
        value = value * z + c[k];
    }
}

Complex evaluate(const std::vector<Complex>& c, const Complex& z) {
    Complex v = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) v = v * z + c[k];
    return v;
}

// Aberth-Ehrlich simultaneous iteration for a square-free polynomial.
std::vector<Complex> aberth(const std::vector<Complex>& c, bool& converged) {
    const std::size_t deg = c.size() - 1;
    converged = true;
    if (deg == 1) return {-c[0]};

    const Real radius = pow(abs(c[0]), Real(1) / Real(deg));
    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    std::vector<Complex> z(deg);
    for (std::size_t k = 0; k < deg; ++k) {
        const Real angle = two_pi * Real(k) / Real(deg) + Real(0.4);
        z[k] = Complex(radius * cos(angle), radius * sin(angle));
    }

    const Real eps = std::numeric_limits<Real>::epsilon() * 64;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        bool done = true;
        for (std::size_t k = 0; k < deg; ++k) {
            Complex value, deriv;
            horner(c, z[k], value, deriv);
            if (value == Complex(0)) continue;
            const Complex ratio = value / deriv;
            Complex sum(0);
            for (std::size_t j = 0; j < deg; ++j)
                if (j != k) sum += Complex(1) / (z[k] - z[j]);
            const Complex step = ratio / (Complex(1) - ratio * sum);
            z[k] -= step;
            if (abs(step) > eps * (1 + abs(z[k]))) done = false;
        }
        if (done) return z;
    }
    converged = false;
    return z;
}

struct Candidate {
    Complex z;
    int multiplicity;
};

}  // namespace

std::vector<ComplexRoot> complex_roots(const LaurentPoly& p, double tol) {
    if (p.is_zero()) throw std::domain_error("complex_roots of zero polynomial");
    if (!(tol > 0 && tol <= 1e-4)) throw std::invalid_argument("complex_roots: tol must lie in (0, 1e-4]");

    const LaurentPoly base = normalize(p);
    if (base.span() == 0) return {};
    const auto full = monic_coeffs(base);
    const std::size_t deg = full.size() - 1;
    Real full_norm = 0;
    for (const auto& x : full) full_norm += abs(x);

    std::vector<Candidate> found;
    const auto factors = squarefree_decomposition(base);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].span() == 0) continue;
        bool converged = false;
        const auto zs = aberth(monic_coeffs(factors[i]), converged);
        for (const auto& z : zs) {
            const Real scale = pow(std::max(Real(1), abs(z)), static_cast<int>(deg));
            const Real residual = abs(evaluate(full, z));
            if (residual > Real(tol) * full_norm * scale)
                throw RootFindingError("root finder did not converge for " + p.to_string());
            found.push_back({z, static_cast<int>(i + 1)});
        }
        if (!converged && zs.empty()) throw RootFindingError("root finder did not converge for " + p.to_string());
    }

    // Merge roots closer than sqrt(tol) into one cluster.
    const Real radius = sqrt(Real(tol));
    std::vector<std::size_t> parent(found.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < found.size(); ++a)
        for (std::size_t b = a + 1; b < found.size(); ++b)
            if (abs(found[a].z - found[b].z) < radius) parent[find(a)] = find(b);

    std::vector<ComplexRoot> out;
    std::vector<bool> seen(found.size(), false);
    for (std::size_t a = 0; a < found.size(); ++a) {
        const std::size_t r = find(a);
        if (seen[r]) continue;
        seen[r] = true;
        Complex sum(0);
        int mult = 0;
        for (std::size_t b = 0; b < found.size(); ++b)
            if (find(b) == r) {
                sum += found[b].z * Complex(found[b].multiplicity);
                mult += found[b].multiplicity;
            }
        const Complex centre = sum / Complex(mult);
        out.push_back({static_cast<double>(centre.real()), static_cast<double>(centre.imag()),
                       static_cast<double>(abs(centre)), mult});
    }
    std::sort(out.begin(), out.end(), [](const ComplexRoot& x, const ComplexRoot& y) {
        if (x.modulus != y.modulus) return x.modulus < y.modulus;
        return std::atan2(x.im, x.re) < std::atan2(y.im, y.re);
    });
    return out;
}

}  // namespace tbound
