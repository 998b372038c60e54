#include "tbound/torsion.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace tbound {

namespace {

// Saturating binomial coefficient.
std::size_t binomial(std::size_t n, std::size_t k, std::size_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    long double r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (r > static_cast<long double>(cap)) return cap + 1;
    }
    return static_cast<std::size_t>(r + 0.5L);
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t r = idx.size();
    for (std::size_t i = r; i-- > 0;) {
        if (idx[i] < n - r + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> first_combination(std::size_t r) {
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    return idx;
}

Rational two_sided_radius(const LaurentPoly& p) {
    return std::max(cauchy_root_radius(p), cauchy_root_radius(p.reciprocal()));
}

}  // namespace

LaurentPoly specialize(const GroupRingElement& a, const std::vector<std::int64_t>& psi) {
    LaurentPoly q;
    for (const auto& [w, coeff] : a.terms()) q += LaurentPoly(coeff, w.weighted_exponent(psi));
    return q;
}

SpecializedJacobian specialize_jacobian(const FinitePresentation& p, const Epimorphism& psi) {
    const auto check = validate_epimorphism(p, psi.values);
    if (!check.valid) throw std::invalid_argument("invalid epimorphism (" + psi.to_string() + "): " + check.reason);

    SpecializedJacobian j;
    j.entries = LaurentMatrix(p.relator_count(), p.generator_count());
    Rational group_ring_total = 0;
    for (std::size_t r = 0; r < p.relator_count(); ++r)
        for (std::size_t g = 0; g < p.generator_count(); ++g) {
            const auto d = fox_derivative(p.relators[r], Generator{static_cast<std::uint32_t>(g)});
            group_ring_total += norm_l1(d);
            j.entries(r, g) = specialize(d, psi.values);
            j.total_norm += norm_l1(j.entries(r, g));
        }
    j.complexity = group_ring_total.get_num();
    if (j.total_norm > group_ring_total)
        throw InvariantViolation("specialized Jacobian norm " + j.total_norm.get_str() + " exceeds k = " +
                                 group_ring_total.get_str());
    return j;
}

TorsionResult torsion_polynomial(const SpecializedJacobian& j, const TorsionOptions& options) {
    const auto& a = j.entries;
    TorsionResult res;

    const SmithForm smith = smith_normal_form(a);
    res.invariant_factors = smith.invariant_factors;
    res.rank = smith.invariant_factors.size();
    LaurentPoly snf_order(1);
    for (const auto& f : smith.invariant_factors) snf_order *= f;
    snf_order = normalize(snf_order);

    const std::size_t r = res.rank;
    if (r == 0) {
        res.delta = LaurentPoly(1);
        return res;
    }

    const std::size_t count_rows = binomial(a.rows(), r, options.minor_cap);
    const std::size_t count_cols = binomial(a.cols(), r, options.minor_cap);
    const bool within_cap = count_rows <= options.minor_cap && count_cols <= options.minor_cap &&
                            count_rows * count_cols <= options.minor_cap;
    if (!within_cap) {
        res.delta = snf_order;
        return res;
    }

    res.used_minors = true;
    LaurentPoly g;
    Rational best_radius = -1;
    auto rows = first_combination(r);
    do {
        auto cols = first_combination(r);
        do {
            const LaurentPoly minor = determinant(a.select(rows, cols));
            ++res.minors_checked;
            const Rational norm = norm_l1(minor);
            if (norm > res.max_minor_norm) res.max_minor_norm = norm;
            if (options.minor_norm_bound && norm > *options.minor_norm_bound)
                throw InvariantViolation("minor coefficient sum " + norm.get_str() + " exceeds bound " +
                                         options.minor_norm_bound->get_str());
            if (minor.is_zero()) continue;
            ++res.nonzero_minors;
            g = gcd(g, minor);
            const Rational radius = two_sided_radius(minor);
            if (best_radius < 0 || radius < best_radius) {
                best_radius = radius;
                res.certifying_minor = normalize(minor);
            }
        } while (next_combination(cols, a.cols()));
    } while (next_combination(rows, a.rows()));

    if (g.is_zero()) throw InvariantViolation("no nonzero minor of size equal to the rank");
    res.delta = normalize(g);
    if (!(res.delta == snf_order))
        throw InvariantViolation("minor GCD " + res.delta.to_string() + " and Smith order " + snf_order.to_string() +
                                 " are not associate");
    return res;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::boundary_indeterminate: return "boundary-indeterminate";
        case Verdict::vacuous: return "vacuous";
        case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

Verdict verdict_from_string(const std::string& s) {
    for (auto v : {Verdict::pass, Verdict::fail, Verdict::boundary_indeterminate, Verdict::vacuous, Verdict::unknown})
        if (to_string(v) == s) return v;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

Verdict numeric_annulus_verdict(const std::vector<ComplexRoot>& roots, const Rational& c, double tol) {
    const double upper = c.get_d();
    const double lower = Rational(1 / c).get_d();
    const double band = 10 * tol;
    bool boundary = false;
    for (const auto& root : roots) {
        const double mu = root.modulus;
        if (std::abs(mu - upper) <= band || std::abs(mu - lower) <= band)
            boundary = true;
        else if (mu > upper || mu < lower)
            return Verdict::fail;
    }
    return boundary ? Verdict::boundary_indeterminate : Verdict::pass;
}

AnnulusReport annulus_certify(const FinitePresentation& p, const Epimorphism& psi, double tol, CertifyMode mode) {
    if (!(tol > 0 && tol <= 1e-4)) throw std::invalid_argument("tolerance must lie in (0, 1e-4]");
    AnnulusReport rep;
    rep.psi = psi;
    const auto jac = specialize_jacobian(p, psi);
    rep.k = jac.complexity;
    rep.c = root_bound_c(p.generator_count(), rep.k);

    TorsionOptions opts;
    opts.minor_norm_bound = rep.c - 1;  // m! k^m
    const auto tors = torsion_polynomial(jac, opts);
    rep.delta = tors.delta;
    rep.rank = tors.rank;

    if (rep.delta.is_zero() || rep.delta.is_unit()) {
        rep.verdict = Verdict::vacuous;
        return rep;
    }

    // Exact certificates: Cauchy radii of delta itself, then of a minor it divides.
    const Rational up = cauchy_root_radius(rep.delta);
    const Rational down = cauchy_root_radius(rep.delta.reciprocal());
    rep.upper_radius = up;
    rep.lower_radius = down;
    bool certified = false;
    if (up <= rep.c && down <= rep.c) {
        rep.certificate = "delta";
        certified = true;
    } else if (tors.certifying_minor) {
        const Rational mu = cauchy_root_radius(*tors.certifying_minor);
        const Rational md = cauchy_root_radius(tors.certifying_minor->reciprocal());
        if (mu <= rep.c && md <= rep.c) {
            rep.upper_radius = mu;
            rep.lower_radius = md;
            rep.certificate = "minor";
            certified = true;
        }
    }

    if (mode == CertifyMode::exact_only) {
        rep.verdict = certified ? Verdict::pass : Verdict::unknown;
        return rep;
    }

    rep.roots = complex_roots(rep.delta, tol);
    if (!rep.roots.empty()) {
        rep.min_modulus = rep.roots.front().modulus;
        rep.max_modulus = rep.roots.front().modulus;
        for (const auto& r : rep.roots) {
            rep.min_modulus = std::min(*rep.min_modulus, r.modulus);
            rep.max_modulus = std::max(*rep.max_modulus, r.modulus);
        }
    }
    rep.verdict = certified ? Verdict::pass : numeric_annulus_verdict(rep.roots, rep.c, tol);
    return rep;
}

std::vector<AnnulusReport> scan(const FinitePresentation& p, std::int64_t bound, double tol, CertifyMode mode) {
    const auto psis = enumerate_epimorphisms(p, bound);
    std::vector<AnnulusReport> reports(psis.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < psis.size(); i = next++) {
            try {
                reports[i] = annulus_certify(p, psis[i], tol, mode);
            } catch (const std::exception& e) {
                reports[i] = AnnulusReport{};
                reports[i].psi = psis[i];
                reports[i].verdict = Verdict::unknown;
                reports[i].error = e.what();
            }
        }
    };
    const std::size_t threads =
        std::min<std::size_t>(psis.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    return reports;
}

}  // namespace tbound
