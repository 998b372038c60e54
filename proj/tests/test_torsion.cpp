#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "support.hpp"
#include "tbound/torsion.hpp"

using namespace tbound;

namespace {

const LaurentPoly t = LaurentPoly::t();

FinitePresentation trefoil() { return parse_presentation("gens: x, y\nrel: x y x Y X Y\n"); }
FinitePresentation torus() { return parse_presentation("gens: x, y\nrel: x y X Y\n"); }
FinitePresentation free2() { return parse_presentation("gens: x, y\n"); }

}  // namespace

TEST_CASE("specialized Jacobian examples") {
    const auto j = specialize_jacobian(trefoil(), {{1, 1}});
    REQUIRE(j.entries.rows() == 1);
    CHECK(j.entries(0, 0) == 1 - t + t * t);
    CHECK(j.entries(0, 1) == t - t * t - 1);
    CHECK(j.total_norm == 6);
    CHECK(j.complexity == 6);

    const auto f = specialize_jacobian(parse_presentation("gens: x\n"), {{1}});
    CHECK(f.entries.rows() == 0);
    CHECK(f.entries.cols() == 1);

    const auto c = specialize_jacobian(torus(), {{1, 0}});
    CHECK(c.entries(0, 0).is_zero());  // 1 - x y X, and psi(x y X) = 0
    CHECK(c.entries(0, 1) == t - 1);

    CHECK_THROWS_AS(specialize_jacobian(trefoil(), {{1, 2}}), std::invalid_argument);
}

TEST_CASE("torsion polynomial examples") {
    const auto tr = torsion_polynomial(specialize_jacobian(trefoil(), {{1, 1}}));
    CHECK(tr.delta == t * t - t + 1);
    CHECK(tr.rank == 1);
    CHECK(torsion_polynomial(specialize_jacobian(torus(), {{1, 0}})).delta == t - 1);
    const auto fr = torsion_polynomial(specialize_jacobian(free2(), {{1, 0}}));
    CHECK(fr.delta == LaurentPoly(1));
    CHECK(fr.rank == 0);
}

TEST_CASE("annulus certificate examples") {
    const auto r = annulus_certify(trefoil(), {{1, 1}}, 1e-10);
    CHECK(r.delta == t * t - t + 1);
    CHECK(r.c == 73);
    CHECK(r.k == 6);
    CHECK(r.upper_radius == Rational(3));
    CHECK(r.lower_radius == Rational(3));
    CHECK(r.certificate == "delta");
    CHECK(r.verdict == Verdict::pass);
    REQUIRE(r.roots.size() == 2);
    for (const auto& z : r.roots) CHECK(std::abs(z.modulus - 1) <= 1e-10);

    const auto s = annulus_certify(torus(), {{1, 0}}, 1e-10);
    CHECK(s.delta == t - 1);
    CHECK(s.verdict == Verdict::pass);

    CHECK(annulus_certify(free2(), {{1, 1}}, 1e-10).verdict == Verdict::vacuous);
    CHECK_THROWS(annulus_certify(trefoil(), {{1, 1}}, 1e-3));
}

TEST_CASE("numeric verdicts near the boundary") {
    const Rational c = 4;
    const double tol = 1e-10;
    auto root = [](double m) { return ComplexRoot{m, 0, m, 1}; };
    CHECK(numeric_annulus_verdict({root(1.0), root(3.9)}, c, tol) == Verdict::pass);
    CHECK(numeric_annulus_verdict({root(4.1)}, c, tol) == Verdict::fail);
    CHECK(numeric_annulus_verdict({root(0.2)}, c, tol) == Verdict::fail);
    CHECK(numeric_annulus_verdict({root(4 + 5e-10)}, c, tol) == Verdict::boundary_indeterminate);
    CHECK(numeric_annulus_verdict({root(0.25 - 5e-10)}, c, tol) == Verdict::boundary_indeterminate);
}

TEST_CASE("verdict strings") {
    for (auto v : {Verdict::pass, Verdict::fail, Verdict::boundary_indeterminate, Verdict::vacuous, Verdict::unknown})
        CHECK(verdict_from_string(to_string(v)) == v);
    CHECK(to_string(Verdict::boundary_indeterminate) == "boundary-indeterminate");
}

TEST_CASE("scan examples") {
    const auto tr = scan(trefoil(), 3, 1e-10);
    REQUIRE(tr.size() == 1);
    CHECK(tr[0].verdict == Verdict::pass);
    const auto fr = scan(free2(), 1, 1e-10);
    REQUIRE(fr.size() == 4);
    for (const auto& r : fr) CHECK(r.verdict == Verdict::vacuous);
    CHECK(scan(parse_presentation("gens: x, y\nrel: x\nrel: y^3\n"), 4, 1e-10).empty());
}

TEST_CASE("certify-only mode uses no numeric roots") {
    const auto r = annulus_certify(trefoil(), {{1, 1}}, 1e-10, CertifyMode::exact_only);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.roots.empty());
    CHECK_FALSE(r.min_modulus.has_value());
}

TEST_CASE("property: random suite invariants") {
    std::size_t checked = 0;
    for (const auto& p : oracle::random_suite(120, 41)) {
        const Integer k = complexity_k(p);
        const Rational c = root_bound_c(p);
        const Rational minor_bound = c - 1;
        for (const auto& psi : enumerate_epimorphisms(p, 2)) {
            const auto j = specialize_jacobian(p, psi);
            Rational total = 0;
            std::int64_t spans = 0;
            for (std::size_t a = 0; a < j.entries.rows(); ++a)
                for (std::size_t b = 0; b < j.entries.cols(); ++b) {
                    total += norm_l1(j.entries(a, b));
                    spans += j.entries(a, b).span();
                }
            REQUIRE(total == j.total_norm);
            REQUIRE(total <= k);

            const auto tr = torsion_polynomial(j);
            const std::size_t r = oracle::minor_rank(j.entries);
            REQUIRE(tr.rank == r);
            if (r > 0) {
                REQUIRE(tr.delta == oracle::minor_gcd(j.entries, r));
                for (const auto& d : oracle::all_minors(j.entries, r)) REQUIRE(norm_l1(d) <= minor_bound);
            } else {
                REQUIRE(tr.delta == LaurentPoly(1));
            }
            LaurentPoly product(1);
            for (const auto& f : tr.invariant_factors) product *= f;
            REQUIRE(normalize(product) == tr.delta);
            if (!tr.delta.is_zero()) REQUIRE(tr.delta.span() <= spans);

            const auto neg = torsion_polynomial(specialize_jacobian(p, psi.negated()));
            REQUIRE(neg.delta == normalize(tr.delta.reciprocal()));

            const auto rep = annulus_certify(p, psi, 1e-10);
            REQUIRE(rep.verdict != Verdict::fail);
            if (rep.verdict == Verdict::boundary_indeterminate) REQUIRE_FALSE(rep.certificate.empty());
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("corpus presentations pass") {
    for (const auto& entry : std::filesystem::directory_iterator(TBOUND_CORPUS_DIR)) {
        const auto p = load_presentation(entry.path().string());
        for (const auto& r : scan(p, 2, 1e-10)) {
            INFO(entry.path().filename().string() << " psi " << r.psi.to_string());
            CHECK(r.error.empty());
            CHECK((r.verdict == Verdict::pass || r.verdict == Verdict::vacuous));
        }
    }
}

TEST_CASE("known torsion polynomials of the corpus") {
    auto delta = [](const std::string& file, std::vector<std::int64_t> psi) {
        return annulus_certify(load_presentation(std::string(TBOUND_CORPUS_DIR) + "/" + file), {psi}, 1e-10).delta;
    };
    CHECK(delta("figure_eight.pres", {1, 1}) == t * t - 3 * t + 1);
    CHECK(delta("torus_knot_2_5.pres", {5, 2}) == LaurentPoly::from_coeffs(0, {1, -1, 1, -1, 1}));
    CHECK(delta("torus_knot_3_4.pres", {4, 3}) == LaurentPoly::from_coeffs(0, {1, -1, 0, 1, 0, -1, 1}));
    CHECK(delta("granny.pres", {1, 1, 1}) == (t * t - t + 1) * (t * t - t + 1));
    CHECK(delta("bundle_rl.pres", {0, 0, 1}) == t * t - 3 * t + 1);
    CHECK(delta("three_torus.pres", {0, 0, 1}) == (t - 1) * (t - 1));
}
