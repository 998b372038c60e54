#pragma once

// Torsion polynomials of epimorphisms pi_1 -> Z and their root annulus.

#include <optional>
#include <string>
#include <vector>

#include "tbound/laurent.hpp"
#include "tbound/presentation.hpp"

namespace tbound {

class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

/// The Fox Jacobian pushed through Z[F] -> Q[t, t^-1], g -> t^psi(g).
struct SpecializedJacobian {
    LaurentMatrix entries;     // relators x generators
    Rational total_norm = 0;   // sum of ||q_ij||_1
    Integer complexity = 0;    // k of the source presentation
};

/// Throws std::invalid_argument if psi is not an epimorphism killing the relators,
/// and InvariantViolation if total_norm exceeds k.
SpecializedJacobian specialize_jacobian(const FinitePresentation& p, const Epimorphism& psi);

/// Specialization of a single group-ring element.
LaurentPoly specialize(const GroupRingElement& a, const std::vector<std::int64_t>& psi);

struct TorsionOptions {
    /// When set, every r-rowed minor D must satisfy ||D||_1 <= bound.
    std::optional<Rational> minor_norm_bound;
    /// Skip minor enumeration above this many minors.
    std::size_t minor_cap = 1'000'000;
};

struct TorsionResult {
    LaurentPoly delta;  // normalized
    std::size_t rank = 0;
    std::vector<LaurentPoly> invariant_factors;
    bool used_minors = false;
    std::size_t minors_checked = 0;
    std::size_t nonzero_minors = 0;
    Rational max_minor_norm = 0;
    /// Nonzero r-rowed minor with the smallest two-sided Cauchy radius (normalized).
    std::optional<LaurentPoly> certifying_minor;
};

/// Normalized GCD of the rank-sized minors, cross-checked against the product
/// of the nonzero Smith invariant factors. rank 0 gives the unit 1.
TorsionResult torsion_polynomial(const SpecializedJacobian& j, const TorsionOptions& options = {});

enum class Verdict { pass, fail, boundary_indeterminate, vacuous, unknown };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

enum class CertifyMode {
    full,        // exact certificates plus numeric roots
    exact_only,  // no floating point; verdict is pass, vacuous or unknown
};

struct AnnulusReport {
    Epimorphism psi;
    LaurentPoly delta;
    Integer k = 0;
    Rational c = 0;
    std::size_t rank = 0;
    std::vector<ComplexRoot> roots;
    std::optional<double> min_modulus;
    std::optional<double> max_modulus;
    /// Cauchy radii of the certificate polynomial and of its reciprocal.
    std::optional<Rational> upper_radius;
    std::optional<Rational> lower_radius;
    std::string certificate;  // "delta", "minor", or empty when no exact certificate holds
    Verdict verdict = Verdict::unknown;
    std::string error;        // set by scan when this psi could not be processed
};

AnnulusReport annulus_certify(const FinitePresentation& p, const Epimorphism& psi, double tol,
                              CertifyMode mode = CertifyMode::full);

/// One report per enumerated primitive psi with sup-norm <= bound, sharing c.
/// Per-psi failures are recorded in the report (verdict unknown, error set).
std::vector<AnnulusReport> scan(const FinitePresentation& p, std::int64_t bound, double tol,
                                CertifyMode mode = CertifyMode::full);

/// Numeric annulus verdict for a list of roots (boundary band of 10*tol).
Verdict numeric_annulus_verdict(const std::vector<ComplexRoot>& roots, const Rational& c, double tol);

}  // namespace tbound
