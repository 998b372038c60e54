#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbound/freegroup.hpp"
#include "tbound/matrix.hpp"

namespace tbound {

/// A finite presentation <x_j : r_i>. Relators are freely reduced and nonempty.
struct FinitePresentation {
    std::vector<std::string> generator_names;
    std::vector<Word> relators;
    std::vector<std::string> warnings;  // diagnostics from parsing, e.g. dropped relators

    std::size_t generator_count() const { return generator_names.size(); }
    std::size_t relator_count() const { return relators.size(); }
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Grammar (one statement per line, '#' starts a comment):
///   gens: a, b, c          names match [a-z][a-z0-9_]*
///   rel: a b A B           uppercase first letter = inverse; a^-1, a^3, A^2 also accepted
FinitePresentation parse_presentation(const std::string& text);
FinitePresentation load_presentation(const std::string& path);

/// Canonical text form (lowercase letters, uppercase-first inverses, no powers).
std::string serialize_presentation(const FinitePresentation& p);

/// Relators x generators matrix of signed letter counts.
Matrix<std::int64_t> exponent_sum_matrix(const FinitePresentation& p);

/// Fox Jacobian (d r_i / d x_j).
Matrix<GroupRingElement> fox_jacobian(const FinitePresentation& p);

/// psi(x_j) = values[j].
struct Epimorphism {
    std::vector<std::int64_t> values;

    Epimorphism negated() const;
    std::string to_string() const;  // "1,-2,0"
    auto operator<=>(const Epimorphism&) const = default;
};

struct EpimorphismCheck {
    bool valid = false;
    std::string reason;                   // empty when valid
    std::optional<std::size_t> relator;   // first relator not killed (0-based)
    std::int64_t gcd = 0;
};

EpimorphismCheck validate_epimorphism(const FinitePresentation& p, const std::vector<std::int64_t>& v);

/// Integer basis of {v : E v = 0}, in row-echelon form with positive pivots.
std::vector<std::vector<Integer>> kernel_lattice_basis(const Matrix<std::int64_t>& e, std::size_t cols);

/// Primitive kernel vectors with sup-norm <= bound, one per +/- pair (first
/// nonzero entry positive). Ordered lexicographically with entries compared
/// by (|x|, sign): 0 < 1 < -1 < 2 < -2 < ...
std::vector<Epimorphism> enumerate_epimorphisms(const FinitePresentation& p, std::int64_t bound);

/// Entry order used by enumerate_epimorphisms.
bool epimorphism_order(const Epimorphism& a, const Epimorphism& b);

/// k = sum_{i,j} || d r_i / d x_j ||.
Integer complexity_k(const FinitePresentation& p);

/// c = 1 + m! k^m with m the number of generators.
Rational root_bound_c(const FinitePresentation& p);
Rational root_bound_c(std::size_t generators, const Integer& k);

}  // namespace tbound
