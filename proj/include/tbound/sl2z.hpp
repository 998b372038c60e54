#pragma once

// Hyperbolic conjugacy classes in SL(2, Z) as cyclic words in
// R = [[1,1],[0,1]] and L = [[1,0],[1,1]].

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tbound {

struct Mat2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]

    std::int64_t trace() const { return a + d; }
    std::int64_t det() const { return a * d - b * c; }
    std::int64_t max_abs_entry() const;
    /// Inverse of a determinant-one matrix.
    Mat2 inverse() const { return {d, -b, -c, a}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    std::string to_string() const;

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    auto operator<=>(const Mat2&) const = default;
};

inline constexpr Mat2 kR{1, 1, 0, 1};
inline constexpr Mat2 kL{1, 0, 1, 1};

/// sign * R^a1 L^b1 ... R^ak L^bk with every exponent >= 1.
struct RLWord {
    std::vector<std::pair<int, int>> blocks;
    int sign = 1;

    std::string to_string() const;  // "R^2 L R L^3", prefixed "-" for sign -1
    auto operator<=>(const RLWord&) const = default;
};

Mat2 rl_to_matrix(const RLWord& w);

/// Lexicographically least cyclic rotation of the block sequence.
RLWord canonicalize(const RLWord& w);

/// Canonical word of the class of the inverse matrix.
RLWord inverse_class(const RLWord& w);

/// Largest |trace| the class enumerators accept.
inline constexpr std::int64_t kMaxEnumeratedTrace = 2000;

/// Every hyperbolic class with the given trace, canonical and sorted.
/// Throws std::invalid_argument for |trace| <= 2 and std::length_error above
/// kMaxEnumeratedTrace.
std::vector<RLWord> classes_with_trace(std::int64_t trace);

struct TraceClasses {
    std::int64_t trace = 0;
    std::vector<RLWord> classes;
};

/// Hyperbolic traces 2 < |tau| <= bound in the order 3, -3, 4, -4, ...
std::vector<TraceClasses> census_by_trace_bound(std::int64_t bound);

/// Traces compatible with both eigenvalues of modulus in [1/c, c]: |tau| <= c + 1/c.
std::vector<TraceClasses> sol_candidates(const mpq_class& c);
std::int64_t trace_bound_for_root_bound(const mpq_class& c);

enum class Conjugacy { same_class, distinct, inconclusive };
std::string to_string(Conjugacy c);

struct OracleResult {
    Conjugacy verdict = Conjugacy::inconclusive;
    std::optional<Mat2> conjugator;  // P with P A P^-1 = B when same_class
    std::size_t explored = 0;
};

/// Breadth-first search over conjugation by R, L, R^-1, L^-1 restricted to
/// matrices with entries bounded by `bound` in absolute value.
OracleResult conjugacy_oracle(const Mat2& a, const Mat2& b, std::int64_t bound);

/// Every determinant-one matrix with the given trace and entries <= bound,
/// grouped into connected components of the bounded conjugation graph.
std::vector<std::vector<Mat2>> bounded_class_partition(std::int64_t trace, std::int64_t bound);

}  // namespace tbound
