#pragma once

// Free-group words, the rational group ring Q[F] and Fox free derivatives.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tbound {

using Rational = mpq_class;
using Integer = mpz_class;

struct Generator {
    std::uint32_t index = 0;
    auto operator<=>(const Generator&) const = default;
};

struct Letter {
    Generator gen;
    int sign = 1;  // +1 or -1

    Letter inverse() const { return {gen, -sign}; }
    bool cancels(const Letter& other) const { return gen == other.gen && sign == -other.sign; }
    auto operator<=>(const Letter&) const = default;
};

/// A freely reduced word in the free group on generators x_0, x_1, ...
/// The invariant is established at construction, so equality is structural.
class Word {
public:
    Word() = default;
    explicit Word(const std::vector<Letter>& letters);  // reduces

    static Word generator(std::uint32_t index, int sign = 1);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }

    /// Signed count of each generator, padded to at least `generators` entries.
    std::vector<std::int64_t> exponent_sums(std::size_t generators) const;

    /// Weighted exponent sum: the image under the homomorphism F -> Z, x_j -> weights[j].
    std::int64_t weighted_exponent(const std::vector<std::int64_t>& weights) const;

    std::string to_string() const;  // x0 X0 style, for diagnostics

    auto operator<=>(const Word&) const = default;

private:
    std::vector<Letter> letters_;
};

std::vector<Letter> reduce(const std::vector<Letter>& letters);
Word concat(const Word& u, const Word& v);
Word invert(const Word& u);
Word operator*(const Word& u, const Word& v);

/// Element of Q[F]: a finite formal sum of words with nonzero rational coefficients.
class GroupRingElement {
public:
    using Terms = std::map<Word, Rational>;

    GroupRingElement() = default;
    explicit GroupRingElement(const Word& w, const Rational& coeff = 1);

    static GroupRingElement one() { return GroupRingElement(Word()); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Word& w, const Rational& coeff);

    GroupRingElement& operator+=(const GroupRingElement& other);
    GroupRingElement& operator-=(const GroupRingElement& other);
    GroupRingElement operator-() const;

    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
    friend GroupRingElement operator*(const Rational& s, const GroupRingElement& a);
    /// Left multiplication by a group element.
    friend GroupRingElement operator*(const Word& w, const GroupRingElement& a);

    /// Sum of coefficients (the augmentation Q[F] -> Q).
    Rational augmentation() const;

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) { return a.terms_ == b.terms_; }

    std::string to_string() const;

private:
    Terms terms_;
};

/// Fox free derivative d w / d x.
GroupRingElement fox_derivative(const Word& w, Generator x);

/// l1 norm: sum of absolute values of coefficients.
Rational norm_l1(const GroupRingElement& a);

}  // namespace tbound
