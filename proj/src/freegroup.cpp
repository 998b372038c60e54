#include "tbound/freegroup.hpp"

#include <cstdlib>
#include <sstream>

namespace tbound {

std::vector<Letter> reduce(const std::vector<Letter>& letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (const auto& l : letters) {
        if (!out.empty() && out.back().cancels(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word::Word(const std::vector<Letter>& letters) : letters_(reduce(letters)) {}

Word Word::generator(std::uint32_t index, int sign) { return Word({Letter{Generator{index}, sign}}); }

std::vector<std::int64_t> Word::exponent_sums(std::size_t generators) const {
    std::vector<std::int64_t> sums(generators, 0);
    for (const auto& l : letters_) {
        if (l.gen.index >= sums.size()) sums.resize(l.gen.index + 1, 0);
        sums[l.gen.index] += l.sign;
    }
    return sums;
}

std::int64_t Word::weighted_exponent(const std::vector<std::int64_t>& weights) const {
    std::int64_t e = 0;
    for (const auto& l : letters_) e += l.sign * weights.at(l.gen.index);
    return e;
}

std::string Word::to_string() const {
    if (letters_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) os << ' ';
        os << (letters_[i].sign > 0 ? 'x' : 'X') << letters_[i].gen.index;
    }
    return os.str();
}

Word concat(const Word& u, const Word& v) {
    const auto& a = u.letters();
    const auto& b = v.letters();
    // Cancellation only happens at the junction.
    std::size_t cut = 0;
    while (cut < a.size() && cut < b.size() && a[a.size() - 1 - cut].cancels(b[cut])) ++cut;
    std::vector<Letter> out(a.begin(), a.end() - static_cast<std::ptrdiff_t>(cut));
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(cut), b.end());
    return Word(out);
}

Word invert(const Word& u) {
    std::vector<Letter> out;
    out.reserve(u.length());
    for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) out.push_back(it->inverse());
    return Word(out);
}

Word operator*(const Word& u, const Word& v) { return concat(u, v); }

GroupRingElement::GroupRingElement(const Word& w, const Rational& coeff) { add_term(w, coeff); }

void GroupRingElement::add_term(const Word& w, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& other) {
    for (const auto& [w, c] : other.terms_) add_term(w, c);
    return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& other) {
    for (const auto& [w, c] : other.terms_) add_term(w, -c);
    return *this;
}

GroupRingElement GroupRingElement::operator-() const {
    GroupRingElement r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement r;
    for (const auto& [u, cu] : a.terms_)
        for (const auto& [v, cv] : b.terms_) r.add_term(u * v, cu * cv);
    return r;
}

GroupRingElement operator*(const Rational& s, const GroupRingElement& a) {
    GroupRingElement r;
    if (s == 0) return r;
    for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, s * c);
    return r;
}

GroupRingElement operator*(const Word& w, const GroupRingElement& a) {
    GroupRingElement r;
    for (const auto& [v, c] : a.terms_) r.add_term(w * v, c);
    return r;
}

Rational GroupRingElement::augmentation() const {
    Rational s = 0;
    for (const auto& [w, c] : terms_) s += c;
    return s;
}

std::string GroupRingElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str() << "*[" << w.to_string() << "]";
    }
    return os.str();
}

GroupRingElement fox_derivative(const Word& w, Generator x) {
    // d(l_1...l_n)/dx = sum_i l_1...l_{i-1} * d(l_i)/dx, with
    // dx/dx = 1 and d(x^-1)/dx = -x^-1. Prefixes of a reduced word are reduced.
    GroupRingElement result;
    std::vector<Letter> prefix;
    prefix.reserve(w.length());
    for (const auto& l : w.letters()) {
        if (l.gen == x) {
            if (l.sign > 0) {
                result.add_term(Word(prefix), 1);
            } else {
                prefix.push_back(l);
                result.add_term(Word(prefix), -1);
                continue;
            }
        }
        prefix.push_back(l);
    }
    return result;
}

Rational norm_l1(const GroupRingElement& a) {
    Rational s = 0;
    for (const auto& [w, c] : a.terms()) s += abs(c);
    return s;
}

}  // namespace tbound
