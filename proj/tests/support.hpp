#pragma once

// Independent reference implementations and random generators used only by tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tbound/bundles.hpp"
#include "tbound/freegroup.hpp"
#include "tbound/laurent.hpp"
#include "tbound/presentation.hpp"
#include "tbound/sl2z.hpp"

namespace oracle {

using namespace tbound;

inline Word word_of(std::initializer_list<std::pair<std::uint32_t, int>> letters) {
    std::vector<Letter> v;
    for (auto [g, s] : letters) v.push_back({Generator{g}, s});
    return Word(v);
}

// Fox derivative by recursive halving of the letter sequence; `left_heavy`
// picks the bracketing (uv)w versus u(vw) at every split.
inline GroupRingElement fox_recursive(const std::vector<Letter>& w, std::uint32_t x, bool left_heavy) {
    if (w.empty()) return {};
    if (w.size() == 1) {
        if (w[0].gen.index != x) return {};
        if (w[0].sign > 0) return GroupRingElement::one();
        return GroupRingElement(Word({w[0]}), Rational(-1));
    }
    const std::size_t cut = left_heavy ? w.size() - 1 : 1;
    std::vector<Letter> u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut));
    std::vector<Letter> v(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
    return fox_recursive(u, x, left_heavy) + Word(u) * fox_recursive(v, x, left_heavy);
}

inline Word random_word(std::mt19937_64& rng, std::uint32_t gens, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::uint32_t> gen(0, gens - 1);
    std::bernoulli_distribution sign;
    std::vector<Letter> v(len(rng));
    for (auto& l : v) l = {Generator{gen(rng)}, sign(rng) ? 1 : -1};
    return Word(v);
}

inline std::string gen_name(std::uint32_t i) { return std::string(1, static_cast<char>('a' + i)); }

// Up to 3 generators, relator length 1..12; usually fewer relators than generators.
inline FinitePresentation random_presentation(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> gens_d(1, 3);
    const std::uint32_t m = gens_d(rng);
    std::uniform_int_distribution<std::size_t> rel_d(1, std::max<std::size_t>(1, m - 1));
    std::size_t rels = rel_d(rng);
    if (std::bernoulli_distribution(0.15)(rng)) rels = m;
    FinitePresentation p;
    for (std::uint32_t j = 0; j < m; ++j) p.generator_names.push_back(gen_name(j));
    while (p.relators.size() < rels) {
        Word w = random_word(rng, m, 12);
        if (!w.is_identity()) p.relators.push_back(w);
    }
    return p;
}

inline std::vector<FinitePresentation> random_suite(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<FinitePresentation> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_presentation(rng));
    return out;
}

// Every primitive kernel vector in the box, first nonzero entry positive.
inline std::vector<Epimorphism> box_epimorphisms(const FinitePresentation& p, std::int64_t bound) {
    const std::size_t m = p.generator_count();
    std::vector<Epimorphism> out;
    std::vector<std::int64_t> v(m, -bound);
    while (true) {
        std::int64_t g = 0;
        for (auto x : v) g = std::gcd(g, x);
        auto first = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
        if (g == 1 && *first > 0) {
            bool kills = true;
            for (const auto& r : p.relators) {
                std::int64_t s = 0;
                for (const auto& l : r.letters()) s += l.sign * v[l.gen.index];
                kills &= s == 0;
            }
            if (kills) out.push_back({v});
        }
        std::size_t i = 0;
        while (i < m && v[i] == bound) v[i++] = -bound;
        if (i == m) break;
        ++v[i];
    }
    std::sort(out.begin(), out.end(), epimorphism_order);
    return out;
}

inline LaurentPoly cofactor_det(const LaurentMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 0) return LaurentPoly(1);
    if (n == 1) return a(0, 0);
    LaurentPoly sum;
    for (std::size_t j = 0; j < n; ++j) {
        if (a(0, j).is_zero()) continue;
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) cols.push_back(k);
        LaurentPoly term = a(0, j) * cofactor_det(a.select(rows, cols));
        if (j % 2) term = -term;
        sum += term;
    }
    return sum;
}

inline void subsets(std::size_t n, std::size_t r, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == r) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, r, i + 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<LaurentPoly> all_minors(const LaurentMatrix& a, std::size_t r) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(a.rows(), r, 0, cur, rs);
    subsets(a.cols(), r, 0, cur, cs);
    std::vector<LaurentPoly> out;
    for (const auto& ri : rs)
        for (const auto& ci : cs) out.push_back(cofactor_det(a.select(ri, ci)));
    return out;
}

// Largest r with a nonzero r-minor.
inline std::size_t minor_rank(const LaurentMatrix& a) {
    std::size_t r = std::min(a.rows(), a.cols());
    for (; r > 0; --r)
        for (const auto& d : all_minors(a, r))
            if (!d.is_zero()) return r;
    return 0;
}

inline LaurentPoly minor_gcd(const LaurentMatrix& a, std::size_t r) {
    LaurentPoly g;
    for (const auto& d : all_minors(a, r)) g = gcd(g, d);
    return g;
}

inline LaurentPoly random_laurent(std::mt19937_64& rng, int max_degree, int coeff_bound) {
    std::uniform_int_distribution<int> deg(0, max_degree), c(-coeff_bound, coeff_bound), shift(-2, 2);
    std::vector<Rational> coeffs(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : coeffs) x = c(rng);
    return LaurentPoly::from_coeffs(shift(rng), coeffs);
}

inline LaurentMatrix random_laurent_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                           int max_degree) {
    LaurentMatrix a(rows, cols);
    std::bernoulli_distribution zero(0.25);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = zero(rng) ? LaurentPoly() : random_laurent(rng, max_degree, 3);
    return a;
}

inline IntegerMatrix int_matrix(long a, long b, long c, long d) {
    return IntegerMatrix{{Integer(a), Integer(b)}, {Integer(c), Integer(d)}};
}

// t^2 - tau t + 1 for a 2x2 determinant-one matrix.
inline LaurentPoly trace_charpoly(long tau) {
    return LaurentPoly::from_coeffs(0, {Rational(1), Rational(-tau), Rational(1)});
}

// All determinant-one integer matrices with entries in [-b, b].
inline std::vector<std::array<long, 4>> sl2_box(long b) {
    std::vector<std::array<long, 4>> out;
    for (long a = -b; a <= b; ++a)
        for (long x = -b; x <= b; ++x)
            for (long y = -b; y <= b; ++y)
                for (long d = -b; d <= b; ++d)
                    if (a * d - x * y == 1) out.push_back({a, x, y, d});
    return out;
}

inline std::array<long, 4> random_sl2(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> e(-bound, bound);
    while (true) {
        std::array<long, 4> m{e(rng), e(rng), e(rng), e(rng)};
        if (m[0] * m[3] - m[1] * m[2] == 1) return m;
    }
}

// Hyperbolic traces only. Union-find over conjugation by R^{+-1}, L^{+-1} inside the box of the given bound.
inline std::vector<std::set<Mat2>> bounded_orbits(std::int64_t trace, std::int64_t bound) {
    std::vector<Mat2> all;
    for (std::int64_t a = -bound; a <= bound; ++a) {
        const std::int64_t d = trace - a;
        if (d < -bound || d > bound) continue;
        const std::int64_t bc = a * d - 1;  // nonzero for hyperbolic traces
        for (std::int64_t b = -bound; b <= bound; ++b)
            if (b != 0 && bc % b == 0 && std::abs(bc / b) <= bound) all.push_back({a, b, bc / b, d});
    }
    std::map<Mat2, std::size_t> index;
    for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = i;
    std::vector<std::size_t> parent(all.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const Mat2 gens[] = {kR, kL};
    for (std::size_t i = 0; i < all.size(); ++i)
        for (const auto& g : gens) {
            const Mat2 y = g * all[i] * g.inverse();
            auto it = index.find(y);
            if (it != index.end()) parent[find(i)] = find(it->second);
        }
    std::map<std::size_t, std::set<Mat2>> groups;
    for (std::size_t i = 0; i < all.size(); ++i) groups[find(i)].insert(all[i]);
    std::vector<std::set<Mat2>> out;
    for (auto& [k, s] : groups) out.push_back(std::move(s));
    return out;
}

}  // namespace oracle
