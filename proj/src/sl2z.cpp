#include "tbound/sl2z.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tbound {

std::int64_t Mat2::max_abs_entry() const {
    auto m = [](std::int64_t x) { return x < 0 ? -x : x; };
    return std::max({m(a), m(b), m(c), m(d)});
}

std::string Mat2::to_string() const {
    std::ostringstream os;
    os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
    return os.str();
}

std::string RLWord::to_string() const {
    std::ostringstream os;
    if (sign < 0) os << '-';
    bool first = true;
    auto put = [&](char g, int e) {
        if (!first) os << ' ';
        first = false;
        os << g;
        if (e != 1) os << '^' << e;
    };
    for (const auto& [ra, lb] : blocks) {
        put('R', ra);
        put('L', lb);
    }
    return os.str();
}

namespace {

Mat2 block_matrix(int a, int b) {  // R^a L^b
    const std::int64_t x = a, y = b;
    return {1 + x * y, x, y, 1};
}

}  // namespace

Mat2 rl_to_matrix(const RLWord& w) {
    Mat2 m;
    for (const auto& [a, b] : w.blocks) m = m * block_matrix(a, b);
    return w.sign < 0 ? -m : m;
}

RLWord canonicalize(const RLWord& w) {
    RLWord best = w;
    const std::size_t k = w.blocks.size();
    for (std::size_t shift = 1; shift < k; ++shift) {
        RLWord r = w;
        std::rotate(r.blocks.begin(), r.blocks.begin() + static_cast<std::ptrdiff_t>(shift), r.blocks.end());
        if (r.blocks < best.blocks) best = std::move(r);
    }
    return best;
}

RLWord inverse_class(const RLWord& w) {
    // S A^-1 S^-1 with S = [[0,-1],[1,0]] maps R^-1 -> L and L^-1 -> R.
    RLWord inv;
    inv.sign = w.sign;
    for (auto it = w.blocks.rbegin(); it != w.blocks.rend(); ++it) inv.blocks.emplace_back(it->second, it->first);
    return canonicalize(inv);
}

std::vector<RLWord> classes_with_trace(std::int64_t trace) {
    const std::int64_t target = trace < 0 ? -trace : trace;
    if (target <= 2) throw std::invalid_argument("classes_with_trace: |trace| must exceed 2");
    if (target > kMaxEnumeratedTrace) throw std::length_error("classes_with_trace: |trace| too large to enumerate");

    std::set<RLWord> found;
    RLWord current;
    current.sign = trace < 0 ? -1 : 1;
    // Appending a block to a nonnegative product strictly increases the trace,
    // so partial products with trace >= target need no extension.
    auto extend = [&](auto&& self, const Mat2& m, std::int64_t weight) -> void {
        for (int a = 1;; ++a) {
            const std::int64_t t_first = m.a * (1 + a) + m.b + m.c * a + m.d;  // b = 1
            if (t_first > target) break;
            for (int b = 1;; ++b) {
                const Mat2 next = m * block_matrix(a, b);
                const std::int64_t t = next.trace();
                if (t > target) break;
                current.blocks.emplace_back(a, b);
                const std::int64_t w = weight + static_cast<std::int64_t>(a) * b;
                if (t == target) {
                    if (w > target - 2) throw std::logic_error("classes_with_trace: exponent bound violated");
                    found.insert(canonicalize(current));
                } else {
                    self(self, next, w);
                }
                current.blocks.pop_back();
            }
        }
    };
    extend(extend, Mat2{}, 0);
    return {found.begin(), found.end()};
}

std::vector<TraceClasses> census_by_trace_bound(std::int64_t bound) {
    std::vector<TraceClasses> out;
    for (std::int64_t t = 3; t <= bound; ++t) {
        out.push_back({t, classes_with_trace(t)});
        out.push_back({-t, classes_with_trace(-t)});
    }
    return out;
}

std::int64_t trace_bound_for_root_bound(const mpq_class& c) {
    if (c < 1) throw std::invalid_argument("sol_candidates: c must be >= 1");
    mpq_class s = c + 1 / c;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    if (f > kMaxEnumeratedTrace) throw std::length_error("sol_candidates: trace bound " + f.get_str() + " too large to enumerate");
    return f.get_si();
}

std::vector<TraceClasses> sol_candidates(const mpq_class& c) { return census_by_trace_bound(trace_bound_for_root_bound(c)); }

std::string to_string(Conjugacy c) {
    switch (c) {
        case Conjugacy::same_class: return "same-class";
        case Conjugacy::distinct: return "distinct";
        case Conjugacy::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

constexpr std::size_t kOracleNodeCap = 5'000'000;
const std::array<Mat2, 4> kGenerators{kR, kL, kR.inverse(), kL.inverse()};

}  // namespace

OracleResult conjugacy_oracle(const Mat2& a, const Mat2& b, std::int64_t bound) {
    OracleResult res;
    if (a.det() != 1 || b.det() != 1) throw std::invalid_argument("conjugacy_oracle: matrices must have det 1");
    if (a.trace() != b.trace()) {
        res.verdict = Conjugacy::distinct;
        return res;
    }
    if (a.max_abs_entry() > bound || b.max_abs_entry() > bound) return res;

    // parent[x] = (predecessor, generator index) with x = g pred g^-1
    std::map<Mat2, std::pair<Mat2, int>> parent;
    std::deque<Mat2> queue{a};
    parent.emplace(a, std::make_pair(a, -1));
    while (!queue.empty()) {
        const Mat2 x = queue.front();
        queue.pop_front();
        ++res.explored;
        if (x == b) {
            Mat2 p;  // accumulate P = g_k ... g_1
            for (Mat2 cur = b; !(cur == a);) {
                const auto& [pred, gi] = parent.at(cur);
                p = p * kGenerators[static_cast<std::size_t>(gi)];
                cur = pred;
            }
            res.verdict = Conjugacy::same_class;
            res.conjugator = p;
            return res;
        }
        for (int gi = 0; gi < 4; ++gi) {
            const Mat2& g = kGenerators[static_cast<std::size_t>(gi)];
            const Mat2 y = g * x * g.inverse();
            if (y.max_abs_entry() > bound || parent.count(y)) continue;
            parent.emplace(y, std::make_pair(x, gi));
            queue.push_back(y);
        }
        if (parent.size() > kOracleNodeCap) return res;
    }
    res.verdict = Conjugacy::distinct;
    return res;
}

std::vector<std::vector<Mat2>> bounded_class_partition(std::int64_t trace, std::int64_t bound) {
    std::set<Mat2> all;
    for (std::int64_t a = -bound; a <= bound; ++a) {
        const std::int64_t d = trace - a;
        if (d < -bound || d > bound) continue;
        const std::int64_t bc = a * d - 1;
        if (bc == 0) {
            for (std::int64_t x = -bound; x <= bound; ++x) {
                all.insert({a, x, 0, d});
                if (x != 0) all.insert({a, 0, x, d});
            }
            continue;
        }
        for (std::int64_t b = -bound; b <= bound; ++b) {
            if (b == 0 || bc % b != 0) continue;
            const std::int64_t c = bc / b;
            if (c < -bound || c > bound) continue;
            all.insert({a, b, c, d});
        }
    }
    std::vector<std::vector<Mat2>> parts;
    std::set<Mat2> seen;
    for (const auto& start : all) {
        if (seen.count(start)) continue;
        std::vector<Mat2> comp{start};
        seen.insert(start);
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (const auto& g : kGenerators) {
                const Mat2 y = g * comp[i] * g.inverse();
                if (y.max_abs_entry() > bound || seen.count(y)) continue;
                seen.insert(y);
                comp.push_back(y);
            }
        }
        std::sort(comp.begin(), comp.end());
        parts.push_back(std::move(comp));
    }
    return parts;
}

}  // namespace tbound
