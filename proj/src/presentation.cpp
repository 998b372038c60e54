#include "tbound/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tbound {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

constexpr std::int64_t kMaxPower = 1'000'000;

bool valid_name(const std::string& s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin() + 1, s.end(), [](char ch) {
        auto c = static_cast<unsigned char>(ch);
        return std::islower(c) || std::isdigit(c) || c == '_';
    });
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

std::size_t skip_space(const std::string& s, std::size_t pos) {
    while (pos < s.size() && is_space(s[pos])) ++pos;
    return pos;
}

struct Parser {
    FinitePresentation result;
    std::map<std::string, std::uint32_t> index;
    bool seen_gens = false;

    void gens_line(const std::string& line, std::size_t lineno, std::size_t pos) {
        if (seen_gens) throw ParseError(lineno, 1, "duplicate 'gens:' line");
        seen_gens = true;
        pos = skip_space(line, pos);
        if (pos >= line.size()) return;  // no generators
        for (;;) {
            pos = skip_space(line, pos);
            const std::size_t start = pos;
            while (pos < line.size() && line[pos] != ',' && !is_space(line[pos])) ++pos;
            const std::string name = line.substr(start, pos - start);
            if (!valid_name(name)) throw ParseError(lineno, start + 1, "invalid generator name '" + name + "'");
            if (index.count(name)) throw ParseError(lineno, start + 1, "duplicate generator name '" + name + "'");
            index.emplace(name, static_cast<std::uint32_t>(result.generator_names.size()));
            result.generator_names.push_back(name);
            pos = skip_space(line, pos);
            if (pos >= line.size()) return;
            if (line[pos] != ',') throw ParseError(lineno, pos + 1, "expected ',' between generator names");
            ++pos;
        }
    }

    void rel_line(const std::string& line, std::size_t lineno, std::size_t pos) {
        std::vector<Letter> letters;
        pos = skip_space(line, pos);
        if (pos >= line.size()) throw ParseError(lineno, pos + 1, "empty relator");
        while (pos < line.size()) {
            const std::size_t start = pos;
            while (pos < line.size() && !is_space(line[pos])) ++pos;
            token(line.substr(start, pos - start), lineno, start + 1, letters);
            pos = skip_space(line, pos);
        }
        Word w(letters);
        if (w.is_identity()) {
            result.warnings.push_back("line " + std::to_string(lineno) + ": relator reduces to the identity and was dropped");
            return;
        }
        result.relators.push_back(std::move(w));
    }

    void token(const std::string& tok, std::size_t lineno, std::size_t col, std::vector<Letter>& out) {
        const auto caret = tok.find('^');
        std::string base = tok.substr(0, caret);
        std::int64_t power = 1;
        if (caret != std::string::npos) {
            const std::string exp = tok.substr(caret + 1);
            std::size_t used = 0;
            try {
                power = std::stoll(exp, &used);
            } catch (const std::exception&) {
                throw ParseError(lineno, col + caret + 1, "invalid exponent '" + exp + "'");
            }
            if (used != exp.size() || exp.empty() || exp[0] == '+')
                throw ParseError(lineno, col + caret + 1, "invalid exponent '" + exp + "'");
            if (power == 0) throw ParseError(lineno, col + caret + 1, "exponent must be nonzero");
            if (power > kMaxPower || power < -kMaxPower) throw ParseError(lineno, col + caret + 1, "exponent too large");
        }
        if (base.empty()) throw ParseError(lineno, col, "missing generator before '^'");
        int sign = 1;
        if (std::isupper(static_cast<unsigned char>(base[0]))) {
            base[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(base[0])));
            sign = -1;
        }
        auto it = index.find(base);
        if (it == index.end()) {
            if (!valid_name(base)) throw ParseError(lineno, col, "invalid token '" + tok + "'");
            throw ParseError(lineno, col, "unknown generator '" + tok.substr(0, caret) + "'");
        }
        if (power < 0) {
            sign = -sign;
            power = -power;
        }
        for (std::int64_t k = 0; k < power; ++k) out.push_back(Letter{Generator{it->second}, sign});
    }
};

std::string inverse_name(const std::string& name) {
    std::string s = name;
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

}  // namespace

FinitePresentation parse_presentation(const std::string& text) {
    Parser parser;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const auto hash = raw.find('#');
        const std::string line = raw.substr(0, hash);
        const std::size_t pos = skip_space(line, 0);
        if (pos >= line.size()) continue;
        if (line.compare(pos, 5, "gens:") == 0) {
            parser.gens_line(line, lineno, pos + 5);
        } else if (line.compare(pos, 4, "rel:") == 0) {
            parser.rel_line(line, lineno, pos + 4);
        } else {
            throw ParseError(lineno, pos + 1, "expected 'gens:' or 'rel:'");
        }
    }
    if (!parser.seen_gens) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing 'gens:' line");
    return std::move(parser.result);
}

FinitePresentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open presentation file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
}

std::string serialize_presentation(const FinitePresentation& p) {
    std::ostringstream os;
    os << "gens:";
    for (std::size_t j = 0; j < p.generator_names.size(); ++j) os << (j ? ", " : " ") << p.generator_names[j];
    os << '\n';
    for (const auto& r : p.relators) {
        os << "rel:";
        for (const auto& l : r.letters()) {
            const auto& name = p.generator_names.at(l.gen.index);
            os << ' ' << (l.sign > 0 ? name : inverse_name(name));
        }
        os << '\n';
    }
    return os.str();
}

Matrix<std::int64_t> exponent_sum_matrix(const FinitePresentation& p) {
    Matrix<std::int64_t> e(p.relator_count(), p.generator_count(), 0);
    for (std::size_t i = 0; i < p.relator_count(); ++i) {
        const auto sums = p.relators[i].exponent_sums(p.generator_count());
        for (std::size_t j = 0; j < p.generator_count(); ++j) e(i, j) = sums[j];
    }
    return e;
}

Matrix<GroupRingElement> fox_jacobian(const FinitePresentation& p) {
    Matrix<GroupRingElement> j(p.relator_count(), p.generator_count());
    for (std::size_t r = 0; r < p.relator_count(); ++r)
        for (std::size_t g = 0; g < p.generator_count(); ++g)
            j(r, g) = fox_derivative(p.relators[r], Generator{static_cast<std::uint32_t>(g)});
    return j;
}

Epimorphism Epimorphism::negated() const {
    Epimorphism e = *this;
    for (auto& v : e.values) v = -v;
    return e;
}

std::string Epimorphism::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(values[i]);
    }
    return s;
}

EpimorphismCheck validate_epimorphism(const FinitePresentation& p, const std::vector<std::int64_t>& v) {
    EpimorphismCheck check;
    if (v.size() != p.generator_count()) {
        check.reason = "expected " + std::to_string(p.generator_count()) + " values, got " + std::to_string(v.size());
        return check;
    }
    for (std::size_t i = 0; i < p.relator_count(); ++i) {
        const std::int64_t image = p.relators[i].weighted_exponent(v);
        if (image != 0) {
            check.relator = i;
            check.reason = "kills-relators violated at relator " + std::to_string(i + 1) + " (image " +
                           std::to_string(image) + ")";
            return check;
        }
    }
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
    check.gcd = g;
    if (g != 1) {
        check.reason = "not surjective (gcd = " + std::to_string(g) + ")";
        return check;
    }
    check.valid = true;
    return check;
}

std::vector<std::vector<Integer>> kernel_lattice_basis(const Matrix<std::int64_t>& e, std::size_t cols) {
    // Row-reduce [E^T | I] over Z; rows whose E^T part vanishes span the kernel.
    const std::size_t n = e.rows();
    std::vector<std::vector<Integer>> rows(cols, std::vector<Integer>(n + cols, 0));
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < n; ++i) rows[j][i] = static_cast<long>(e(i, j));
        rows[j][n + j] = 1;
    }

    auto echelon = [](std::vector<std::vector<Integer>>& m, std::size_t first_col, std::size_t last_col) {
        std::size_t r = 0;
        for (std::size_t c = first_col; c < last_col && r < m.size(); ++c) {
            for (;;) {
                std::optional<std::size_t> piv;
                for (std::size_t i = r; i < m.size(); ++i)
                    if (m[i][c] != 0 && (!piv || abs(m[i][c]) < abs(m[*piv][c]))) piv = i;
                if (!piv) break;
                std::swap(m[r], m[*piv]);
                bool clean = true;
                for (std::size_t i = r + 1; i < m.size(); ++i) {
                    if (m[i][c] == 0) continue;
                    Integer q = m[i][c] / m[r][c];  // truncating
                    for (std::size_t k = 0; k < m[i].size(); ++k) m[i][k] -= q * m[r][k];
                    if (m[i][c] != 0) clean = false;
                }
                if (clean) {
                    if (m[r][c] < 0)
                        for (auto& x : m[r]) x = -x;
                    ++r;
                    break;
                }
            }
        }
        return r;
    };

    const std::size_t image_rank = echelon(rows, 0, n);
    std::vector<std::vector<Integer>> basis;
    for (std::size_t j = image_rank; j < cols; ++j) basis.emplace_back(rows[j].begin() + static_cast<std::ptrdiff_t>(n), rows[j].end());
    const std::size_t d = echelon(basis, 0, cols);
    basis.resize(d);
    return basis;
}

namespace {

bool entry_less(std::int64_t a, std::int64_t b) {
    const std::int64_t aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
    if (aa != bb) return aa < bb;
    return a > b;  // positive before negative
}

}  // namespace

bool epimorphism_order(const Epimorphism& a, const Epimorphism& b) {
    return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(), b.values.end(), entry_less);
}

std::vector<Epimorphism> enumerate_epimorphisms(const FinitePresentation& p, std::int64_t bound) {
    if (bound < 1) throw std::invalid_argument("enumerate_epimorphisms: bound must be >= 1");
    const std::size_t m = p.generator_count();
    const auto basis = kernel_lattice_basis(exponent_sum_matrix(p), m);
    const std::size_t d = basis.size();
    std::vector<Epimorphism> out;
    if (d == 0) return out;

    std::vector<std::size_t> pivot(d);
    for (std::size_t k = 0; k < d; ++k) {
        std::size_t c = 0;
        while (basis[k][c] == 0) ++c;
        pivot[k] = c;
    }

    const Integer B = static_cast<long>(bound);
    std::vector<Integer> v(m, 0);
    // Depth-first over basis coefficients; columns before pivot[k] are fixed
    // once coefficients 0..k-1 are chosen, which bounds each range.
    auto recurse = [&](auto&& self, std::size_t k) -> void {
        const std::size_t upto = k < d ? pivot[k] : m;
        for (std::size_t c = 0; c < upto; ++c)
            if (abs(v[c]) > B) return;
        if (k == d) {
            Integer g = 0;
            for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            if (g != 1) return;
            auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
            if (*first < 0) return;
            Epimorphism e;
            for (const auto& x : v) e.values.push_back(x.get_si());
            out.push_back(std::move(e));
            return;
        }
        const Integer& piv = basis[k][pivot[k]];
        const Integer& s = v[pivot[k]];
        // need |s + c*piv| <= B, piv > 0
        Integer lo, hi;
        mpz_cdiv_q(lo.get_mpz_t(), Integer(-B - s).get_mpz_t(), piv.get_mpz_t());
        mpz_fdiv_q(hi.get_mpz_t(), Integer(B - s).get_mpz_t(), piv.get_mpz_t());
        for (Integer c = lo; c <= hi; ++c) {
            for (std::size_t j = 0; j < m; ++j) v[j] += c * basis[k][j];
            self(self, k + 1);
            for (std::size_t j = 0; j < m; ++j) v[j] -= c * basis[k][j];
        }
    };
    recurse(recurse, 0);
    std::sort(out.begin(), out.end(), epimorphism_order);
    return out;
}

Integer complexity_k(const FinitePresentation& p) {
    Rational k = 0;
    for (const auto& r : p.relators)
        for (std::size_t j = 0; j < p.generator_count(); ++j)
            k += norm_l1(fox_derivative(r, Generator{static_cast<std::uint32_t>(j)}));
    return k.get_num();
}

Rational root_bound_c(std::size_t generators, const Integer& k) {
    Integer fact = 1, power = 1;
    for (std::size_t i = 2; i <= generators; ++i) fact *= static_cast<unsigned long>(i);
    mpz_pow_ui(power.get_mpz_t(), k.get_mpz_t(), generators);
    return Rational(1 + fact * power);
}

Rational root_bound_c(const FinitePresentation& p) { return root_bound_c(p.generator_count(), complexity_k(p)); }

}  // namespace tbound
