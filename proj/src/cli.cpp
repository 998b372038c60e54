#include "tbound/cli.hpp"

#include <cstdio>
#include <ostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"

#include "tbound/bundles.hpp"
#include "tbound/sl2z.hpp"

namespace tbound::cli {

using nlohmann::json;

std::string format_decimal(double x) {
    if (x == 0) return "0";  // also folds -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

TorsionRecord make_record(const FinitePresentation& p, const AnnulusReport& r) {
    TorsionRecord rec;
    rec.presentation = serialize_presentation(p);
    rec.psi = r.psi.values;
    rec.k = r.k.get_si();
    rec.c = r.c.get_str();
    for (std::int64_t e = 0; !r.delta.is_zero() && e <= r.delta.high(); ++e) rec.delta_coeffs.push_back(r.delta.coeff(e).get_str());
    rec.delta_display = r.delta.to_string();
    for (const auto& z : r.roots)
        rec.roots.push_back({format_decimal(z.re), format_decimal(z.im), format_decimal(z.modulus), z.multiplicity});
    rec.verdict = to_string(r.verdict);
    rec.rank = r.rank;
    rec.certificate = r.certificate;
    if (r.upper_radius) rec.upper_radius = r.upper_radius->get_str();
    if (r.lower_radius) rec.lower_radius = r.lower_radius->get_str();
    rec.error = r.error;
    return rec;
}

json to_json(const TorsionRecord& r) {
    json roots = json::array();
    for (const auto& z : r.roots) roots.push_back({{"re", z.re}, {"im", z.im}, {"modulus", z.modulus}, {"mult", z.mult}});
    json j = {
        {"presentation", r.presentation},
        {"psi", r.psi},
        {"k", r.k},
        {"c", r.c},
        {"delta", {{"coeffs", r.delta_coeffs}, {"display", r.delta_display}}},
        {"roots", roots},
        {"verdict", r.verdict},
        {"rank", r.rank},
        {"certificate", r.certificate},
        {"upper_radius", r.upper_radius},
        {"lower_radius", r.lower_radius},
    };
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

TorsionRecord record_from_json(const json& j) {
    TorsionRecord r;
    r.presentation = j.at("presentation").get<std::string>();
    r.psi = j.at("psi").get<std::vector<std::int64_t>>();
    r.k = j.at("k").get<std::int64_t>();
    r.c = j.at("c").get<std::string>();
    r.delta_coeffs = j.at("delta").at("coeffs").get<std::vector<std::string>>();
    r.delta_display = j.at("delta").at("display").get<std::string>();
    for (const auto& z : j.at("roots"))
        r.roots.push_back({z.at("re").get<std::string>(), z.at("im").get<std::string>(),
                           z.at("modulus").get<std::string>(), z.at("mult").get<int>()});
    r.verdict = j.at("verdict").get<std::string>();
    r.rank = j.value("rank", std::size_t{0});
    r.certificate = j.value("certificate", std::string{});
    r.upper_radius = j.value("upper_radius", std::string{});
    r.lower_radius = j.value("lower_radius", std::string{});
    r.error = j.value("error", std::string{});
    return r;
}

int exit_code_for(Verdict v) {
    switch (v) {
        case Verdict::pass:
        case Verdict::vacuous: return kOk;
        case Verdict::fail: return kFail;
        case Verdict::boundary_indeterminate:
        case Verdict::unknown: return kIndeterminate;
    }
    return kInputError;
}

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        try {
            out.push_back(std::stoll(item, &used));
        } catch (const std::exception&) {
            throw InputError("invalid " + what + " entry '" + item + "'");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw InputError("invalid " + what + " entry '" + item + "'");
    }
    if (out.empty()) throw InputError("empty " + what);
    return out;
}

Rational parse_rational(const std::string& s) {
    static const std::regex fraction(R"(\s*(\d+)\s*(/\s*(\d+))?\s*)");
    static const std::regex decimal(R"(\s*(\d*)\.(\d+)\s*)");
    std::smatch m;
    if (std::regex_match(s, m, fraction)) {
        Rational q(Integer(m[1].str()), m[3].matched ? Integer(m[3].str()) : Integer(1));
        if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    }
    if (std::regex_match(s, m, decimal)) {
        Integer den = 1;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, m[2].length());
        Rational q(Integer(m[1].str().empty() ? "0" : m[1].str()) * den + Integer(m[2].str()), den);
        q.canonicalize();
        return q;
    }
    throw InputError("invalid rational '" + s + "'");
}

void check_tolerance(double tol) {
    if (!(tol > 0 && tol <= 1e-4)) throw InputError("--tol must lie in (0, 1e-4]");
}

void print_report_text(std::ostream& out, const AnnulusReport& r) {
    out << "psi = (" << r.psi.to_string() << ")\n";
    if (!r.error.empty()) {
        out << "  error: " << r.error << "\n  verdict: " << to_string(r.verdict) << "\n";
        return;
    }
    out << "  rank = " << r.rank << "\n";
    out << "  delta = " << r.delta.to_string() << "\n";
    if (!r.certificate.empty())
        out << "  exact certificate (" << r.certificate << "): radii " << r.upper_radius->get_str() << ", "
            << r.lower_radius->get_str() << " <= c\n";
    for (const auto& z : r.roots)
        out << "  root " << format_decimal(z.re) << (z.im < 0 ? " - " : " + ") << format_decimal(std::abs(z.im))
            << "i  |z| = " << format_decimal(z.modulus) << "  mult " << z.multiplicity << "\n";
    out << "  verdict: " << to_string(r.verdict) << "\n";
}

struct Options {
    std::string pres;
    std::string psi;
    std::int64_t bound = 1;
    double tol = 1e-10;
    bool json = false;
    bool certify_only = false;
    std::string matrix;
    unsigned power = 1;
    std::string c;
    std::int64_t trace_bound = 0;
    bool validate = false;
};

int cmd_torsion(const Options& o, std::ostream& out) {
    check_tolerance(o.tol);
    const auto pres = load_presentation(o.pres);
    Epimorphism psi{parse_int_list(o.psi, "psi")};
    const auto check = validate_epimorphism(pres, psi.values);
    if (!check.valid) throw InputError("invalid epimorphism: " + check.reason);
    const auto mode = o.certify_only ? CertifyMode::exact_only : CertifyMode::full;
    const auto rep = annulus_certify(pres, psi, o.tol, mode);
    if (o.json) {
        out << to_json(make_record(pres, rep)).dump(2) << "\n";
    } else {
        out << "presentation: " << o.pres << " (" << pres.generator_count() << " generators, " << pres.relator_count()
            << " relators)\n";
        out << "k = " << rep.k.get_str() << "\nc = " << rep.c.get_str() << "\n";
        print_report_text(out, rep);
    }
    return exit_code_for(rep.verdict);
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
    check_tolerance(o.tol);
    if (o.bound < 1) throw InputError("--bound must be >= 1");
    const auto pres = load_presentation(o.pres);
    const auto mode = o.certify_only ? CertifyMode::exact_only : CertifyMode::full;
    const auto reports = scan(pres, o.bound, o.tol, mode);
    if (reports.empty()) err << "warning: no epimorphisms onto Z within the bound (first Betti number may be 0)\n";

    const Integer k = complexity_k(pres);
    const Rational c = root_bound_c(pres.generator_count(), k);
    if (o.json) {
        json list = json::array();
        for (const auto& r : reports) list.push_back(to_json(make_record(pres, r)));
        json doc = {{"presentation", serialize_presentation(pres)},
                    {"bound", o.bound},
                    {"k", k.get_si()},
                    {"c", c.get_str()},
                    {"reports", list}};
        out << doc.dump(2) << "\n";
    } else {
        out << "presentation: " << o.pres << "\nk = " << k.get_str() << "\nc = " << c.get_str() << "\n"
            << reports.size() << " epimorphism(s) with sup-norm <= " << o.bound << "\n";
        for (const auto& r : reports) print_report_text(out, r);
    }
    bool any_fail = false, any_error = false;
    for (const auto& r : reports) {
        any_fail |= r.verdict == Verdict::fail;
        any_error |= !r.error.empty();
    }
    if (any_fail) return kFail;
    return any_error ? kInputError : kOk;
}

int cmd_mapping_torus(const Options& o, std::ostream& out) {
    check_tolerance(o.tol);
    const auto entries = parse_int_list(o.matrix, "matrix");
    if (entries.size() != 4) throw InputError("--matrix expects four entries a,b,c,d");
    if (o.power < 1) throw InputError("--power must be >= 1");
    IntegerMatrix a{{Integer(static_cast<long>(entries[0])), Integer(static_cast<long>(entries[1]))},
                    {Integer(static_cast<long>(entries[2])), Integer(static_cast<long>(entries[3]))}};
    if (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) != 1) throw InputError("matrix must have determinant 1");

    const auto bundle = verify_bundle_torsion(a, o.tol);
    std::vector<PowerCoverReport> powers;
    for (unsigned n = 1; n <= o.power; ++n) powers.push_back(power_cover(a, n, o.tol));
    bool all = bundle.pass;
    for (const auto& p : powers) all &= p.pass;

    if (o.json) {
        json roots = json::array();
        for (const auto& z : bundle.roots)
            roots.push_back({{"re", format_decimal(z.re)}, {"im", format_decimal(z.im)},
                             {"modulus", format_decimal(z.modulus)}, {"mult", z.multiplicity}});
        json pw = json::array();
        for (const auto& p : powers)
            pw.push_back({{"n", p.n},
                          {"power_charpoly", p.power_charpoly.to_string()},
                          {"powered_roots", p.powered_roots.to_string()},
                          {"exact", p.exact_match},
                          {"numeric", p.numeric_match},
                          {"max_root_error", format_decimal(p.max_root_error)},
                          {"pass", p.pass}});
        json doc = {{"matrix", entries},
                    {"bundle_torsion", {{"torsion", bundle.torsion.to_string()},
                                        {"charpoly", bundle.charpoly.to_string()},
                                        {"roots", roots},
                                        {"pass", bundle.pass}}},
                    {"powers", pw},
                    {"pass", all}};
        out << doc.dump(2) << "\n";
    } else {
        out << "A = [[" << entries[0] << "," << entries[1] << "],[" << entries[2] << "," << entries[3] << "]]\n";
        out << "mapping torus torsion polynomial: " << bundle.torsion.to_string() << "\n";
        out << "characteristic polynomial:        " << bundle.charpoly.to_string() << "\n";
        for (const auto& z : bundle.roots)
            out << "  eigenvalue " << format_decimal(z.re) << (z.im < 0 ? " - " : " + ") << format_decimal(std::abs(z.im))
                << "i  |z| = " << format_decimal(z.modulus) << "  mult " << z.multiplicity << "\n";
        out << "torsion = charpoly: " << (bundle.pass ? "pass" : "FAIL") << "\n";
        for (const auto& p : powers)
            out << "n = " << p.n << ": charpoly(A^n) = " << p.power_charpoly.to_string()
                << ", roots^n polynomial = " << p.powered_roots.to_string() << " -> " << (p.pass ? "pass" : "FAIL")
                << "\n";
    }
    return all ? kOk : kFail;
}

int cmd_sol_census(const Options& o, std::ostream& out) {
    std::int64_t bound = 0;
    std::optional<Rational> c;
    if (!o.c.empty()) {
        c = parse_rational(o.c);
        if (*c < 1) throw InputError("--c must be >= 1");
        bound = trace_bound_for_root_bound(*c);
    } else {
        if (o.trace_bound == 0) throw InputError("sol-census needs --c or --trace-bound");
        if (o.trace_bound <= 2) throw InputError("--trace-bound must exceed 2");
        if (o.trace_bound > kMaxEnumeratedTrace) throw InputError("--trace-bound too large");
        bound = o.trace_bound;
    }
    const auto census = census_by_trace_bound(bound);

    bool validated = true;
    std::vector<std::string> validation_notes;
    if (o.validate) {
        constexpr std::int64_t kOracleBound = 200;
        for (const auto& tc : census) {
            const auto parts = bounded_class_partition(tc.trace, kOracleBound);
            std::size_t hit = 0;
            for (const auto& part : parts) {
                std::size_t reps = 0;
                for (const auto& w : tc.classes)
                    if (std::binary_search(part.begin(), part.end(), rl_to_matrix(w))) ++reps;
                if (reps == 1) ++hit;
            }
            const bool ok = parts.size() == tc.classes.size() && hit == parts.size();
            validated &= ok;
            validation_notes.push_back("trace " + std::to_string(tc.trace) + ": " + std::to_string(tc.classes.size()) +
                                       " classes, oracle components " + std::to_string(parts.size()) +
                                       (ok ? " (agree)" : " (DISAGREE)"));
        }
    }

    if (o.json) {
        json traces = json::array();
        for (const auto& tc : census) {
            json classes = json::array();
            for (const auto& w : tc.classes) {
                const Mat2 m = rl_to_matrix(w);
                const RLWord inv = inverse_class(w);
                classes.push_back({{"word", w.to_string()},
                                   {"matrix", {m.a, m.b, m.c, m.d}},
                                   {"inverse_class", inv.to_string()},
                                   {"self_inverse", inv == w}});
            }
            traces.push_back({{"trace", tc.trace}, {"count", tc.classes.size()}, {"classes", classes}});
        }
        json doc = {{"trace_bound", bound}, {"c", c ? json(c->get_str()) : json(nullptr)}, {"traces", traces}};
        if (o.validate) doc["validated"] = validated;
        out << doc.dump(2) << "\n";
    } else {
        if (c) out << "c = " << c->get_str() << ", ";
        out << "hyperbolic traces with |trace| <= " << bound << "\n";
        if (census.empty()) out << "(no hyperbolic traces)\n";
        for (const auto& tc : census) {
            out << "trace " << tc.trace << ": " << tc.classes.size() << " class(es)\n";
            for (const auto& w : tc.classes) {
                const RLWord inv = inverse_class(w);
                out << "  " << w.to_string() << "  " << rl_to_matrix(w).to_string();
                if (inv == w)
                    out << "  (conjugate to its inverse)";
                else
                    out << "  (inverse class " << inv.to_string() << ")";
                out << "\n";
            }
        }
        for (const auto& n : validation_notes) out << "oracle: " << n << "\n";
    }
    return validated ? kOk : kFail;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Torsion polynomials of epimorphisms to Z and their root annulus"};
    app.require_subcommand(1);
    Options o;

    auto* torsion = app.add_subcommand("torsion", "Torsion polynomial and annulus verdict for one epimorphism");
    torsion->add_option("--pres", o.pres, "Presentation file")->required();
    torsion->add_option("--psi", o.psi, "Epimorphism values v1,v2,...")->required();
    torsion->add_option("--tol", o.tol, "Root-finding tolerance in (0, 1e-4]");
    torsion->add_flag("--json", o.json, "Emit JSON");
    torsion->add_flag("--certify-only", o.certify_only, "Exact certificates only, no floating point");

    auto* scan_cmd = app.add_subcommand("scan", "Annulus verdicts for all epimorphisms up to a bound");
    scan_cmd->add_option("--pres", o.pres, "Presentation file")->required();
    scan_cmd->add_option("--bound", o.bound, "Sup-norm bound B >= 1")->required();
    scan_cmd->add_option("--tol", o.tol, "Root-finding tolerance in (0, 1e-4]");
    scan_cmd->add_flag("--json", o.json, "Emit JSON");
    scan_cmd->add_flag("--certify-only", o.certify_only, "Exact certificates only, no floating point");

    auto* torus = app.add_subcommand("mapping-torus", "Torus mapping torus: torsion vs charpoly, power covers");
    torus->add_option("--matrix", o.matrix, "Monodromy a,b,c,d (row-major, det 1)")->required();
    torus->add_option("--power", o.power, "Check covers of degree 1..n");
    torus->add_option("--tol", o.tol, "Root-finding tolerance in (0, 1e-4]");
    torus->add_flag("--json", o.json, "Emit JSON");

    auto* census = app.add_subcommand("sol-census", "Hyperbolic SL(2,Z) classes by trace");
    auto* c_opt = census->add_option("--c", o.c, "Root bound c >= 1 (integer, a/b or decimal)");
    auto* t_opt = census->add_option("--trace-bound", o.trace_bound, "Largest |trace|");
    c_opt->excludes(t_opt);
    t_opt->excludes(c_opt);
    census->add_flag("--json", o.json, "Emit JSON");
    census->add_flag("--validate", o.validate, "Cross-check class counts with the conjugacy oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (torsion->parsed()) return cmd_torsion(o, out);
        if (scan_cmd->parsed()) return cmd_scan(o, out, err);
        if (torus->parsed()) return cmd_mapping_torus(o, out);
        if (census->parsed()) return cmd_sol_census(o, out);
    } catch (const ParseError& e) {
        err << "error: " << o.pres << ": " << e.what() << "\n";
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace tbound::cli
