#pragma once

// Command-line front end and the JSON report format.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "tbound/presentation.hpp"
#include "tbound/torsion.hpp"

namespace tbound::cli {

enum ExitCode : int {
    kOk = 0,           // pass or vacuous
    kInputError = 1,
    kFail = 2,
    kIndeterminate = 3,  // boundary-indeterminate, or no exact certificate in --certify-only
};

struct RootRecord {
    std::string re, im, modulus;
    int mult = 1;
    friend bool operator==(const RootRecord&, const RootRecord&) = default;
};

/// One torsion report as serialized. Polynomials are exact; roots are decimal
/// strings with 15 significant digits.
struct TorsionRecord {
    std::string presentation;
    std::vector<std::int64_t> psi;
    std::int64_t k = 0;
    std::string c;
    std::vector<std::string> delta_coeffs;  // ascending from t^0
    std::string delta_display;
    std::vector<RootRecord> roots;
    std::string verdict;
    std::size_t rank = 0;
    std::string certificate;
    std::string upper_radius;
    std::string lower_radius;
    std::string error;
    friend bool operator==(const TorsionRecord&, const TorsionRecord&) = default;
};

std::string format_decimal(double x);  // 15 significant digits

TorsionRecord make_record(const FinitePresentation& p, const AnnulusReport& r);
nlohmann::json to_json(const TorsionRecord& r);
TorsionRecord record_from_json(const nlohmann::json& j);

/// Exit code for a single report.
int exit_code_for(Verdict v);

/// Runs the CLI; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tbound::cli
