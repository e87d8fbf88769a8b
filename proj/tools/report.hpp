#pragma once

// JSON verification reports shared by the command-line tool and the tests.
// Reports contain only inputs and results (no timing), so identical inputs and
// seed give byte-identical output.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vfix/curve.hpp"
#include "vfix/periodic.hpp"

namespace vfix::report {

using Json = nlohmann::ordered_json;

// Bad command-line input (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<std::string> curve;
    std::uint64_t seed = 42;
    std::optional<int> cap;
};

const std::vector<std::string>& claim_ids();

Curve parse_curve(const std::string& spec);  // UsageError on bad input
Json curve_info(const Curve& c);
// Runs one claim.  Library errors become a failing report with diagnostics;
// unknown claims and missing curves raise UsageError.
Json verify(const std::string& claim, const Options& opt);

// {"q": 2, "coeff_degree": 1, "n": 3, "matrix": [[["0x1", "0x1"]]]}; entries
// are lists of hex coefficients of s^0, s^1, ...; coeff_degree defaults to
// the degree of GF(q) over GF(2).
FrobPeriodicModule parse_module(const nlohmann::json& j);
Json monodromy(const FrobPeriodicModule& mod, int n_max, int cap);

// Indented key/value rendering for terminals.
std::string human(const Json& j);

}  // namespace vfix::report
