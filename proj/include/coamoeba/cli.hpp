// Problem files, reports and the subcommands of the `coamoeba` binary.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coamoeba/count.hpp"
#include "coamoeba/verify.hpp"

namespace coamoeba::cli {

using nlohmann::json;

/// Malformed or unsupported input; the binary exits with status 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parsed problem file:
///
///   { "n": 2,
///     "terms": [ {"alpha": [0,0], "c": [1, 0]}, ... ],
///     "seed": 1, "mc_samples": 1000000,
///     "tolerances": {"identity": 1e-9, ...},
///     "expect": {"intersection_total": 3, ...} }
///
/// Coefficients are a number, or [re, im] where each part is a number or a
/// string holding a rational "p/q" or a decimal.
struct Problem {
    ExpPoly f;
    std::uint64_t seed = 20240601;
    std::uint64_t mc_samples = 1'000'000;
    json tolerances = json::object();
    json expect = json::object();
};

Problem parse_problem(const json& doc);
Problem load_problem(const std::string& path);

struct Options {
    std::string command;
    std::string input;
    bool json_output = false;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> mc_samples;
    std::optional<std::vector<double>> eval;
    bool grad = false;
    std::optional<std::size_t> grid;
    std::optional<std::pair<double, double>> x_range;
    std::optional<std::string> cloud;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"info",     "shell",  "smatrix", "ronkin", "count", "bounds",
                                                "identity", "sample", "plot",    "verify"};
    return names;
}

struct Outcome {
    int exit_code = 0;
    json report;
    std::string text;
};

/// Runs one subcommand. Exit code 0 iff every check passes, 1 when a check
/// fails, 2 for malformed input.
Outcome run(const Options& opts);

/// Human-readable rendering of a report; angles print in radians and as
/// multiples of pi, 12 significant digits.
std::string format_text(const json& report);

/// {"rad": t, "pi": t / pi}
json angle_json(double t);

/// SVG of the shell on [0, 2pi)^2: one polyline family per geometric line,
/// stroke width proportional to its total weight, vertices labelled with
/// multiplicity, optional cloud as dots. Throws InputError for n != 2.
std::string render_svg(const ShellArrangement& sh, const IntersectionSet* vertices, const SampleCloud* cloud);

}  // namespace coamoeba::cli
