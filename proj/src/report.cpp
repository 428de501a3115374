#include <sstream>

#include <fmt/format.h>

#include "coamoeba/cli.hpp"

namespace coamoeba::cli {

namespace {

bool is_angle(const json& v) { return v.is_object() && v.size() == 2 && v.contains("rad") && v.contains("pi"); }

bool is_inline(const json& v) {
    if (is_angle(v) || v.is_primitive())
        return true;
    if (v.is_array())
        return std::all_of(v.begin(), v.end(), [](const json& x) { return is_inline(x); });
    return false;
}

std::string scalar(const json& v) {
    if (is_angle(v))
        return fmt::format("{:.12g} ({:.12g}π)", v["rad"].get<double>(), v["pi"].get<double>());
    if (v.is_number_float())
        return fmt::format("{:.12g}", v.get<double>());
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_array()) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? ", " : "") + scalar(v[i]);
        return s + "]";
    }
    return v.dump();
}

void emit(std::ostringstream& os, const json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) {
            if (is_inline(x))
                os << pad << k << ": " << scalar(x) << "\n";
            else {
                os << pad << k << ":\n";
                emit(os, x, indent + 2);
            }
        }
    } else if (v.is_array()) {
        for (const auto& x : v) {
            if (is_inline(x))
                os << pad << "- " << scalar(x) << "\n";
            else {
                os << pad << "-\n";
                emit(os, x, indent + 2);
            }
        }
    } else {
        os << pad << scalar(v) << "\n";
    }
}

}  // namespace

std::string format_text(const json& report) {
    std::ostringstream os;
    if (report.contains("error")) {
        os << "error: " << report["error"].get<std::string>() << "\n";
        return os.str();
    }
    os << fmt::format("{} ({}, n = {}, seed = {})\n", report["command"].get<std::string>(),
                      report["input"].get<std::string>(), report["n"].get<std::size_t>(), report["seed"].get<std::uint64_t>());
    emit(os, report["result"], 2);
    os << "checks:\n";
    for (const auto& c : report["checks"])
        os << fmt::format("  [{}] {}: value {}, reference {}, tolerance {:.3g}\n",
                          c["status"] == "pass" ? "PASS" : "FAIL", c["name"].get<std::string>(), scalar(c["value"]),
                          scalar(c["reference"]), c["tolerance"].get<double>());
    os << "status: " << report["status"].get<std::string>() << "\n";
    return os.str();
}

}  // namespace coamoeba::cli
