#include <cstdlib>
#include <fstream>

#include <fmt/format.h>

#include "coamoeba/cli.hpp"

namespace coamoeba::cli {

namespace {

double parse_real(const json& v) {
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        const auto slash = s.find('/');
        try {
            std::size_t used = 0;
            if (slash == std::string::npos) {
                const double x = std::stod(s, &used);
                if (used == s.size())
                    return x;
            } else {
                const long long num = std::stoll(s.substr(0, slash), &used);
                if (used == slash) {
                    const std::string den_str = s.substr(slash + 1);
                    const long long den = std::stoll(den_str, &used);
                    if (used == den_str.size() && den != 0)
                        return static_cast<double>(num) / static_cast<double>(den);
                }
            }
        } catch (const std::exception&) {
        }
        throw InputError(fmt::format("cannot parse number '{}'", s));
    }
    throw InputError("coefficient parts must be numbers or strings");
}

Complex parse_coefficient(const json& c) {
    if (c.is_number() || c.is_string())
        return {parse_real(c), 0.0};
    if (c.is_array() && c.size() == 2)
        return {parse_real(c[0]), parse_real(c[1])};
    throw InputError("coefficient must be a number or a [re, im] pair");
}

}  // namespace

Problem parse_problem(const json& doc) {
    if (!doc.is_object())
        throw InputError("problem file must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
        throw InputError("field 'n' must be a positive integer");
    const auto n = doc["n"].get<std::size_t>();
    if (!doc.contains("terms") || !doc["terms"].is_array() || doc["terms"].empty())
        throw InputError("field 'terms' must be a non-empty array");

    std::vector<Term> terms;
    for (const auto& t : doc["terms"]) {
        if (!t.is_object() || !t.contains("alpha") || !t.contains("c"))
            throw InputError("each term needs 'alpha' and 'c'");
        const auto& a = t["alpha"];
        if (!a.is_array() || a.size() != n)
            throw InputError(fmt::format("'alpha' must be an integer array of length {}", n));
        IntVec alpha;
        for (const auto& x : a) {
            if (!x.is_number_integer())
                throw InputError("'alpha' entries must be integers");
            alpha.push_back(x.get<Int>());
        }
        terms.push_back({std::move(alpha), parse_coefficient(t["c"])});
    }

    std::optional<ExpPoly> f;
    try {
        f.emplace(n, std::move(terms));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    Problem p{std::move(*f)};
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned())
            throw InputError("'seed' must be a non-negative integer");
        p.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("mc_samples")) {
        if (!doc["mc_samples"].is_number_unsigned() || doc["mc_samples"].get<std::uint64_t>() == 0)
            throw InputError("'mc_samples' must be a positive integer");
        p.mc_samples = doc["mc_samples"].get<std::uint64_t>();
    }
    if (doc.contains("tolerances")) {
        if (!doc["tolerances"].is_object())
            throw InputError("'tolerances' must be an object");
        for (const auto& [k, v] : doc["tolerances"].items())
            if (!v.is_number() || v.get<double>() < 0.0)
                throw InputError(fmt::format("tolerance '{}' must be a non-negative number", k));
        p.tolerances = doc["tolerances"];
    }
    if (doc.contains("expect")) {
        if (!doc["expect"].is_object())
            throw InputError("'expect' must be an object");
        p.expect = doc["expect"];
    }
    return p;
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError(fmt::format("cannot open '{}'", path));
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw InputError(fmt::format("'{}' is not valid JSON: {}", path, e.what()));
    }
    return parse_problem(doc);
}

}  // namespace coamoeba::cli
