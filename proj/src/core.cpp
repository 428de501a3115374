#include "coamoeba/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace coamoeba {

ExpPoly::ExpPoly(std::size_t n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {
    if (n_ == 0)
        throw std::invalid_argument("dimension must be positive");
    if (terms_.empty())
        throw std::invalid_argument("exponential polynomial has no terms");

    double cmax = 0.0;
    std::set<IntVec> seen;
    for (const auto& t : terms_) {
        if (t.alpha.size() != n_)
            throw std::invalid_argument(
                fmt::format("exponent {} does not have {} entries", format_vector(t.alpha), n_));
        if (!std::isfinite(t.c.real()) || !std::isfinite(t.c.imag()))
            throw std::invalid_argument("non-finite coefficient");
        if (!seen.insert(t.alpha).second)
            throw std::invalid_argument(fmt::format("duplicate exponent {}", format_vector(t.alpha)));
        cmax = std::max(cmax, std::abs(t.c));
    }
    for (const auto& t : terms_) {
        if (std::abs(t.c) == 0.0 || std::abs(t.c) < 1e-14 * cmax)
            throw std::invalid_argument(
                fmt::format("coefficient of {} is zero or negligible", format_vector(t.alpha)));
    }
}

std::vector<IntVec> ExpPoly::support() const {
    std::vector<IntVec> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
        out.push_back(t.alpha);
    return out;
}

std::size_t ExpPoly::find(std::span<const Int> alpha) const {
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (std::equal(alpha.begin(), alpha.end(), terms_[i].alpha.begin(), terms_[i].alpha.end()))
            return i;
    return terms_.size();
}

ExpPoly ExpPoly::translated(std::span<const Int> shift) const {
    std::vector<Term> out = terms_;
    for (auto& t : out)
        for (std::size_t k = 0; k < n_; ++k)
            t.alpha[k] += shift[k];
    return ExpPoly(n_, std::move(out));
}

Complex ExpPoly::evaluate(std::span<const Complex> z) const {
    Complex sum = 0.0;
    for (const auto& t : terms_) {
        Complex e = 0.0;
        for (std::size_t k = 0; k < n_; ++k)
            e += static_cast<double>(t.alpha[k]) * z[k];
        sum += t.c * std::exp(e);
    }
    return sum;
}

Int gcd_of(std::span<const Int> v) {
    Int g = 0;
    for (Int x : v)
        g = std::gcd(g, x);
    return g;
}

IntVec primitive_vector(std::span<const Int> v) {
    const Int g = gcd_of(v);
    if (g == 0)
        throw std::invalid_argument("zero direction");
    IntVec out(v.begin(), v.end());
    for (auto& x : out)
        x /= g;
    return out;
}

double unit_ball_volume(int k) {
    if (k < 0)
        throw std::invalid_argument("negative dimension");
    return std::pow(kPi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

Int dot(std::span<const Int> a, std::span<const Int> b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double norm(std::span<const Int> v) {
    return std::sqrt(static_cast<double>(dot(v, v)));
}

bool lex_less(std::span<const Int> a, std::span<const Int> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

IntVec subtract(std::span<const Int> a, std::span<const Int> b) {
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

double wrap_angle(double t) {
    double r = std::fmod(t, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    if (r >= kTwoPi)
        r = 0.0;
    return r;
}

double centered_angle(double t) {
    double r = wrap_angle(t);
    if (r > kPi)
        r -= kTwoPi;
    return r;
}

std::string format_vector(std::span<const Int> v) {
    return fmt::format("({})", fmt::join(v, ","));
}

}  // namespace coamoeba
