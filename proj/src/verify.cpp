#include "coamoeba/verify.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "coamoeba/spectrum.hpp"

namespace coamoeba {

namespace {

// Coefficients (log-scaled) of f(z + r) as a polynomial in w_solve with
// w_other fixed; returns dense coefficients with zero roots stripped.
std::vector<Complex> slice_polynomial(const ExpPoly& f, std::span<const double> shift, std::size_t solve,
                                      Complex log_other) {
    const std::size_t other = 1 - solve;
    Int lo = std::numeric_limits<Int>::max(), hi = std::numeric_limits<Int>::min();
    for (const auto& t : f.terms()) {
        lo = std::min(lo, t.alpha[solve]);
        hi = std::max(hi, t.alpha[solve]);
    }
    std::vector<Complex> logs;
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& t : f.terms()) {
        Complex l = std::log(t.c) + static_cast<double>(t.alpha[other]) * log_other;
        for (std::size_t k = 0; k < 2; ++k)
            l += static_cast<double>(t.alpha[k]) * shift[k];
        logs.push_back(l);
        top = std::max(top, l.real());
    }
    std::vector<Complex> dense(static_cast<std::size_t>(hi - lo) + 1, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
        dense[static_cast<std::size_t>(f.term(i).alpha[solve] - lo)] += std::exp(logs[i] - top);

    double scale = 0.0;
    for (auto c : dense)
        scale = std::max(scale, std::abs(c));
    std::size_t first = 0, last = dense.size();
    while (first < last && std::abs(dense[first]) <= 1e-14 * scale)
        ++first;
    while (last > first && std::abs(dense[last - 1]) <= 1e-14 * scale)
        --last;
    return {dense.begin() + static_cast<std::ptrdiff_t>(first), dense.begin() + static_cast<std::ptrdiff_t>(last)};
}

}  // namespace

SampleCloud sample_coamoeba_2d(const ExpPoly& f, std::size_t grid, double x_min, double x_max, std::uint64_t seed) {
    if (f.dim() != 2)
        throw std::invalid_argument("unsupported: coamoeba sampling needs n = 2");
    const auto& first = f.term(0).alpha[0];
    if (std::all_of(f.terms().begin(), f.terms().end(), [&](const Term& t) { return t.alpha[0] == first; }))
        throw std::invalid_argument("rotate coordinates: f does not depend on z1");

    SampleCloud cloud;
    cloud.seed = seed;
    cloud.grid = grid;
    cloud.x_min = x_min;
    cloud.x_max = x_max;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    const double zero_shift[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t j = 0; j < grid; ++j) {
            const double x2 = x_min + (static_cast<double>(i) + jitter(rng)) / static_cast<double>(grid) * (x_max - x_min);
            const double theta2 = (static_cast<double>(j) + jitter(rng)) / static_cast<double>(grid) * kTwoPi;
            const auto poly = slice_polynomial(f, zero_shift, 0, Complex(x2, theta2));
            ++cloud.solves;
            if (poly.size() < 2)
                continue;
            try {
                for (const auto& w : aberth_roots(poly))
                    cloud.points.push_back({wrap_angle(std::arg(w)), wrap_angle(theta2), x2});
            } catch (const RootFindError&) {
                ++cloud.failures;
            }
        }
    return cloud;
}

void write_cloud_csv(std::ostream& os, const SampleCloud& cloud) {
    os << "y1,y2,x2\n";
    for (const auto& p : cloud.points)
        os << fmt::format("{:.9g},{:.9g},{:.9g}\n", p.y1, p.y2, p.x2);
}

SampleCloud read_cloud_csv(std::istream& is) {
    SampleCloud cloud;
    std::string line;
    if (!std::getline(is, line) || line.rfind("y1,y2,x2", 0) != 0)
        throw std::invalid_argument("cloud CSV must start with header y1,y2,x2");
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        CloudPoint p;
        if (!(row >> p.y1 >> p.y2 >> p.x2))
            throw std::invalid_argument("malformed cloud CSV row: " + line);
        cloud.points.push_back(p);
    }
    return cloud;
}

Eigen::VectorXd limit_direction(const NewtonPolytope& p, const Edge& e, double epsilon) {
    const NormalCone cone = normal_cone(p, e);
    if (cone.span_dim() == 0)
        throw std::invalid_argument("normal cone is trivial");

    auto in_shrunken_cone = [&](const Eigen::VectorXd& u) {
        for (const auto& a : p.support) {
            bool on_edge = false;
            for (const auto& pt : e.points)
                on_edge |= p.support[pt.term] == a;
            if (on_edge)
                continue;
            Eigen::VectorXd diff(static_cast<Eigen::Index>(p.n));
            for (std::size_t c = 0; c < p.n; ++c)
                diff[static_cast<Eigen::Index>(c)] = static_cast<double>(e.start[c] - a[c]);
            if (u.dot(diff) < epsilon * diff.norm())
                return false;
        }
        return true;
    };

    // Candidates: the normalized sum of the constraint normals (the cone's
    // "centre" for the planar and half-space cases) and the span basis.
    std::vector<Eigen::VectorXd> candidates;
    Eigen::VectorXd centre = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cone.span_dim()));
    for (const auto& g : cone.halfspace_normals)
        centre += g;
    if (centre.norm() > 1e-12)
        candidates.push_back(cone.to_ambient(centre.normalized()));
    for (const auto& b : cone.span_basis) {
        candidates.push_back(b);
        candidates.push_back(-b);
    }
    for (const auto& u : candidates)
        if (cone.contains(u) && in_shrunken_cone(u))
            return u;
    throw std::invalid_argument(fmt::format("no direction of the shrunken normal cone for epsilon = {}", epsilon));
}

std::vector<LimitSample> shell_limit_check(const ExpPoly& f, const ShellArrangement& sh, std::size_t edge,
                                           const NewtonPolytope& p, const LimitCheckOptions& opts) {
    if (f.dim() != 2)
        throw std::invalid_argument("unsupported: limit check needs n = 2");
    const EdgeSpectrum& sp = sh.spectra.at(edge);
    Eigen::VectorXd u = opts.direction ? Eigen::VectorXd(*opts.direction) : limit_direction(p, sp.edge, opts.epsilon);
    u.normalize();

    const std::size_t solve = std::abs(sp.edge.beta[0]) >= std::abs(sp.edge.beta[1]) ? 0 : 1;
    const std::size_t other = 1 - solve;

    std::vector<LimitSample> out;
    for (double radius : opts.radii) {
        const double shift[2] = {radius * u[0], radius * u[1]};
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> jitter(0.0, 1.0);
        LimitSample ls{radius, 0.0, 0};
        for (std::size_t i = 0; i < opts.grid; ++i)
            for (std::size_t j = 0; j < opts.grid; ++j) {
                const double x = -opts.window + 2.0 * opts.window * (static_cast<double>(i) + jitter(rng)) /
                                                    static_cast<double>(opts.grid);
                const double theta = (static_cast<double>(j) + jitter(rng)) / static_cast<double>(opts.grid) * kTwoPi;
                const auto poly = slice_polynomial(f, shift, solve, Complex(x, theta));
                if (poly.size() < 2)
                    continue;
                std::vector<Complex> roots;
                try {
                    roots = aberth_roots(poly);
                } catch (const RootFindError&) {
                    continue;
                }
                for (const auto& w : roots) {
                    if (std::abs(std::log(std::abs(w))) > opts.window)
                        continue;
                    double y[2];
                    y[solve] = std::arg(w);
                    y[other] = theta;
                    double dev = std::numeric_limits<double>::infinity();
                    for (const auto& r : sp.roots) {
                        double s = -r.phase;
                        for (std::size_t k = 0; k < 2; ++k)
                            s += static_cast<double>(sp.edge.beta[k]) * y[k];
                        dev = std::min(dev, std::abs(centered_angle(s)) / sp.beta_norm);
                    }
                    ls.max_deviation = std::max(ls.max_deviation, dev);
                    ++ls.samples;
                }
            }
        if (ls.samples == 0)
            ls.max_deviation = std::numeric_limits<double>::quiet_NaN();
        out.push_back(ls);
    }
    return out;
}

bool limit_converges(const std::vector<LimitSample>& samples, double final_tol, double floor) {
    if (samples.empty())
        return false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].samples == 0 || std::isnan(samples[i].max_deviation))
            return false;
        const bool at_floor = samples[i].max_deviation <= floor;
        if (i > 0 && !at_floor && !(samples[i].max_deviation < samples[i - 1].max_deviation))
            return false;
    }
    return samples.back().max_deviation < final_tol;
}

}  // namespace coamoeba
