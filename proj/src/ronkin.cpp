#include "coamoeba/ronkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace coamoeba {

namespace {

double beta_dot(std::span<const Int> beta, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < beta.size(); ++i)
        s += static_cast<double>(beta[i]) * y[i];
    return s;
}

Eigen::VectorXd to_eigen(std::span<const Int> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = static_cast<double>(v[i]);
    return out;
}

double quadratic(const Eigen::MatrixXd& s, std::span<const double> y) {
    const Eigen::Map<const Eigen::VectorXd> v(y.data(), static_cast<Eigen::Index>(y.size()));
    return v.dot(s * v);
}

}  // namespace

int phi_basis_slope(double t) { return static_cast<int>(std::ceil(t / kTwoPi)); }

double phi_basis(double t) {
    const double k = std::ceil(t / kTwoPi);
    return k * t - kPi * k * (k - 1.0);
}

NonSmoothPoint::NonSmoothPoint(std::vector<std::size_t> p)
    : std::domain_error(fmt::format("non-smooth point: on shell plane(s) {}", fmt::join(p, ","))),
      planes(std::move(p)) {}

RonkinEval::RonkinEval(const ShellArrangement& sh, const SMatrix& sm) : n_(sh.n), s_(sm) {
    for (std::size_t i = 0; i < sh.planes.size(); ++i) {
        const auto& h = sh.planes[i];
        terms_.push_back({h.beta, h.b, h.mult, kTwoPi * h.gamma * h.mult / norm(h.beta), i});
    }
}

double RonkinEval::phi(std::span<const double> y) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        const double by = beta_dot(t.beta, y);
        sum += t.coef * (phi_basis(by - t.b) + (t.b - kPi) / kTwoPi * by);
    }
    return sum;
}

std::vector<std::size_t> RonkinEval::walls_at(std::span<const double> y, double tol) const {
    std::vector<std::size_t> hits;
    for (const auto& t : terms_)
        if (std::abs(centered_angle(beta_dot(t.beta, y) - t.b)) < tol)
            hits.push_back(t.plane);
    return hits;
}

Eigen::VectorXd RonkinEval::grad(std::span<const double> y, double wall_tol) const {
    auto walls = walls_at(y, wall_tol);
    if (!walls.empty())
        throw NonSmoothPoint(std::move(walls));
    Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
    for (const auto& t : terms_) {
        const double slope = phi_basis_slope(beta_dot(t.beta, y) - t.b);
        g += t.coef * (slope + (t.b - kPi) / kTwoPi) * to_eigen(t.beta);
    }
    return g;
}

double RonkinEval::periodic_part_value(std::span<const double> y) const { return phi(y) - quadratic(s_.s, y); }

double eval_phi(const RonkinEval& r, std::span<const double> y) { return r.phi(y); }

Eigen::VectorXd grad_phi(const RonkinEval& r, std::span<const double> y) { return r.grad(y); }

double periodic_part(const RonkinEval& r, std::span<const double> y, std::span<const Int> ell) {
    std::vector<double> shifted(y.begin(), y.end());
    for (std::size_t i = 0; i < shifted.size(); ++i)
        shifted[i] += kTwoPi * static_cast<double>(ell[i]);
    return r.phi(shifted) - r.phi(y) - (quadratic(r.s().s, shifted) - quadratic(r.s().s, y));
}

Eigen::VectorXd SkewLattice::reduce(const Eigen::VectorXd& v) const {
    if (!invertible)
        return v;
    Eigen::VectorXd c = basis.fullPivLu().solve(v);
    for (Eigen::Index i = 0; i < c.size(); ++i)
        c[i] -= std::floor(c[i] + 0.5);
    return basis * c;
}

double SkewLattice::quotient_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    const Eigen::VectorXd d = reduce(u - v);
    if (!invertible)
        return d.norm();
    const auto n = d.size();
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd offset(n);
    std::size_t combos = 1;
    for (Eigen::Index i = 0; i < n; ++i)
        combos *= 3;
    for (std::size_t code = 0; code < combos; ++code) {
        std::size_t c = code;
        for (Eigen::Index i = 0; i < n; ++i) {
            offset[i] = static_cast<double>(static_cast<int>(c % 3) - 1);
            c /= 3;
        }
        best = std::min(best, (d + basis * offset).norm());
    }
    return best;
}

SkewLattice skew_lattice(const SMatrix& sm) { return {2.0 * kTwoPi * sm.s, sm.positive_definite}; }

GradientClasses gradient_classes(const RonkinEval& r, const std::vector<Eigen::VectorXd>& samples,
                                 const SkewLattice& lattice, double distinct_tol) {
    GradientClasses out;
    out.quotient = lattice.invertible;
    for (const auto& y : samples) {
        const Eigen::VectorXd g = r.grad(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
        out.gradients.push_back(g);
        out.classes.push_back(lattice.reduce(g));
    }
    out.min_separation = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.classes.size(); ++i)
        for (std::size_t j = i + 1; j < out.classes.size(); ++j)
            out.min_separation = std::min(out.min_separation, lattice.quotient_distance(out.classes[i], out.classes[j]));
    out.pairwise_distinct = out.min_separation > distinct_tol;
    return out;
}

Eigen::VectorXd expected_gradient_jump(const RonkinEval& r, const ShellArrangement& sh, std::size_t plane) {
    Eigen::VectorXd jump = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sh.n));
    const auto& base = sh.planes[plane];
    for (const auto& group : sh.coinciding_groups()) {
        if (std::find(group.begin(), group.end(), plane) == group.end())
            continue;
        for (auto q : group) {
            const auto& t = r.terms()[q];
            const double orientation = dot(t.beta, base.beta) > 0 ? 1.0 : -1.0;
            jump += orientation * t.coef * to_eigen(t.beta);
        }
    }
    return jump;
}

std::vector<Eigen::VectorXd> sample_component_points(const RonkinEval& r, const ShellArrangement& sh,
                                                     std::size_t attempts, std::uint64_t seed,
                                                     double min_wall_distance) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, kTwoPi);
    const SkewLattice lattice = skew_lattice(r.s());
    std::vector<Eigen::VectorXd> points, classes;
    Eigen::VectorXd y(static_cast<Eigen::Index>(sh.n));
    for (std::size_t a = 0; a < attempts; ++a) {
        for (Eigen::Index i = 0; i < y.size(); ++i)
            y[i] = unif(rng);
        const std::span<const double> ys(y.data(), sh.n);
        bool clear = true;
        for (const auto& h : sh.planes)
            if (h.distance(ys) < min_wall_distance) {
                clear = false;
                break;
            }
        if (!clear)
            continue;
        const Eigen::VectorXd cls = lattice.reduce(r.grad(ys));
        bool fresh = true;
        for (const auto& c : classes)
            if (lattice.quotient_distance(c, cls) <= 1e-6) {
                fresh = false;
                break;
            }
        if (fresh) {
            points.push_back(y);
            classes.push_back(cls);
        }
    }
    return points;
}

}  // namespace coamoeba
