#include "coamoeba/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace coamoeba {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Eval {
    Complex p;
    Complex dp;
    double bound;  // sum |c_k| |z|^k, the rounding scale of p(z)
};

Eval horner(std::span<const Complex> c, Complex z) {
    Complex p = c.back();
    Complex dp = 0.0;
    double bound = std::abs(c.back());
    const double az = std::abs(z);
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[k];
        bound = bound * az + std::abs(c[k]);
    }
    return {p, dp, bound};
}

std::vector<Complex> derivative(std::span<const Complex> c, int order) {
    std::vector<Complex> d(c.begin(), c.end());
    for (int o = 0; o < order && !d.empty(); ++o) {
        std::vector<Complex> next;
        for (std::size_t k = 1; k < d.size(); ++k)
            next.push_back(d[k] * static_cast<double>(k));
        d = std::move(next);
    }
    return d;
}

// Initial points on circles whose radii come from the upper convex hull of
// (k, log|c_k|), so roots of very different moduli start on the right scale.
std::vector<Complex> initial_guesses(std::span<const Complex> c) {
    const std::size_t n = c.size() - 1;
    std::vector<std::size_t> hull;
    auto lg = [&](std::size_t k) { return std::log(std::abs(c[k])); };
    for (std::size_t k = 0; k <= n; ++k) {
        if (std::abs(c[k]) == 0.0)
            continue;
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2], b = hull.back();
            const double cross = (static_cast<double>(b) - a) * (lg(k) - lg(a)) -
                                 (lg(b) - lg(a)) * (static_cast<double>(k) - a);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(k);
    }
    std::vector<Complex> z;
    z.reserve(n);
    for (std::size_t h = 1; h < hull.size(); ++h) {
        const std::size_t lo = hull[h - 1], hi = hull[h];
        const std::size_t count = hi - lo;
        const double radius = std::pow(std::abs(c[lo]) / std::abs(c[hi]), 1.0 / static_cast<double>(count));
        const double offset = 0.4 + 2.0 * kPi * static_cast<double>(h) / static_cast<double>(n + 1);
        for (std::size_t j = 0; j < count; ++j)
            z.push_back(std::polar(radius, kTwoPi * static_cast<double>(j) / count + offset));
    }
    return z;
}

Complex polish_multiple(std::span<const Complex> dense, Complex c, int mult) {
    const auto q = derivative(dense, mult - 1);
    for (int step = 0; step < 3; ++step) {
        const Eval e = horner(q, c);
        if (std::abs(e.dp) == 0.0)
            break;
        const Complex dz = e.p / e.dp;
        c -= dz;
        if (std::abs(dz) <= kEps * std::max(1.0, std::abs(c)))
            break;
    }
    return c;
}

// Is c a root of multiplicity `mult`? Tests P^{(j)}(c)/j! for j < mult
// against the rounding scale of that derivative.
bool is_multiple_root(std::span<const Complex> dense, Complex c, int mult) {
    for (int j = 0; j < mult; ++j) {
        const auto q = derivative(dense, j);
        const Eval e = horner(q, c);
        if (std::abs(e.p) > 1e-8 * e.bound)
            return false;
    }
    return true;
}

struct Cluster {
    Complex sum = 0.0;
    int mult = 0;
    Complex centroid() const { return sum / static_cast<double>(mult); }
};

Complex snap(Complex a) {
    const double r = std::abs(a);
    double re = a.real(), im = a.imag();
    if (std::abs(im) <= 1e-13 * r)
        im = 0.0;
    if (std::abs(re) <= 1e-13 * r)
        re = 0.0;
    return {re, im};
}

}  // namespace

std::vector<Complex> SparsePoly::dense() const {
    std::vector<Complex> d(static_cast<std::size_t>(degree()) + 1, 0.0);
    for (std::size_t j = 0; j < exponents.size(); ++j)
        d[static_cast<std::size_t>(exponents[j])] = coeffs[j];
    return d;
}

std::vector<Complex> aberth_roots(std::span<const Complex> dense, int max_rounds) {
    if (dense.size() < 2)
        return {};
    if (std::abs(dense.front()) == 0.0 || std::abs(dense.back()) == 0.0)
        throw std::invalid_argument("polynomial must have nonzero constant and leading coefficients");
    const std::size_t n = dense.size() - 1;
    if (n == 1)
        return {-dense[0] / dense[1]};

    std::vector<Complex> c(dense.begin(), dense.end());
    const Complex lead = c.back();
    for (auto& x : c)
        x /= lead;

    std::vector<Complex> z = initial_guesses(c);
    std::vector<bool> done(n, false);
    const double floor_tol = 4.0 * static_cast<double>(n) * kEps;

    for (int round = 0; round < max_rounds; ++round) {
        bool all_done = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i])
                continue;
            const Eval e = horner(c, z[i]);
            if (std::abs(e.p) <= floor_tol * e.bound) {
                done[i] = true;
                continue;
            }
            all_done = false;
            if (std::abs(e.dp) == 0.0) {
                z[i] += Complex(1e-8, 1e-8) * std::max(1.0, std::abs(z[i]));
                continue;
            }
            const Complex ratio = e.p / e.dp;
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    const Complex gap = z[i] - z[j];
                    if (std::abs(gap) > 0.0)
                        repulsion += 1.0 / gap;
                }
            const Complex step = ratio / (1.0 - ratio * repulsion);
            z[i] -= step;
            if (std::abs(step) <= kEps * std::abs(z[i]))
                done[i] = true;
        }
        if (all_done)
            break;
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Eval e = horner(c, z[i]);
        if (!(std::abs(e.p) <= 1e-13 * e.bound))
            throw RootFindError(
                fmt::format("root iteration did not converge (residual {:.3e})", std::abs(e.p) / e.bound), z);
    }
    return z;
}

std::vector<Root> find_roots(const SparsePoly& p) {
    if (p.exponents.size() < 2)
        throw std::invalid_argument("polynomial needs at least two terms");
    const auto dense = p.dense();
    const auto z = aberth_roots(dense);

    // Tight single-linkage clustering.
    std::vector<int> label(z.size(), -1);
    std::vector<Cluster> clusters;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (label[i] >= 0)
            continue;
        label[i] = static_cast<int>(clusters.size());
        std::vector<std::size_t> stack{i};
        Cluster cl;
        while (!stack.empty()) {
            const std::size_t k = stack.back();
            stack.pop_back();
            cl.sum += z[k];
            cl.mult += 1;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (label[j] < 0 && std::abs(z[j] - z[k]) <= 1e-7 * std::max(1.0, std::abs(z[k]))) {
                    label[j] = label[i];
                    stack.push_back(j);
                }
        }
        clusters.push_back(cl);
    }

    // Higher multiplicities spread roots by ~eps^{1/d}; merge nearby
    // clusters when the merged centroid is verifiably a d-fold root.
    bool merged = true;
    while (merged && clusters.size() > 1) {
        merged = false;
        std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
        for (std::size_t a = 0; a < clusters.size(); ++a)
            for (std::size_t b = a + 1; b < clusters.size(); ++b) {
                const Complex ca = clusters[a].centroid(), cb = clusters[b].centroid();
                const double dist = std::abs(ca - cb);
                if (dist <= 1e-2 * std::max({1.0, std::abs(ca), std::abs(cb)}))
                    pairs.emplace_back(dist, a, b);
            }
        std::sort(pairs.begin(), pairs.end());
        for (const auto& [dist, a, b] : pairs) {
            Cluster joint{clusters[a].sum + clusters[b].sum, clusters[a].mult + clusters[b].mult};
            const Complex c = polish_multiple(dense, joint.centroid(), joint.mult);
            if (is_multiple_root(dense, c, joint.mult)) {
                clusters[a] = joint;
                clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b));
                merged = true;
                break;
            }
        }
    }

    std::vector<Root> roots;
    for (const auto& cl : clusters) {
        Complex a = cl.centroid();
        if (cl.mult > 1)
            a = polish_multiple(dense, a, cl.mult);
        a = snap(a);
        roots.push_back({a, cl.mult, wrap_angle(std::arg(a)), std::log(std::abs(a))});
    }
    std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
        return std::tie(x.phase, x.log_abs) < std::tie(y.phase, y.log_abs);
    });
    return roots;
}

double reconstruction_residual(const SparsePoly& p, const std::vector<Root>& roots) {
    const auto dense = p.dense();
    std::vector<Complex> prod{dense.back()};
    for (const auto& r : roots)
        for (int m = 0; m < r.mult; ++m) {
            std::vector<Complex> next(prod.size() + 1, 0.0);
            for (std::size_t k = 0; k < prod.size(); ++k) {
                next[k + 1] += prod[k];
                next[k] -= r.a * prod[k];
            }
            prod = std::move(next);
        }
    if (prod.size() != dense.size())
        return std::numeric_limits<double>::infinity();
    double diff = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < dense.size(); ++k) {
        diff = std::max(diff, std::abs(prod[k] - dense[k]));
        scale = std::max(scale, std::abs(dense[k]));
    }
    return diff / scale;
}

EdgeRestriction restrict_to_edge(const ExpPoly& f, const Edge& e) {
    EdgeRestriction r;
    r.alpha0 = e.start;
    for (const auto& pt : e.points) {
        r.poly.exponents.push_back(pt.k);
        r.poly.coeffs.push_back(f.term(pt.term).c);
    }
    return r;
}

int EdgeSpectrum::total_multiplicity() const {
    int s = 0;
    for (const auto& r : roots)
        s += r.mult;
    return s;
}

EdgeSpectrum edge_spectrum(const ExpPoly& f, const NewtonPolytope& p, const Edge& e, const AngleOptions& opts) {
    EdgeSpectrum s;
    s.edge = e;
    auto restriction = restrict_to_edge(f, e);
    s.alpha0 = std::move(restriction.alpha0);
    s.poly = std::move(restriction.poly);
    s.roots = find_roots(s.poly);
    s.residual = reconstruction_residual(s.poly, s.roots);
    s.gamma = external_angle(p, e, opts);
    s.beta_norm = norm(e.beta);
    return s;
}

}  // namespace coamoeba
