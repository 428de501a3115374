// Fixtures and independent brute-force oracles shared by the unit tests and
// the acceptance runner. Nothing here calls the library routine it checks.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "coamoeba/cli.hpp"
#include "coamoeba/count.hpp"
#include "coamoeba/ronkin.hpp"
#include "coamoeba/shell.hpp"
#include "coamoeba/verify.hpp"

namespace fixtures {

using coamoeba::Complex;
using coamoeba::ExpPoly;
using coamoeba::Int;
using coamoeba::IntVec;
using coamoeba::kPi;
using coamoeba::kTwoPi;

inline ExpPoly make(std::size_t n, const std::vector<IntVec>& alphas, std::vector<Complex> coeffs = {}) {
    std::vector<coamoeba::Term> terms;
    for (std::size_t i = 0; i < alphas.size(); ++i)
        terms.push_back({alphas[i], coeffs.empty() ? Complex(1.0) : coeffs[i]});
    return ExpPoly(n, std::move(terms));
}

// 1 + e^{z1} + e^{z2}
inline ExpPoly triangle() { return make(2, {{0, 0}, {1, 0}, {0, 1}}); }
// 1 + e^{z1 + z2}
inline ExpPoly segment() { return make(2, {{0, 0}, {1, 1}}); }
// (1 + e^{z1})(1 + e^{z2}) expanded
inline ExpPoly product() { return make(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

inline const coamoeba::ShellHyperplane* plane_with(const coamoeba::ShellArrangement& sh, const IntVec& beta) {
    for (const auto& h : sh.planes)
        if (h.beta == beta)
            return &h;
    return nullptr;
}

/// Random polynomial with `count` distinct exponents in [0, box]^n and
/// coefficients of modulus in [0.5, 2] with uniform phase.
inline ExpPoly random_poly(std::mt19937_64& rng, std::size_t n, std::size_t count, Int box) {
    std::uniform_int_distribution<Int> coord(0, box);
    std::uniform_real_distribution<double> mod(0.5, 2.0), arg(0.0, kTwoPi);
    std::set<IntVec> seen;
    std::vector<coamoeba::Term> terms;
    while (terms.size() < count) {
        IntVec a(n);
        for (auto& x : a)
            x = coord(rng);
        if (!seen.insert(a).second)
            continue;
        terms.push_back({a, std::polar(mod(rng), arg(rng))});
    }
    return ExpPoly(n, std::move(terms));
}

inline Int det_oracle(const std::vector<IntVec>& cols) {
    const std::size_t n = cols.size();
    if (n == 1)
        return cols[0][0];
    if (n == 2)
        return cols[0][0] * cols[1][1] - cols[1][0] * cols[0][1];
    // Laplace expansion along the first column.
    Int s = 0;
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<IntVec> minor;
        for (std::size_t c = 1; c < n; ++c) {
            IntVec col;
            for (std::size_t i = 0; i < n; ++i)
                if (i != r)
                    col.push_back(cols[c][i]);
            minor.push_back(col);
        }
        const Int term = cols[0][r] * det_oracle(minor);
        s += (r % 2 == 0) ? term : -term;
    }
    return s;
}

/// Andrew's monotone chain; strictly convex vertices, sorted.
inline std::vector<IntVec> hull_2d_oracle(std::vector<IntVec> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
        return pts;
    auto cross = [](const IntVec& o, const IntVec& a, const IntVec& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<IntVec> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    // Collinear input: the chain returns both endpoints twice.
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    return h;
}

inline double perimeter_2d_oracle(const std::vector<IntVec>& pts) {
    auto h = hull_2d_oracle(pts);
    if (h.size() < 2)
        return 0.0;
    if (h.size() == 2)
        return 2.0 * std::hypot(double(h[1][0] - h[0][0]), double(h[1][1] - h[0][1]));
    const double cx = std::accumulate(h.begin(), h.end(), 0.0, [](double s, const IntVec& p) { return s + p[0]; });
    const double cy = std::accumulate(h.begin(), h.end(), 0.0, [](double s, const IntVec& p) { return s + p[1]; });
    std::sort(h.begin(), h.end(), [&](const IntVec& a, const IntVec& b) {
        return std::atan2(a[1] * double(h.size()) - cy, a[0] * double(h.size()) - cx) <
               std::atan2(b[1] * double(h.size()) - cy, b[0] * double(h.size()) - cx);
    });
    double per = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& a = h[i];
        const auto& b = h[(i + 1) % h.size()];
        per += std::hypot(double(b[0] - a[0]), double(b[1] - a[1]));
    }
    return per;
}

/// Support points on the closed segment [s, e], by direct membership scan.
inline std::vector<IntVec> points_on_segment_oracle(const std::vector<IntVec>& pts, const IntVec& s, const IntVec& e) {
    std::vector<IntVec> out;
    const std::size_t n = s.size();
    for (const auto& a : pts) {
        // a - s = t (e - s) with 0 <= t <= 1, tested by cross products and a dot product.
        bool parallel = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                parallel &= (a[i] - s[i]) * (e[j] - s[j]) == (a[j] - s[j]) * (e[i] - s[i]);
        Int dot_ae = 0, dot_ee = 0;
        for (std::size_t i = 0; i < n; ++i) {
            dot_ae += (a[i] - s[i]) * (e[i] - s[i]);
            dot_ee += (e[i] - s[i]) * (e[i] - s[i]);
        }
        if (parallel && dot_ae >= 0 && dot_ae <= dot_ee)
            out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// External angle of an edge of a full-dimensional polytope in R^3: the
/// angle between the outer normals of its two facets over 2 pi. Facets found
/// by scanning all point triples.
inline double external_angle_3d_oracle(const std::vector<IntVec>& pts, const IntVec& s, const IntVec& e) {
    using V = std::array<double, 3>;
    auto sub = [](const IntVec& a, const IntVec& b) { return V{double(a[0] - b[0]), double(a[1] - b[1]), double(a[2] - b[2])}; };
    auto cross = [](V a, V b) { return V{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}; };
    auto dotv = [](V a, V b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };
    std::vector<V> normals;
    const V dir = sub(e, s);
    for (const auto& c : pts) {
        V nrm = cross(dir, sub(c, s));
        const double len = std::sqrt(dotv(nrm, nrm));
        if (len < 1e-12)
            continue;
        for (auto& x : nrm)
            x /= len;
        int pos = 0, neg = 0;
        for (const auto& q : pts) {
            const double v = dotv(nrm, sub(q, s));
            pos += v > 1e-9;
            neg += v < -1e-9;
        }
        if (pos > 0 && neg > 0)
            continue;
        if (pos > 0)
            for (auto& x : nrm)
                x = -x;
        const bool dup = std::any_of(normals.begin(), normals.end(), [&](const V& m) { return dotv(m, nrm) > 1 - 1e-12; });
        if (!dup)
            normals.push_back(nrm);
    }
    if (normals.size() != 2)
        return std::nan("");
    return std::acos(std::clamp(dotv(normals[0], normals[1]), -1.0, 1.0)) / kTwoPi;
}

/// Solutions of B^t y = b (mod 2 pi) in [0, 2pi)^n by scanning integer
/// right-hand-side shifts m in a box: y = (B^t)^{-1} (b + 2 pi m).
inline std::vector<std::vector<double>> modular_box_oracle(const std::vector<IntVec>& cols, const std::vector<double>& b) {
    const std::size_t n = cols.size();
    Eigen::MatrixXd bt(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            bt(Eigen::Index(i), Eigen::Index(j)) = double(cols[i][j]);
    const Eigen::MatrixXd inv = bt.inverse();
    std::vector<Int> bound(n);
    for (std::size_t i = 0; i < n; ++i) {
        Int s = 1;
        for (std::size_t j = 0; j < n; ++j)
            s += std::abs(cols[i][j]);
        bound[i] = s;
    }
    std::vector<std::vector<double>> out;
    std::vector<Int> m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = -bound[i];
    while (true) {
        Eigen::VectorXd rhs(n);
        for (std::size_t i = 0; i < n; ++i)
            rhs[Eigen::Index(i)] = b[i] + kTwoPi * double(m[i]);
        const Eigen::VectorXd y = inv * rhs;
        bool inside = true;
        std::vector<double> yy(n);
        for (std::size_t i = 0; i < n; ++i) {
            double v = y[Eigen::Index(i)];
            if (v > kTwoPi - 1e-9 && v < kTwoPi + 1e-9)
                v = 0.0;
            if (std::abs(v) < 1e-9)
                v = 0.0;
            inside &= v >= 0.0 && v < kTwoPi;
            yy[i] = v;
        }
        if (inside) {
            const bool dup = std::any_of(out.begin(), out.end(), [&](const auto& p) {
                double d = 0;
                for (std::size_t i = 0; i < n; ++i)
                    d = std::max(d, std::abs(p[i] - yy[i]));
                return d < 1e-9;
            });
            if (!dup)
                out.push_back(yy);
        }
        std::size_t i = 0;
        while (i < n && ++m[i] > bound[i]) {
            m[i] = -bound[i];
            ++i;
        }
        if (i == n)
            break;
    }
    return out;
}

/// Random nonsingular integer matrix (as columns) with |det| <= max_det.
inline std::vector<IntVec> random_matrix(std::mt19937_64& rng, std::size_t n, Int max_det) {
    std::uniform_int_distribution<Int> entry(-4, 4);
    while (true) {
        std::vector<IntVec> cols(n, IntVec(n));
        for (auto& c : cols)
            for (auto& x : c)
                x = entry(rng);
        const Int d = std::abs(det_oracle(cols));
        if (d != 0 && d <= max_det)
            return cols;
    }
}

/// Independent evaluation of Phi: integrate the slope function numerically
/// exact on breakpoints. Phi(t) = sum over unit intervals.
inline double phi_basis_oracle(double t) {
    // Phi(0) = 0, slope k on [2pi(k-1), 2pi k].
    double value = 0.0;
    if (t >= 0) {
        double x = 0.0;
        long k = 1;
        while (x + kTwoPi <= t) {
            value += k * kTwoPi;
            x += kTwoPi;
            ++k;
        }
        value += k * (t - x);
    } else {
        double x = 0.0;
        long k = 0;
        while (x - kTwoPi >= t) {
            value -= k * kTwoPi;
            x -= kTwoPi;
            --k;
        }
        value -= k * (x - t);
    }
    return value;
}

/// Generic random n = 2 polynomial whose intersection points are well
/// separated from each other and from non-incident lines, so a grid flood
/// fill resolves every complement component.
inline bool well_separated(const coamoeba::ShellArrangement& sh, const coamoeba::IntersectionSet& is, double sep) {
    for (std::size_t i = 0; i < is.points.size(); ++i)
        for (std::size_t j = i + 1; j < is.points.size(); ++j)
            if (coamoeba::torus_distance(is.points[i].y, is.points[j].y) < sep)
                return false;
    for (const auto& p : is.points)
        for (const auto& h : sh.planes) {
            const double d = h.distance(p.y);
            if (d > 1e-9 && d < sep)
                return false;
        }
    return true;
}

}  // namespace fixtures
