#include "coamoeba/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "coamoeba/lattice.hpp"

namespace coamoeba {

namespace {

struct Facet {
    IntVec normal;  // outward: normal . q <= offset on the whole point set
    Int offset;
    auto operator<=>(const Facet&) const = default;
};

// Calls visit(indices) for every k-subset of {0, ..., m-1} in lexicographic order.
template <typename Visit>
void for_each_subset(std::size_t m, std::size_t k, Visit&& visit) {
    if (k > m)
        return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        visit(std::span<const std::size_t>(idx));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

std::vector<Facet> full_dimensional_facets(const std::vector<IntVec>& q, std::size_t d) {
    std::set<Facet> facets;
    for_each_subset(q.size(), d, [&](std::span<const std::size_t> s) {
        IntMatrix m(d, d);
        IntVec normal(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t c = 0; c < d; ++c)
                m(0, c) = (c == i) ? 1 : 0;
            for (std::size_t r = 1; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c)
                    m(r, c) = q[s[r]][c] - q[s[0]][c];
            normal[i] = determinant(m);
        }
        const Int g = gcd_of(normal);
        if (g == 0)
            return;  // affinely dependent
        for (auto& x : normal)
            x /= g;
        Int offset = dot(normal, q[s[0]]);
        bool below = false, above = false;
        for (const auto& p : q) {
            const Int side = dot(normal, p) - offset;
            below |= side < 0;
            above |= side > 0;
        }
        if (below && above)
            return;
        if (above) {
            for (auto& x : normal)
                x = -x;
            offset = -offset;
        }
        facets.insert(Facet{std::move(normal), offset});
    });
    return {facets.begin(), facets.end()};
}

std::size_t normal_rank(const std::vector<Facet>& facets, const std::vector<std::size_t>& which) {
    if (which.empty())
        return 0;
    std::vector<IntVec> rows;
    rows.reserve(which.size());
    for (auto f : which)
        rows.push_back(facets[f].normal);
    return rank(IntMatrix::from_rows(rows));
}

Edge make_edge(const IntVec& a, const IntVec& b, const std::vector<IntVec>& support) {
    Edge e;
    e.start = lex_less(a, b) ? a : b;
    e.end = lex_less(a, b) ? b : a;
    const IntVec diff = subtract(e.end, e.start);
    e.lattice_length = gcd_of(diff);
    e.beta = primitive_vector(diff);
    std::size_t axis = 0;
    while (e.beta[axis] == 0)
        ++axis;
    for (std::size_t t = 0; t < support.size(); ++t) {
        const IntVec off = subtract(support[t], e.start);
        if (off[axis] % e.beta[axis] != 0)
            continue;
        const Int k = off[axis] / e.beta[axis];
        if (k < 0 || k > e.lattice_length)
            continue;
        bool on_line = true;
        for (std::size_t c = 0; c < off.size(); ++c)
            on_line &= off[c] == k * e.beta[c];
        if (on_line)
            e.points.push_back({k, t});
    }
    std::sort(e.points.begin(), e.points.end(), [](const auto& x, const auto& y) { return x.k < y.k; });
    return e;
}

std::uint64_t edge_stream(const Edge& e) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](Int x) {
        h ^= static_cast<std::uint64_t>(x);
        h *= 1099511628211ull;
    };
    for (Int x : e.start)
        mix(x);
    for (Int x : e.end)
        mix(x);
    return h;
}

}  // namespace

std::vector<Int> Edge::exponents() const {
    std::vector<Int> ks;
    ks.reserve(points.size());
    for (const auto& p : points)
        ks.push_back(p.k);
    return ks;
}

NewtonPolytope convex_hull(std::size_t n, const std::vector<IntVec>& points) {
    NewtonPolytope p;
    p.n = n;
    p.support = points;
    if (points.empty())
        return p;
    if (points.size() == 1) {
        p.vertices = points;
        return p;
    }

    // Work in the affine hull through an injective coordinate projection.
    std::vector<IntVec> diffs;
    for (std::size_t i = 1; i < points.size(); ++i)
        diffs.push_back(subtract(points[i], points[0]));
    const auto axes = pivot_columns(IntMatrix::from_rows(diffs));
    const std::size_t d = axes.size();
    p.dim = d;

    std::vector<IntVec> q(points.size(), IntVec(d));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t c = 0; c < d; ++c)
            q[i][c] = points[i][axes[c]];

    const auto facets = full_dimensional_facets(q, d);
    std::vector<std::vector<std::size_t>> incident(points.size());
    for (std::size_t f = 0; f < facets.size(); ++f)
        for (std::size_t i = 0; i < points.size(); ++i)
            if (dot(facets[f].normal, q[i]) == facets[f].offset)
                incident[i].push_back(f);

    std::vector<std::size_t> vertex_ids;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (normal_rank(facets, incident[i]) == d)
            vertex_ids.push_back(i);

    for (std::size_t a = 0; a < vertex_ids.size(); ++a)
        for (std::size_t b = a + 1; b < vertex_ids.size(); ++b) {
            std::vector<std::size_t> common;
            std::set_intersection(incident[vertex_ids[a]].begin(), incident[vertex_ids[a]].end(),
                                  incident[vertex_ids[b]].begin(), incident[vertex_ids[b]].end(),
                                  std::back_inserter(common));
            if (normal_rank(facets, common) == d - 1)
                p.edges.push_back(make_edge(points[vertex_ids[a]], points[vertex_ids[b]], points));
        }

    for (auto i : vertex_ids)
        p.vertices.push_back(points[i]);
    std::sort(p.vertices.begin(), p.vertices.end());
    std::sort(p.edges.begin(), p.edges.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.start, x.end) < std::tie(y.start, y.end);
    });
    return p;
}

NewtonPolytope newton_polytope(const ExpPoly& f) { return convex_hull(f.dim(), f.support()); }

std::optional<std::size_t> find_edge(const NewtonPolytope& p, std::span<const Int> a, std::span<const Int> b) {
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        const auto& e = p.edges[i];
        auto eq = [](std::span<const Int> x, const IntVec& y) { return std::equal(x.begin(), x.end(), y.begin(), y.end()); };
        if ((eq(a, e.start) && eq(b, e.end)) || (eq(b, e.start) && eq(a, e.end)))
            return i;
    }
    return std::nullopt;
}

std::vector<Eigen::VectorXd> orthonormal_complement(std::span<const Int> beta) {
    const std::size_t n = beta.size();
    std::vector<Eigen::VectorXd> frame;
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i)
        b[i] = static_cast<double>(beta[i]);
    frame.push_back(b.normalized());
    for (std::size_t i = 0; i < n && frame.size() < n; ++i) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(n, i);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : frame)
                v -= u.dot(v) * u;
        if (v.norm() > 1e-8)
            frame.push_back(v.normalized());
    }
    frame.erase(frame.begin());
    return frame;
}

bool NormalCone::contains(const Eigen::VectorXd& x, double tol) const {
    Eigen::VectorXd coords(span_basis.size());
    Eigen::VectorXd rest = x;
    for (std::size_t i = 0; i < span_basis.size(); ++i) {
        coords[i] = span_basis[i].dot(x);
        rest -= coords[i] * span_basis[i];
    }
    const double scale = std::max(1.0, x.norm());
    if (rest.norm() > tol * scale)
        return false;
    for (const auto& g : halfspace_normals)
        if (g.dot(coords) < -tol * scale)
            return false;
    return true;
}

Eigen::VectorXd NormalCone::to_ambient(const Eigen::VectorXd& coords) const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(span_basis.empty() ? 0 : span_basis.front().size());
    for (std::size_t i = 0; i < span_basis.size(); ++i)
        x += coords[i] * span_basis[i];
    return x;
}

NormalCone normal_cone(const NewtonPolytope& p, const Edge& e) {
    NormalCone cone;
    cone.span_basis = orthonormal_complement(e.beta);
    const std::size_t k = cone.span_basis.size();
    for (const auto& v : p.vertices) {
        if (v == e.start || v == e.end)
            continue;
        const IntVec g = subtract(e.start, v);
        Eigen::VectorXd coords(k);
        for (std::size_t i = 0; i < k; ++i) {
            double s = 0.0;
            for (std::size_t c = 0; c < g.size(); ++c)
                s += cone.span_basis[i][c] * static_cast<double>(g[c]);
            coords[i] = s;
        }
        if (coords.norm() > 1e-12)
            cone.halfspace_normals.push_back(coords.normalized());
    }
    return cone;
}

double external_angle_exact(const NormalCone& cone) {
    const std::size_t k = cone.span_dim();
    if (k == 0 || cone.halfspace_normals.empty())
        return 1.0;
    if (k == 1) {
        bool pos = false, neg = false;
        for (const auto& g : cone.halfspace_normals) {
            pos |= g[0] > 0;
            neg |= g[0] < 0;
        }
        return (pos && neg) ? 0.0 : 0.5;
    }
    if (k != 2)
        throw std::invalid_argument("closed-form external angle needs a span of dimension <= 2");

    // The cone is the intersection of half-planes; its opening angle is pi
    // minus the angular spread of the constraint normals.
    std::vector<double> angles;
    for (const auto& g : cone.halfspace_normals)
        angles.push_back(std::atan2(g[1], g[0]));
    std::sort(angles.begin(), angles.end());
    double largest_gap = kTwoPi - (angles.back() - angles.front());
    for (std::size_t i = 1; i < angles.size(); ++i)
        largest_gap = std::max(largest_gap, angles[i] - angles[i - 1]);
    const double spread = kTwoPi - largest_gap;
    if (spread >= kPi)
        return 0.0;
    return (kPi - spread) / kTwoPi;
}

AngleEstimate external_angle_monte_carlo(const NormalCone& cone, std::uint64_t samples, std::uint64_t seed,
                                         std::uint64_t stream) {
    const std::size_t k = cone.span_dim();
    if (k == 0 || samples == 0)
        return {external_angle_exact(cone), 0.0, true};

    constexpr std::uint64_t kChunk = 1u << 16;
    std::uint64_t hits = 0;
    Eigen::VectorXd u(k);
    for (std::uint64_t chunk = 0; chunk * kChunk < samples; ++chunk) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                          static_cast<std::uint32_t>(chunk)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal;
        const std::uint64_t count = std::min(kChunk, samples - chunk * kChunk);
        for (std::uint64_t s = 0; s < count; ++s) {
            for (std::size_t i = 0; i < k; ++i)
                u[i] = normal(rng);
            bool inside = true;
            for (const auto& g : cone.halfspace_normals)
                if (g.dot(u) < 0.0) {
                    inside = false;
                    break;
                }
            hits += inside;
        }
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), false};
}

AngleEstimate external_angle(const NewtonPolytope& p, const Edge& e, const AngleOptions& opts) {
    const NormalCone cone = normal_cone(p, e);
    if (cone.span_dim() + 1 <= opts.exact_up_to || cone.halfspace_normals.empty())
        return {external_angle_exact(cone), 0.0, true};
    return external_angle_monte_carlo(cone, opts.mc_samples, opts.seed, edge_stream(e));
}

double quermassintegral_vn1(const NewtonPolytope& p, const AngleOptions& opts) {
    double sum = 0.0;
    for (const auto& e : p.edges)
        sum += external_angle(p, e, opts).value * e.euclid_length();
    const int n = static_cast<int>(p.n);
    return unit_ball_volume(n - 1) / static_cast<double>(n) * sum;
}

}  // namespace coamoeba
