#include "coamoeba/count.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>

namespace coamoeba {

namespace {

template <typename Visit>
void for_each_subset(std::size_t m, std::size_t k, Visit&& visit) {
    if (k > m || k == 0)
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

double snap_wrap(double t) {
    double r = wrap_angle(t);
    if (r > kTwoPi - 1e-12)
        r = 0.0;
    return r;
}

void add_point(std::vector<TorusPoint>& pts, std::vector<double> y, long mult, double tol) {
    for (auto& p : pts)
        if (torus_distance(p.y, y) <= tol) {
            p.mult += mult;
            p.contributions += 1;
            return;
        }
    pts.push_back({std::move(y), mult, 1});
}

}  // namespace

double torus_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = centered_angle(a[i] - b[i]);
        s += d * d;
    }
    return std::sqrt(s);
}

std::vector<TorusPoint> solve_modular(const IntMatrix& b_columns, std::span<const double> phases) {
    const std::size_t n = b_columns.rows();
    if (b_columns.cols() != n || phases.size() != n)
        throw std::invalid_argument("solve_modular needs n directions in R^n and n phases");
    if (determinant(b_columns) == 0)
        throw std::invalid_argument("dependent directions");

    // U A V = D with A = B^t; substitute y = V z so that D z = U b (mod 2pi).
    const SmithForm snf = smith_normal_form(b_columns.transpose());
    std::vector<double> ub(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            ub[i] += static_cast<double>(snf.u(i, k)) * phases[k];

    std::vector<Int> diag(n);
    for (std::size_t i = 0; i < n; ++i)
        diag[i] = snf.d(i, i);

    std::vector<TorusPoint> out;
    std::vector<Int> t(n, 0);
    std::vector<double> z(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i)
            z[i] = (ub[i] + kTwoPi * static_cast<double>(t[i])) / static_cast<double>(diag[i]);
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += static_cast<double>(snf.v(i, k)) * z[k];
            y[i] = snap_wrap(s);
        }
        out.push_back({std::move(y), 1, 1});

        std::size_t i = 0;
        while (i < n && ++t[i] == diag[i]) {
            t[i] = 0;
            ++i;
        }
        if (i == n)
            break;
    }
    return out;
}

IntersectionSet intersection_set(const ShellArrangement& sh, double dedup_tol) {
    IntersectionSet is;
    const std::size_t n = sh.n;
    for_each_subset(sh.spectra.size(), n, [&](std::span<const std::size_t> edges) {
        EdgeTupleReport rep;
        rep.edges.assign(edges.begin(), edges.end());
        std::vector<IntVec> cols;
        rep.weight = 1.0;
        for (auto e : edges) {
            cols.push_back(sh.spectra[e].edge.beta);
            rep.weight *= sh.spectra[e].gamma.value / sh.spectra[e].beta_norm;
        }
        const IntMatrix b = IntMatrix::from_columns(cols);
        rep.det_b = std::abs(determinant(b));
        if (rep.det_b != 0) {
            std::vector<std::size_t> choice(n, 0);
            std::vector<double> phases(n);
            while (true) {
                long mult = 1;
                for (std::size_t k = 0; k < n; ++k) {
                    const auto& root = sh.spectra[edges[k]].roots[choice[k]];
                    phases[k] = root.phase;
                    mult *= root.mult;
                }
                for (auto& p : solve_modular(b, phases))
                    add_point(is.points, std::move(p.y), mult, dedup_tol);
                rep.sigma += rep.det_b * mult;

                std::size_t k = 0;
                while (k < n && ++choice[k] == sh.spectra[edges[k]].roots.size()) {
                    choice[k] = 0;
                    ++k;
                }
                if (k == n)
                    break;
            }
        }
        is.total += rep.sigma;
        is.reports.push_back(std::move(rep));
    });
    return is;
}

GenericCount generic_count(const ShellArrangement& sh, const IntersectionSet& is) {
    GenericCount g;
    // One term per tuple of distinct roots: an edge of lattice length l with
    // simple roots carries l parallel planes.
    for (const auto& r : is.reports) {
        long tuples = r.det_b;
        for (auto e : r.edges)
            tuples *= static_cast<long>(sh.spectra[e].roots.size());
        g.count += tuples;
    }
    g.simple_roots = std::all_of(sh.planes.begin(), sh.planes.end(), [](const auto& h) { return h.mult == 1; });
    g.no_concurrence =
        std::all_of(is.points.begin(), is.points.end(), [](const auto& p) { return p.contributions == 1; });
    const auto groups = sh.coinciding_groups();
    g.no_coinciding_planes = std::all_of(groups.begin(), groups.end(), [](const auto& gr) { return gr.size() == 1; });
    g.generic = g.simple_roots && g.no_concurrence && g.no_coinciding_planes;
    return g;
}

GenericCount generic_count(const ShellArrangement& sh) { return generic_count(sh, intersection_set(sh)); }

EstimateBounds estimate_bounds(const ShellArrangement& sh, const SMatrix& sm, const IntersectionSet& is, double tol) {
    EstimateBounds eb;
    bool any = false;
    eb.small_m = std::numeric_limits<double>::infinity();
    for (const auto& r : is.reports) {
        const double q = static_cast<double>(r.det_b) * r.weight;
        eb.big_m = std::max(eb.big_m, q);
        if (r.det_b != 0) {
            any = true;
            eb.small_m = std::min(eb.small_m, q);
        }
    }
    if (!any || !sm.positive_definite || !(sm.det > 0.0))
        throw std::domain_error("degenerate arrangement");
    const double mass = std::pow(2.0, static_cast<double>(sh.n)) * sm.det;
    eb.lower = mass / eb.big_m;
    eb.upper = mass / eb.small_m;
    eb.intersections = is.total;
    const double count = static_cast<double>(is.total);
    eb.brackets = eb.lower <= count + tol * std::max(1.0, eb.lower) && count <= eb.upper + tol * std::max(1.0, eb.upper);
    return eb;
}

EstimateBounds estimate_bounds(const ShellArrangement& sh, const SMatrix& sm, double tol) {
    return estimate_bounds(sh, sm, intersection_set(sh), tol);
}

MassIdentity ma_mass_identity(const IntersectionSet& is, const SMatrix& sm, std::size_t n) {
    MassIdentity mi;
    mi.lhs = std::pow(2.0, static_cast<double>(n)) * sm.det;
    for (const auto& r : is.reports)
        mi.rhs += r.weight * static_cast<double>(r.det_b) * static_cast<double>(r.sigma);
    return mi;
}

MassIdentity ma_mass_identity(const ShellArrangement& sh, const SMatrix& sm) {
    return ma_mass_identity(intersection_set(sh), sm, sh.n);
}

Int parallelogram_lattice_count(const std::vector<IntVec>& betas) {
    const IntMatrix b = IntMatrix::from_columns(betas);
    const std::size_t n = b.rows();
    if (b.cols() != n)
        throw std::invalid_argument("need n directions in Z^n");
    const Int det = determinant(b);
    if (det == 0)
        throw std::invalid_argument("dependent directions");
    const IntMatrix adj = adjugate(b);

    IntVec lo(n, 0), hi(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& beta : betas) {
            lo[i] += std::min<Int>(0, beta[i]);
            hi[i] += std::max<Int>(0, beta[i]);
        }

    Int count = 0;
    IntVec p = lo;
    while (true) {
        // t = adj(B) p / det must lie in [0, 1)^n.
        const IntVec num = adj * std::span<const Int>(p);
        bool inside = true;
        for (Int x : num) {
            const bool ok = det > 0 ? (x >= 0 && x < det) : (x <= 0 && x > det);
            if (!ok) {
                inside = false;
                break;
            }
        }
        count += inside;

        std::size_t i = 0;
        while (i < n && ++p[i] > hi[i]) {
            p[i] = lo[i];
            ++i;
        }
        if (i == n)
            break;
    }
    return count;
}

namespace {

struct GridScan {
    std::size_t count = 0;
    std::vector<Eigen::VectorXd> samples;
};

GridScan flood_fill(const ShellArrangement& sh, std::size_t grid) {
    const double h = kTwoPi / static_cast<double>(grid);
    const double band = 2.0 * h, core = 3.0 * h;
    std::vector<float> clearance(grid * grid);
    struct Line {
        double b0, b1, b, inv_norm;
    };
    std::vector<Line> lines;
    for (const auto& p : sh.planes)
        lines.push_back({static_cast<double>(p.beta[0]), static_cast<double>(p.beta[1]), p.b, 1.0 / norm(p.beta)});

    for (std::size_t i = 0; i < grid; ++i) {
        const double y1 = (static_cast<double>(i) + 0.5) * h;
        for (std::size_t j = 0; j < grid; ++j) {
            const double y2 = (static_cast<double>(j) + 0.5) * h;
            double best = std::numeric_limits<double>::infinity();
            for (const auto& l : lines) {
                double s = l.b0 * y1 + l.b1 * y2 - l.b;
                s -= kTwoPi * std::nearbyint(s / kTwoPi);
                best = std::min(best, std::abs(s) * l.inv_norm);
            }
            clearance[i * grid + j] = static_cast<float>(best);
        }
    }

    std::vector<std::int32_t> label(grid * grid, -1);
    GridScan scan;
    std::deque<std::size_t> queue;
    for (std::size_t start = 0; start < grid * grid; ++start) {
        if (label[start] >= 0 || clearance[start] < band)
            continue;
        const auto id = static_cast<std::int32_t>(scan.count++);
        label[start] = id;
        queue.push_back(start);
        std::size_t best_cell = start;
        while (!queue.empty()) {
            const std::size_t c = queue.front();
            queue.pop_front();
            if (clearance[c] > clearance[best_cell])
                best_cell = c;
            const std::size_t i = c / grid, j = c % grid;
            // 8-neighbours: a diagonal step spans sqrt(2) h, well short of the 4h blocked strip.
            for (std::size_t di = 0; di < 3; ++di)
                for (std::size_t dj = 0; dj < 3; ++dj) {
                    const std::size_t nb = ((i + grid + di - 1) % grid) * grid + (j + grid + dj - 1) % grid;
                    if (label[nb] < 0 && clearance[nb] >= band) {
                        label[nb] = id;
                        queue.push_back(nb);
                    }
                }
        }
        // Pixel slivers cut off at the eroded tip of an acute corner never get
        // deeper than about 2.5h; a genuine face has room beyond 3h.
        if (clearance[best_cell] < core) {
            --scan.count;
            continue;
        }
        Eigen::VectorXd y(2);
        y << (static_cast<double>(best_cell / grid) + 0.5) * h, (static_cast<double>(best_cell % grid) + 0.5) * h;
        scan.samples.push_back(y);
    }
    return scan;
}

}  // namespace

ComponentScan complement_components_2d(const ShellArrangement& sh, std::size_t start_grid, std::size_t max_grid) {
    if (sh.n != 2)
        throw std::invalid_argument("unsupported: component counting by flood fill needs n = 2");
    ComponentScan out;
    GridScan prev = flood_fill(sh, start_grid);
    out.grid = start_grid;
    for (std::size_t grid = 2 * start_grid; grid <= max_grid; grid *= 2) {
        GridScan next = flood_fill(sh, grid);
        const bool agree = next.count == prev.count;
        prev = std::move(next);
        out.grid = grid;
        if (agree) {
            out.stable = true;
            break;
        }
    }
    out.count = prev.count;
    out.samples = std::move(prev.samples);
    return out;
}

std::size_t component_count_2d(const ShellArrangement& sh) { return complement_components_2d(sh).count; }

}  // namespace coamoeba
