// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed constants below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include <fmt/format.h>

#include "support.hpp"

using namespace coamoeba;

namespace {

constexpr double kExactTol = 1e-12;
constexpr double kIdentityTol = 1e-9;
constexpr double kPeriodicTol = 1e-10;
constexpr double kJumpTol = 1e-10;
constexpr double kShiftTol = 1e-12;
constexpr double kLimitTol = 0.01;
constexpr std::uint64_t kMcSamples = 1'000'000;
constexpr double kSuiteSeconds = 30.0;
constexpr double kLimitSeconds = 10.0;

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass)
                detail = what;
            pass = false;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool has_point(const IntersectionSet& is, std::vector<double> y, long mult) {
    return std::any_of(is.points.begin(), is.points.end(),
                       [&](const TorusPoint& p) { return torus_distance(p.y, y) < 1e-9 && p.mult == mult; });
}

Verdict triangle_end_to_end() {
    Verdict v;
    const double r2 = std::sqrt(2.0);
    const Analysis a = analyze(fixtures::triangle());
    Eigen::Matrix2d s;
    s << 1 + r2, -1, -1, 1 + r2;
    s /= 4 * r2;
    v.require((a.s.s - s).cwiseAbs().maxCoeff() <= kExactTol, "S entries");

    const auto* p1 = fixtures::plane_with(a.shell, {1, 0});
    const auto* p2 = fixtures::plane_with(a.shell, {0, 1});
    const auto* p3 = fixtures::plane_with(a.shell, {1, -1});
    v.require(a.shell.planes.size() == 3 && p1 && p2 && p3, "shell planes");
    if (!v.pass)
        return v;
    for (const auto* h : {p1, p2, p3})
        v.require(std::abs(centered_angle(h->b - kPi)) <= kExactTol, "phases pi");
    v.require(std::abs(p1->weight - 0.5) <= kExactTol && std::abs(p2->weight - 0.5) <= kExactTol &&
                  std::abs(p3->weight - 1.0 / (2.0 * r2)) <= kExactTol,
              "weights (1/2, 1/2, 1/(2 sqrt 2))");

    const IntersectionSet is = intersection_set(a.shell);
    v.require(is.total == 3, "|I_f| = 3");
    const std::size_t comps = component_count_2d(a.shell);
    v.require(comps == 3, "component count 3");
    const EstimateBounds eb = estimate_bounds(a.shell, a.s, is, kExactTol);
    v.require(std::abs(eb.lower - (1 + r2)) <= kExactTol && std::abs(eb.upper - (2 + r2)) <= kExactTol,
              "bounds (1+sqrt2, 2+sqrt2)");
    v.require(eb.brackets, "bounds bracket 3");
    if (v.pass)
        v.detail = fmt::format("|I_f|={} components={} bounds=({:.12g}, {:.12g})", is.total, comps, eb.lower, eb.upper);
    return v;
}

Verdict segment_example() {
    Verdict v;
    const Analysis a = analyze(fixtures::segment());
    v.require(a.shell.planes.size() == 1, "one plane");
    if (!v.pass)
        return v;
    const auto& h = a.shell.planes[0];
    v.require(h.beta == IntVec{1, 1} && std::abs(centered_angle(h.b - kPi)) <= kExactTol, "plane y1+y2 = pi");
    v.require(std::abs(h.weight - 1.0 / std::sqrt(2.0)) <= kExactTol, "weight 1/sqrt2");
    v.require(!a.s.positive_definite && std::abs(a.s.det) <= kExactTol, "det S = 0 detected");
    const IntersectionSet is = intersection_set(a.shell);
    v.require(is.total == 0 && is.points.empty(), "counts empty");
    bool degenerate = false;
    try {
        estimate_bounds(a.shell, a.s, is);
    } catch (const std::domain_error&) {
        degenerate = true;
    }
    v.require(degenerate, "bounds reject degenerate arrangement");
    if (v.pass)
        v.detail = fmt::format("weight={:.12g} det S={:.3g}", h.weight, a.s.det);
    return v;
}

Verdict product_example() {
    Verdict v;
    const Analysis a = analyze(fixtures::product());
    const IntersectionSet is = intersection_set(a.shell);
    v.require(is.total == 4, "|I_f| = 4");
    v.require(is.points.size() == 1 && has_point(is, {kPi, kPi}, 4), "one point of multiplicity 4");
    const EstimateBounds eb = estimate_bounds(a.shell, a.s, is, kExactTol);
    v.require(std::abs(eb.lower - 4.0) <= kExactTol && std::abs(eb.upper - 4.0) <= kExactTol, "bounds 4 = 4");
    v.require(component_count_2d(a.shell) == 1, "one component");
    v.require(!generic_count(a.shell, is).generic, "generic flag false");
    if (v.pass)
        v.detail = fmt::format("|I_f|=4 at (pi,pi) mult 4, bounds=({:.12g}, {:.12g})", eb.lower, eb.upper);
    return v;
}

// Shared suite for the trace-mass and Monge-Ampere criteria.
std::vector<ExpPoly> random_suite() {
    std::mt19937_64 rng(20240601);
    std::vector<ExpPoly> suite;
    while (suite.size() < 6) {
        ExpPoly f = fixtures::random_poly(rng, 2, 3 + suite.size() % 4, 4);
        if (newton_polytope(f).dim == 2)
            suite.push_back(std::move(f));
    }
    while (suite.size() < 12) {
        ExpPoly f = fixtures::random_poly(rng, 3, 5 + suite.size() % 3, 3);
        if (newton_polytope(f).dim == 3)
            suite.push_back(std::move(f));
    }
    return suite;
}

Verdict trace_mass_suite() {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0, worst_sigma = 0.0;
    for (const auto& f : random_suite()) {
        const Analysis a = analyze(f);
        const double tm = trace_mass(a.s, f.dim());
        const double tv = trace_mass_via_v(a.polytope);
        worst = std::max(worst, std::abs(tm - tv) / std::abs(tv));
        if (f.dim() != 3)
            continue;

        // Monte Carlo angles against the facet-normal oracle.
        AngleOptions mc;
        mc.mc_samples = kMcSamples;
        mc.exact_up_to = 2;
        const Analysis m = analyze(f, mc);
        const double tm_mc = trace_mass(m.s, 3);
        const double tv_mc = trace_mass_via_v(m.polytope, mc);
        worst = std::max(worst, std::abs(tm_mc - tv_mc) / std::abs(tv_mc));
        double exact_sum = 0.0, var = 0.0;
        for (const auto& sp : m.shell.spectra) {
            const double oracle = fixtures::external_angle_3d_oracle(m.polytope.support, sp.edge.start, sp.edge.end);
            exact_sum += sp.edge.euclid_length() * oracle;
            var += std::pow(sp.edge.euclid_length() * sp.gamma.std_error, 2);
        }
        // trace mass = 2^{2n-1} (n-1)! Vol_n(B^n) * (1/2) sum length * gamma
        const double scale = std::pow(2.0, 5) * 2.0 * unit_ball_volume(3) * 0.5;
        const double exact_tm = scale * exact_sum;
        const double sigma = scale * std::sqrt(var);
        const double z = std::abs(tm_mc - exact_tm) / sigma;
        worst_sigma = std::max(worst_sigma, z);
        v.require(z <= 3.0, fmt::format("MC trace mass {:.3f} sigma from exact", z));
    }
    const double elapsed = seconds_since(t0);
    v.require(worst <= kIdentityTol, fmt::format("relative gap {:.3e}", worst));
    v.require(elapsed < kSuiteSeconds, fmt::format("runtime {:.1f} s", elapsed));
    if (v.pass)
        v.detail = fmt::format("12 supports, max rel gap {:.2e}, max MC deviation {:.2f} sigma, {:.1f} s", worst,
                               worst_sigma, elapsed);
    return v;
}

Verdict monge_ampere_suite() {
    Verdict v;
    double worst = 0.0;
    for (const auto& f : random_suite()) {
        const Analysis a = analyze(f);
        const MassIdentity mi = ma_mass_identity(a.shell, a.s);
        worst = std::max(worst, std::abs(mi.lhs - mi.rhs) / std::max(std::abs(mi.rhs), 1e-300));
    }
    v.require(worst <= kIdentityTol, fmt::format("relative gap {:.3e}", worst));
    if (v.pass)
        v.detail = fmt::format("12 supports, max rel gap {:.2e}", worst);
    return v;
}

Verdict lattice_oracles() {
    Verdict v;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 2;
        const auto cols = fixtures::random_matrix(rng, n, 20);
        const Int det = std::abs(fixtures::det_oracle(cols));
        std::vector<double> b(n);
        for (auto& x : b)
            x = phase(rng);
        const auto pts = solve_modular(IntMatrix::from_columns(cols), b);
        v.require(static_cast<Int>(pts.size()) == det, fmt::format("solve_modular count {} vs {}", pts.size(), det));
        for (const auto& p : pts)
            for (std::size_t k = 0; k < n; ++k) {
                double s = -b[k];
                for (std::size_t i = 0; i < n; ++i)
                    s += static_cast<double>(cols[k][i]) * p.y[i];
                v.require(std::abs(centered_angle(s)) <= 1e-10, "solution residual");
            }
        v.require(parallelogram_lattice_count(cols) == det, "parallelogram count");
    }
    if (v.pass)
        v.detail = "100 matrices, |det| <= 20";
    return v;
}

Verdict ronkin_properties() {
    Verdict v;
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> u(-3 * kTwoPi, 3 * kTwoPi), torus(0.0, kTwoPi);
    std::uniform_int_distribution<Int> ell(-3, 3);

    std::vector<ExpPoly> polys{fixtures::triangle(), fixtures::product()};
    for (int i = 0; i < 3; ++i)
        polys.push_back(fixtures::random_poly(rng, 2 + i % 2, 4 + i, 3));

    double worst_periodic = 0.0, worst_jump = 0.0;
    for (const auto& f : polys) {
        const Analysis a = analyze(f);
        const RonkinEval r(a.shell, a.s);
        const std::size_t n = f.dim();
        for (int t = 0; t < 200; ++t) {
            std::vector<double> y(n);
            IntVec l(n);
            for (std::size_t i = 0; i < n; ++i) {
                y[i] = u(rng);
                l[i] = ell(rng);
            }
            worst_periodic =
                std::max(worst_periodic, std::abs(periodic_part(r, y, l)) / std::max(1.0, std::abs(r.phi(y))));
        }
        for (std::size_t p = 0; p < a.shell.planes.size(); ++p) {
            const auto& h = a.shell.planes[p];
            Eigen::VectorXd beta(n);
            for (std::size_t i = 0; i < n; ++i)
                beta[Eigen::Index(i)] = double(h.beta[i]);
            Eigen::VectorXd y0(n);
            bool clear = false;
            const PlaneKey key = canonical_key(h.beta, h.b);
            for (int attempt = 0; attempt < 5000 && !clear; ++attempt) {
                for (std::size_t i = 0; i < n; ++i)
                    y0[Eigen::Index(i)] = torus(rng);
                y0 += (h.b - beta.dot(y0)) / beta.squaredNorm() * beta;
                clear = true;
                for (const auto& q : a.shell.planes)
                    if (!same_plane(canonical_key(q.beta, q.b), key) &&
                        q.distance(std::span<const double>(y0.data(), n)) < 1e-3)
                        clear = false;
            }
            v.require(clear, "no clear point on a plane");
            const Eigen::VectorXd step = 1e-5 * beta.normalized();
            const Eigen::VectorXd hi = y0 + step, lo = y0 - step;
            const Eigen::VectorXd jump =
                r.grad(std::span<const double>(hi.data(), n)) - r.grad(std::span<const double>(lo.data(), n));
            Eigen::VectorXd expect = Eigen::VectorXd::Zero(Eigen::Index(n));
            for (const auto& q : a.shell.planes) {
                if (!same_plane(canonical_key(q.beta, q.b), key))
                    continue;
                Eigen::VectorXd qb(n);
                for (std::size_t i = 0; i < n; ++i)
                    qb[Eigen::Index(i)] = double(q.beta[i]);
                expect += (qb.dot(beta) > 0 ? 1.0 : -1.0) * kTwoPi * q.gamma / qb.norm() * q.mult * qb;
            }
            worst_jump = std::max(worst_jump, (jump - expect).cwiseAbs().maxCoeff());
        }
    }
    v.require(worst_periodic <= kPeriodicTol, fmt::format("periodic part {:.3e}", worst_periodic));
    v.require(worst_jump <= kJumpTol, fmt::format("gradient jump error {:.3e}", worst_jump));

    const Analysis tri = analyze(fixtures::triangle());
    const RonkinEval r(tri.shell, tri.s);
    const ComponentScan scan = complement_components_2d(tri.shell);
    const GradientClasses gc = gradient_classes(r, scan.samples, skew_lattice(tri.s));
    v.require(scan.count == 3 && gc.classes.size() == 3 && gc.pairwise_distinct, "3 distinct gradient classes");
    if (v.pass)
        v.detail = fmt::format("1000 (y, l) pairs max {:.2e}, jump error {:.2e}, triangle classes {}", worst_periodic,
                               worst_jump, gc.classes.size());
    return v;
}

Verdict phi_shift_identity() {
    Verdict v;
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double t = -10 * kPi + 20 * kPi * i / 2000.0;
        for (int k = -5; k <= 5; ++k) {
            const double lhs = phi_basis(t + kTwoPi * k) - phi_basis(t);
            const double rhs = kPi * k * k + t * k + kPi * k;
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    v.require(worst <= kShiftTol, fmt::format("max error {:.3e}", worst));
    if (v.pass)
        v.detail = fmt::format("2001 x 11 grid, max error {:.2e}", worst);
    return v;
}

Verdict phase_limit_clustering() {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    const ExpPoly f = fixtures::triangle();
    const NewtonPolytope p = newton_polytope(f);
    const ShellArrangement sh = build_shell(f, p);
    std::string devs;
    for (std::size_t e = 0; e < sh.spectra.size(); ++e) {
        const auto samples = shell_limit_check(f, sh, e, p);
        v.require(samples.size() == 3 && samples.back().radius == 20.0, "radii 5, 10, 20");
        v.require(limit_converges(samples, kLimitTol), fmt::format("edge {} does not cluster", e));
        devs += fmt::format("{}{:.2e}", e ? ", " : "", samples.back().max_deviation);
    }
    const double elapsed = seconds_since(t0);
    v.require(elapsed < kLimitSeconds, fmt::format("runtime {:.1f} s", elapsed));
    if (v.pass)
        v.detail = fmt::format("deviation at R=20: {} ({:.1f} s)", devs, elapsed);
    return v;
}

Verdict genericity_suite() {
    Verdict v;
    std::mt19937_64 rng(1010);
    int accepted = 0, drawn = 0;
    while (accepted < 20 && drawn < 5000) {
        ++drawn;
        const ExpPoly f = fixtures::random_poly(rng, 2, 3 + drawn % 3, 3);
        const Analysis a = analyze(f);
        if (!a.s.positive_definite)
            continue;
        const IntersectionSet is = intersection_set(a.shell);
        const GenericCount g = generic_count(a.shell, is);
        if (!g.generic || !fixtures::well_separated(a.shell, is, 0.1))
            continue;
        ++accepted;
        const ComponentScan scan = complement_components_2d(a.shell);
        v.require(is.total == g.count, fmt::format("|I_f| {} vs sum |det| {}", is.total, g.count));
        v.require(scan.stable && static_cast<long>(scan.count) == is.total,
                  fmt::format("components {} vs |I_f| {}", scan.count, is.total));
    }
    v.require(accepted == 20, fmt::format("only {} generic supports", accepted));
    if (v.pass)
        v.detail = fmt::format("20 generic supports ({} draws)", drawn);
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"triangle example end-to-end", triangle_end_to_end},
        {"segment example", segment_example},
        {"product example", product_example},
        {"trace-mass consistency", trace_mass_suite},
        {"Monge-Ampere identity", monge_ampere_suite},
        {"modular solutions and parallelogram lattice counts", lattice_oracles},
        {"Ronkin function properties", ronkin_properties},
        {"basis shift identity", phi_shift_identity},
        {"phase-limit clustering", phase_limit_clustering},
        {"genericity suite", genericity_suite},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = fmt::format("exception: {}", e.what());
        }
        failed += !v.pass;
        fmt::print("{} {:>2} {}: {}\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
