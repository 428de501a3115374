#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "coamoeba/cli.hpp"
#include "coamoeba/ronkin.hpp"

namespace coamoeba::cli {

namespace {

class Checks {
public:
    void add(const std::string& name, json value, json reference, double tolerance, bool pass) {
        items_.push_back({{"name", name},
                          {"value", std::move(value)},
                          {"reference", std::move(reference)},
                          {"tolerance", tolerance},
                          {"status", pass ? "pass" : "fail"}});
        all_pass_ = all_pass_ && pass;
    }
    void close(const std::string& name, double value, double reference, double tol) {
        const double scale = std::max(1.0, std::abs(reference));
        add(name, value, reference, tol, std::abs(value - reference) <= tol * scale);
    }
    void exact(const std::string& name, long value, long reference) { add(name, value, reference, 0.0, value == reference); }

    json items() const { return items_; }
    bool all_pass() const { return all_pass_; }

private:
    json items_ = json::array();
    bool all_pass_ = true;
};

struct Context {
    const Options& opts;
    Problem problem;
    AngleOptions angles;
    Checks checks;

    double tol(const std::string& key, double fallback) const {
        return problem.tolerances.contains(key) ? problem.tolerances[key].get<double>() : fallback;
    }
    bool expects(const std::string& key) const { return problem.expect.contains(key); }
    const json& expected(const std::string& key) const { return problem.expect[key]; }
};

json vec_json(std::span<const Int> v) { return json(std::vector<Int>(v.begin(), v.end())); }

json angles_json(std::span<const double> y) {
    json out = json::array();
    for (double t : y)
        out.push_back(angle_json(t));
    return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

json vector_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json spectrum_json(const EdgeSpectrum& sp, std::size_t id) {
    json roots = json::array();
    for (const auto& r : sp.roots)
        roots.push_back({{"a", complex_json(r.a)}, {"mult", r.mult}, {"phase", angle_json(r.phase)}, {"log_abs", r.log_abs}});
    json coeffs = json::array();
    for (auto c : sp.poly.coeffs)
        coeffs.push_back(complex_json(c));
    return {{"id", id},
            {"start", vec_json(sp.edge.start)},
            {"end", vec_json(sp.edge.end)},
            {"beta", vec_json(sp.edge.beta)},
            {"lattice_length", sp.edge.lattice_length},
            {"length", sp.edge.euclid_length()},
            {"gamma", {{"value", sp.gamma.value}, {"std_error", sp.gamma.std_error}, {"exact", sp.gamma.exact}}},
            {"restriction", {{"alpha0", vec_json(sp.alpha0)}, {"exponents", sp.poly.exponents}, {"coeffs", coeffs}}},
            {"roots", roots},
            {"residual", sp.residual}};
}

json planes_json(const ShellArrangement& sh) {
    json out = json::array();
    for (const auto& h : sh.planes)
        out.push_back({{"beta", vec_json(h.beta)},
                       {"b", angle_json(h.b)},
                       {"mult", h.mult},
                       {"gamma", h.gamma},
                       {"weight", h.weight},
                       {"edge", h.edge_id}});
    return out;
}

void check_matrix(Context& ctx, const std::string& name, const Eigen::MatrixXd& value, const json& reference,
                  double tol) {
    double worst = 0.0;
    bool shape_ok = reference.is_array() && reference.size() == static_cast<std::size_t>(value.rows());
    for (Eigen::Index i = 0; shape_ok && i < value.rows(); ++i) {
        const auto& row = reference[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(value.cols())) {
            shape_ok = false;
            break;
        }
        for (Eigen::Index j = 0; j < value.cols(); ++j) {
            if (!row[static_cast<std::size_t>(j)].is_number())
                throw InputError(fmt::format("expect.{} must be a numeric matrix", name));
            worst = std::max(worst, std::abs(value(i, j) - row[static_cast<std::size_t>(j)].get<double>()));
        }
    }
    if (!shape_ok)
        throw InputError(fmt::format("expect.{} has the wrong shape", name));
    ctx.checks.add(name, matrix_json(value), reference, tol, worst <= tol);
}

double expected_number(const Context& ctx, const std::string& key) {
    const auto& v = ctx.expected(key);
    if (!v.is_number())
        throw InputError(fmt::format("expect.{} must be a number", key));
    return v.get<double>();
}

long expected_integer(const Context& ctx, const std::string& key) {
    const auto& v = ctx.expected(key);
    if (!v.is_number_integer())
        throw InputError(fmt::format("expect.{} must be an integer", key));
    return v.get<long>();
}

json cmd_info(Context& ctx) {
    const NewtonPolytope p = newton_polytope(ctx.problem.f);
    const ShellArrangement sh = build_shell(ctx.problem.f, p, ctx.angles);
    json terms = json::array();
    for (const auto& t : ctx.problem.f.terms())
        terms.push_back({{"alpha", vec_json(t.alpha)}, {"c", complex_json(t.c)}});
    json vertices = json::array();
    for (const auto& v : p.vertices)
        vertices.push_back(vec_json(v));
    json edges = json::array();
    const double tol = ctx.tol("residual", 1e-9);
    for (std::size_t i = 0; i < sh.spectra.size(); ++i) {
        const auto& sp = sh.spectra[i];
        edges.push_back(spectrum_json(sp, i));
        ctx.checks.exact(fmt::format("edge {} root multiplicities sum to lattice length", i), sp.total_multiplicity(),
                         static_cast<long>(sp.edge.lattice_length));
        ctx.checks.add(fmt::format("edge {} factorization residual", i), sp.residual, 0.0, tol, sp.residual <= tol);
    }
    return {{"terms", terms},
            {"polytope", {{"dim", p.dim}, {"vertices", vertices}, {"edges", edges}}},
            {"quermass_vn1", quermassintegral_vn1(p, ctx.angles)}};
}

json cmd_shell(Context& ctx) {
    const ShellArrangement sh = build_shell(ctx.problem.f, ctx.angles);
    for (std::size_t i = 0; i < sh.spectra.size(); ++i) {
        const auto& sp = sh.spectra[i];
        long mult = 0;
        for (const auto& h : sh.planes)
            if (h.edge_id == i)
                mult += h.mult;
        ctx.checks.exact(fmt::format("edge {} plane multiplicities", i), mult, static_cast<long>(sp.edge.lattice_length));
    }
    const bool positive =
        std::all_of(sh.planes.begin(), sh.planes.end(), [](const auto& h) { return h.weight > 0.0; });
    ctx.checks.add("weights positive", positive, true, 0.0, positive);
    return {{"planes", planes_json(sh)}, {"families", sh.coinciding_groups()}};
}

json cmd_smatrix(Context& ctx) {
    const Analysis a = analyze(ctx.problem.f, ctx.angles);
    const auto& sm = a.s;
    const double sym = (sm.s - sm.s.transpose()).cwiseAbs().maxCoeff();
    ctx.checks.add("symmetric", sym, 0.0, 1e-14, sym <= 1e-14);
    const double min_eig = sm.eigenvalues.size() ? sm.eigenvalues.minCoeff() : 0.0;
    const double psd_tol = 1e-12 * std::max(1.0, sm.trace);
    ctx.checks.add("positive semidefinite", min_eig, 0.0, psd_tol, min_eig >= -psd_tol);
    if (ctx.expects("S"))
        check_matrix(ctx, "S", sm.s, ctx.expected("S"), ctx.tol("S", 1e-12));
    if (ctx.expects("singular")) {
        const bool want = ctx.expected("singular").get<bool>();
        ctx.checks.add("singular", !sm.positive_definite, want, 0.0, want == !sm.positive_definite);
    }
    return {{"S", matrix_json(sm.s)},
            {"det", sm.det},
            {"trace", sm.trace},
            {"eigenvalues", vector_json(sm.eigenvalues)},
            {"positive_definite", sm.positive_definite},
            {"singular", !sm.positive_definite}};
}

json cmd_ronkin(Context& ctx) {
    const std::size_t n = ctx.problem.f.dim();
    if (!ctx.opts.eval)
        throw InputError("ronkin needs --eval y1,...,yn");
    const auto& y = *ctx.opts.eval;
    if (y.size() != n)
        throw InputError(fmt::format("--eval needs {} coordinates, got {}", n, y.size()));
    const Analysis a = analyze(ctx.problem.f, ctx.angles);
    const RonkinEval r(a.shell, a.s);
    const double phi = r.phi(y);
    json out{{"y", angles_json(y)}, {"phi", phi}, {"periodic_part", r.periodic_part_value(y)}};

    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        for (Int sign : {Int{1}, Int{-1}}) {
            IntVec ell(n, 0);
            ell[k] = sign;
            worst = std::max(worst, std::abs(periodic_part(r, y, ell)));
        }
    const double ptol = ctx.tol("periodicity", 1e-10) * std::max(1.0, std::abs(phi));
    ctx.checks.add("periodic part invariant under unit shifts", worst, 0.0, ptol, worst <= ptol);

    if (ctx.opts.grad) {
        try {
            const Eigen::VectorXd g = r.grad(y);
            out["grad"] = vector_json(g);
            ctx.checks.add("smooth point", true, true, 0.0, true);
        } catch (const NonSmoothPoint& e) {
            out["walls"] = e.planes;
            ctx.checks.add("smooth point", false, true, 0.0, false);
        }
    }
    if (ctx.expects("phi"))
        ctx.checks.close("phi", phi, expected_number(ctx, "phi"), ctx.tol("phi", 1e-10));
    return out;
}

json intersection_json(const IntersectionSet& is) {
    json pts = json::array();
    for (const auto& p : is.points)
        pts.push_back({{"y", angles_json(p.y)}, {"mult", p.mult}, {"contributions", p.contributions}});
    json tuples = json::array();
    for (const auto& r : is.reports)
        tuples.push_back({{"edges", r.edges}, {"det", r.det_b}, {"sigma", r.sigma}, {"weight", r.weight}});
    return {{"points", pts}, {"total", is.total}, {"tuples", tuples}};
}

json cmd_count(Context& ctx) {
    const Analysis a = analyze(ctx.problem.f, ctx.angles);
    const IntersectionSet is = intersection_set(a.shell);
    const GenericCount g = generic_count(a.shell, is);
    json out = intersection_json(is);
    out["generic_count"] = g.count;
    out["generic"] = g.generic;
    out["simple_roots"] = g.simple_roots;
    out["no_concurrence"] = g.no_concurrence;
    out["no_coinciding_planes"] = g.no_coinciding_planes;

    if (g.generic)
        ctx.checks.exact("generic arrangement: |I_f| equals sum of |det B_I|", is.total, g.count);
    if (ctx.problem.f.dim() == 2) {
        const ComponentScan scan = complement_components_2d(a.shell);
        out["components"] = {{"count", scan.count}, {"grid", scan.grid}, {"stable", scan.stable}};
        ctx.checks.add("component count stable under refinement", scan.stable, true, 0.0, scan.stable);
        if (g.generic && a.s.positive_definite)
            ctx.checks.exact("generic arrangement: components equal |I_f|", static_cast<long>(scan.count), is.total);
        if (ctx.expects("component_count"))
            ctx.checks.exact("component_count", static_cast<long>(scan.count), expected_integer(ctx, "component_count"));
    }
    if (ctx.expects("intersection_total"))
        ctx.checks.exact("intersection_total", is.total, expected_integer(ctx, "intersection_total"));
    if (ctx.expects("generic_count"))
        ctx.checks.exact("generic_count", g.count, expected_integer(ctx, "generic_count"));
    return out;
}

json cmd_bounds(Context& ctx) {
    const Analysis a = analyze(ctx.problem.f, ctx.angles);
    const IntersectionSet is = intersection_set(a.shell);
    const double tol = ctx.tol("bounds", 1e-12);
    EstimateBounds eb;
    try {
        eb = estimate_bounds(a.shell, a.s, is, tol);
    } catch (const std::domain_error& e) {
        ctx.checks.add("nondegenerate arrangement", false, true, 0.0, false);
        return {{"error", e.what()}, {"intersections", is.total}};
    }
    const double count = static_cast<double>(is.total);
    ctx.checks.add("lower bound", eb.lower, count, tol, eb.lower <= count + tol * std::max(1.0, count));
    ctx.checks.add("upper bound", eb.upper, count, tol, count <= eb.upper + tol * std::max(1.0, eb.upper));
    if (ctx.expects("lower"))
        ctx.checks.close("expected lower", eb.lower, expected_number(ctx, "lower"), tol);
    if (ctx.expects("upper"))
        ctx.checks.close("expected upper", eb.upper, expected_number(ctx, "upper"), tol);
    return {{"M", eb.big_m},       {"m", eb.small_m},           {"mass", std::pow(2.0, static_cast<double>(a.shell.n)) * a.s.det},
            {"lower", eb.lower},   {"intersections", is.total}, {"upper", eb.upper}};
}

void identity_checks(Context& ctx, const Analysis& a, json& out) {
    const double tm = trace_mass(a.s, a.shell.n);
    const double tv = trace_mass_via_v(a.polytope, ctx.angles);
    const double tol = ctx.tol("identity", 1e-9);
    const double rel = std::abs(tm - tv) / std::max(std::abs(tv), 1e-300);
    ctx.checks.add("trace mass identity", tm, tv, tol, rel <= tol || (tm == 0.0 && tv == 0.0));
    const MassIdentity mi = ma_mass_identity(a.shell, a.s);
    const double mrel = std::abs(mi.lhs - mi.rhs) / std::max(std::abs(mi.rhs), 1.0);
    ctx.checks.add("Monge-Ampere identity", mi.lhs, mi.rhs, tol, mrel <= tol);
    if (ctx.expects("trace_mass"))
        ctx.checks.close("expected trace mass", tm, expected_number(ctx, "trace_mass"), ctx.tol("trace_mass", 1e-9));
    out["trace_mass"] = tm;
    out["trace_mass_via_quermass"] = tv;
    out["monge_ampere"] = {{"lhs", mi.lhs}, {"rhs", mi.rhs}};
}

json cmd_identity(Context& ctx) {
    const Analysis a = analyze(ctx.problem.f, ctx.angles);
    json out = json::object();
    identity_checks(ctx, a, out);
    bool exact = std::all_of(a.shell.spectra.begin(), a.shell.spectra.end(),
                             [](const auto& sp) { return sp.gamma.exact; });
    out["angles_exact"] = exact;
    return out;
}

SampleCloud make_cloud(const Context& ctx) {
    const std::size_t grid = ctx.opts.grid.value_or(256);
    const auto [lo, hi] = ctx.opts.x_range.value_or(std::pair{-4.0, 4.0});
    if (!(lo < hi))
        throw InputError("--x-range needs a < b");
    try {
        return sample_coamoeba_2d(ctx.problem.f, grid, lo, hi, ctx.angles.seed);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

json cmd_sample(Context& ctx) {
    if (!ctx.opts.out)
        throw InputError("sample needs --out PATH");
    const SampleCloud cloud = make_cloud(ctx);
    std::ofstream os(*ctx.opts.out);
    if (!os)
        throw InputError(fmt::format("cannot write '{}'", *ctx.opts.out));
    write_cloud_csv(os, cloud);
    ctx.checks.exact("root solves without failure", static_cast<long>(cloud.failures), 0);
    return {{"out", *ctx.opts.out},
            {"points", cloud.points.size()},
            {"solves", cloud.solves},
            {"grid", cloud.grid},
            {"x_range", {cloud.x_min, cloud.x_max}}};
}

json cmd_plot(Context& ctx) {
    if (!ctx.opts.out)
        throw InputError("plot needs --out PATH");
    if (ctx.problem.f.dim() != 2)
        throw InputError("unsupported: plots need n = 2");
    const Analysis a = analyze(ctx.problem.f, ctx.angles);
    const IntersectionSet is = intersection_set(a.shell);
    std::optional<SampleCloud> cloud;
    if (ctx.opts.cloud) {
        std::ifstream in(*ctx.opts.cloud);
        if (!in)
            throw InputError(fmt::format("cannot open '{}'", *ctx.opts.cloud));
        try {
            cloud = read_cloud_csv(in);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    std::ofstream os(*ctx.opts.out);
    if (!os)
        throw InputError(fmt::format("cannot write '{}'", *ctx.opts.out));
    os << render_svg(a.shell, &is, cloud ? &*cloud : nullptr);
    return {{"out", *ctx.opts.out},
            {"families", a.shell.coinciding_groups().size()},
            {"vertices", is.points.size()},
            {"cloud_points", cloud ? cloud->points.size() : 0}};
}

json cmd_verify(Context& ctx) {
    const Analysis a = analyze(ctx.problem.f, ctx.angles);
    const std::size_t n = a.shell.n;
    json out = json::object();
    identity_checks(ctx, a, out);

    const RonkinEval r(a.shell, a.s);
    std::mt19937_64 rng(ctx.angles.seed);
    std::uniform_real_distribution<double> unit(0.0, kTwoPi);
    std::uniform_int_distribution<Int> shift(-3, 3);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> y(n);
        IntVec ell(n);
        for (std::size_t k = 0; k < n; ++k) {
            y[k] = unit(rng);
            ell[k] = shift(rng);
        }
        worst = std::max(worst, std::abs(periodic_part(r, y, ell)) / std::max(1.0, std::abs(r.phi(y))));
    }
    const double ptol = ctx.tol("periodicity", 1e-10);
    ctx.checks.add("periodic part invariant under lattice shifts", worst, 0.0, ptol, worst <= ptol);

    if (a.s.positive_definite && n == 2) {
        const ComponentScan scan = complement_components_2d(a.shell);
        const GradientClasses gc = gradient_classes(r, scan.samples, skew_lattice(a.s));
        out["components"] = scan.count;
        ctx.checks.add("gradient classes of components pairwise distinct", gc.min_separation, 0.0, 1e-6,
                       gc.pairwise_distinct);
    } else if (a.s.positive_definite) {
        out["gradient_classes_found"] = sample_component_points(r, a.shell, 20000, ctx.angles.seed).size();
    }

    if (n == 2) {
        json limits = json::array();
        for (std::size_t e = 0; e < a.shell.spectra.size(); ++e) {
            LimitCheckOptions lo;
            lo.seed = ctx.angles.seed;
            std::vector<LimitSample> samples;
            try {
                samples = shell_limit_check(ctx.problem.f, a.shell, e, a.polytope, lo);
            } catch (const std::invalid_argument& err) {
                ctx.checks.add(fmt::format("edge {} phase limit", e), err.what(), "direction in shrunken cone", 0.0, false);
                continue;
            }
            json rows = json::array();
            for (const auto& s : samples)
                rows.push_back({{"radius", s.radius}, {"max_deviation", s.max_deviation}, {"samples", s.samples}});
            limits.push_back({{"edge", e}, {"samples", rows}});
            const double last = samples.empty() ? std::nan("") : samples.back().max_deviation;
            ctx.checks.add(fmt::format("edge {} phase limit clustering", e), last, 0.0, 0.01, limit_converges(samples));
        }
        out["phase_limits"] = limits;
    }
    return out;
}

}  // namespace

json angle_json(double t) { return {{"rad", t}, {"pi", t / kPi}}; }

Outcome run(const Options& opts) {
    Outcome outcome;
    try {
        Context ctx{opts, load_problem(opts.input), {}, {}};
        ctx.angles.seed = opts.seed.value_or(ctx.problem.seed);
        ctx.angles.mc_samples = opts.mc_samples.value_or(ctx.problem.mc_samples);

        json result;
        const std::string& c = opts.command;
        if (c == "info")
            result = cmd_info(ctx);
        else if (c == "shell")
            result = cmd_shell(ctx);
        else if (c == "smatrix")
            result = cmd_smatrix(ctx);
        else if (c == "ronkin")
            result = cmd_ronkin(ctx);
        else if (c == "count")
            result = cmd_count(ctx);
        else if (c == "bounds")
            result = cmd_bounds(ctx);
        else if (c == "identity")
            result = cmd_identity(ctx);
        else if (c == "sample")
            result = cmd_sample(ctx);
        else if (c == "plot")
            result = cmd_plot(ctx);
        else if (c == "verify")
            result = cmd_verify(ctx);
        else
            throw InputError(fmt::format("unknown command '{}'", c));

        outcome.report = {{"command", c},
                          {"input", opts.input},
                          {"n", ctx.problem.f.dim()},
                          {"seed", ctx.angles.seed},
                          {"mc_samples", ctx.angles.mc_samples},
                          {"result", std::move(result)},
                          {"checks", ctx.checks.items()},
                          {"status", ctx.checks.all_pass() ? "pass" : "fail"}};
        outcome.exit_code = ctx.checks.all_pass() ? 0 : 1;
    } catch (const InputError& e) {
        outcome.exit_code = 2;
        outcome.report = {{"command", opts.command}, {"error", e.what()}, {"status", "error"}};
    } catch (const std::exception& e) {
        outcome.exit_code = 2;
        outcome.report = {{"command", opts.command}, {"error", e.what()}, {"status", "error"}};
    }
    outcome.text = opts.json_output ? outcome.report.dump(2) + "\n" : format_text(outcome.report);
    return outcome;
}

}  // namespace coamoeba::cli
