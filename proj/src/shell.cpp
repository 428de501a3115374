#include "coamoeba/shell.hpp"

#include <cmath>

#include "coamoeba/lattice.hpp"

namespace coamoeba {

double ShellHyperplane::distance(std::span<const double> y) const {
    double s = -b;
    for (std::size_t i = 0; i < beta.size(); ++i)
        s += static_cast<double>(beta[i]) * y[i];
    return std::abs(centered_angle(s)) / norm(beta);
}

PlaneKey canonical_key(std::span<const Int> beta, double b) {
    PlaneKey key{IntVec(beta.begin(), beta.end()), wrap_angle(b)};
    std::size_t i = 0;
    while (i < key.beta.size() && key.beta[i] == 0)
        ++i;
    if (i < key.beta.size() && key.beta[i] < 0) {
        for (auto& x : key.beta)
            x = -x;
        key.b = wrap_angle(kTwoPi - key.b);
    }
    return key;
}

bool same_plane(const PlaneKey& x, const PlaneKey& y, double tol) {
    return x.beta == y.beta && std::abs(centered_angle(x.b - y.b)) <= tol;
}

std::vector<std::vector<std::size_t>> ShellArrangement::coinciding_groups() const {
    std::vector<std::vector<std::size_t>> groups;
    std::vector<PlaneKey> keys;
    for (std::size_t i = 0; i < planes.size(); ++i) {
        const PlaneKey key = canonical_key(planes[i].beta, planes[i].b);
        bool placed = false;
        for (std::size_t g = 0; g < groups.size() && !placed; ++g)
            if (same_plane(keys[g], key)) {
                groups[g].push_back(i);
                placed = true;
            }
        if (!placed) {
            groups.push_back({i});
            keys.push_back(key);
        }
    }
    return groups;
}

ShellArrangement build_shell(const ExpPoly& f, const NewtonPolytope& p, const AngleOptions& opts) {
    ShellArrangement sh;
    sh.n = f.dim();
    for (const auto& e : p.edges) {
        sh.spectra.push_back(edge_spectrum(f, p, e, opts));
        const auto& sp = sh.spectra.back();
        for (std::size_t j = 0; j < sp.roots.size(); ++j) {
            const auto& r = sp.roots[j];
            ShellHyperplane h;
            h.beta = e.beta;
            h.b = r.phase;
            h.mult = r.mult;
            h.gamma = sp.gamma.value;
            h.weight = sp.gamma.value * r.mult / sp.beta_norm;
            h.edge_id = sh.spectra.size() - 1;
            h.root_id = j;
            sh.planes.push_back(std::move(h));
        }
    }
    return sh;
}

ShellArrangement build_shell(const ExpPoly& f, const AngleOptions& opts) {
    return build_shell(f, newton_polytope(f), opts);
}

SMatrix s_matrix(const ShellArrangement& sh) {
    const auto n = static_cast<Eigen::Index>(sh.n);
    SMatrix sm;
    sm.s = Eigen::MatrixXd::Zero(n, n);
    std::vector<IntVec> directions;
    for (const auto& sp : sh.spectra) {
        Eigen::VectorXd beta(n);
        for (Eigen::Index i = 0; i < n; ++i)
            beta[i] = static_cast<double>(sp.edge.beta[static_cast<std::size_t>(i)]);
        const double scale = 0.5 * sp.edge.euclid_length() * sp.gamma.value / beta.squaredNorm();
        sm.s += scale * beta * beta.transpose();
        directions.push_back(sp.edge.beta);
    }
    sm.det = sm.s.determinant();
    sm.trace = sm.s.trace();
    sm.positive_definite = !directions.empty() && rank(IntMatrix::from_columns(directions)) == sh.n;
    sm.eigenvalues = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sm.s, Eigen::EigenvaluesOnly).eigenvalues();
    return sm;
}

double trace_mass(const SMatrix& sm, std::size_t n) {
    const int k = static_cast<int>(n);
    return std::pow(2.0, 2 * k - 1) * std::tgamma(k) * unit_ball_volume(k) * sm.trace;
}

double trace_mass_from_quermass(double vn1, std::size_t n) {
    const int k = static_cast<int>(n);
    return std::tgamma(k + 1) * std::pow(4.0, k - 1) * unit_ball_volume(k) * vn1 / unit_ball_volume(k - 1);
}

double trace_mass_via_v(const NewtonPolytope& p, const AngleOptions& opts) {
    return trace_mass_from_quermass(quermassintegral_vn1(p, opts), p.n);
}

Analysis analyze(const ExpPoly& f, const AngleOptions& opts) {
    NewtonPolytope p = newton_polytope(f);
    ShellArrangement sh = build_shell(f, p, opts);
    SMatrix s = s_matrix(sh);
    return {f, std::move(p), std::move(sh), std::move(s)};
}

}  // namespace coamoeba
