// The shell of the coamoeba as a weighted toric hyperplane arrangement, the
// matrix S_f, and the two trace-mass formulas.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "coamoeba/polytope.hpp"
#include "coamoeba/spectrum.hpp"

namespace coamoeba {

/// {y : beta . y = b mod 2pi} carrying the weight gamma * d / |beta|.
struct ShellHyperplane {
    IntVec beta;
    double b = 0.0;
    int mult = 1;
    double gamma = 0.0;
    double weight = 0.0;
    std::size_t edge_id = 0;  // index into ShellArrangement::spectra
    std::size_t root_id = 0;

    /// |beta . y - b| reduced mod 2pi, divided by |beta|.
    double distance(std::span<const double> y) const;
};

/// beta with first nonzero entry positive and the matching phase.
struct PlaneKey {
    IntVec beta;
    double b = 0.0;
};

PlaneKey canonical_key(std::span<const Int> beta, double b);
bool same_plane(const PlaneKey& x, const PlaneKey& y, double tol = 1e-9);

struct ShellArrangement {
    std::size_t n = 0;
    std::vector<ShellHyperplane> planes;
    std::vector<EdgeSpectrum> spectra;

    /// Groups of plane indices that coincide as subsets of the torus.
    std::vector<std::vector<std::size_t>> coinciding_groups() const;
};

ShellArrangement build_shell(const ExpPoly& f, const NewtonPolytope& p, const AngleOptions& opts = {});
ShellArrangement build_shell(const ExpPoly& f, const AngleOptions& opts = {});

struct SMatrix {
    Eigen::MatrixXd s;
    double det = 0.0;
    double trace = 0.0;
    /// Edge directions span R^n (decided exactly on the integer directions).
    bool positive_definite = false;
    Eigen::VectorXd eigenvalues;
};

/// S = 1/2 sum_Gamma Vol_1(Gamma) gamma(Gamma) beta beta^t / |beta|^2.
SMatrix s_matrix(const ShellArrangement& sh);

/// 2^{2n-1} (n-1)! Vol_n(B^n) Tr(S).
double trace_mass(const SMatrix& sm, std::size_t n);
/// n! 4^{n-1} Vol_n(B^n) V_{n-1}(Delta, B^n) / Vol_{n-1}(B^{n-1}).
double trace_mass_via_v(const NewtonPolytope& p, const AngleOptions& opts = {});
double trace_mass_from_quermass(double vn1, std::size_t n);

/// Everything derived from f that the counting and Ronkin modules consume.
struct Analysis {
    ExpPoly f;
    NewtonPolytope polytope;
    ShellArrangement shell;
    SMatrix s;
};

Analysis analyze(const ExpPoly& f, const AngleOptions& opts = {});

}  // namespace coamoeba
