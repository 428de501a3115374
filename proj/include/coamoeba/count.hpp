// Exact counting on the torus: solutions of modular linear systems,
// transversal intersection points of the shell, the vertex-count bounds
// and the Monge-Ampere mass identity, plus brute-force lattice oracles.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "coamoeba/lattice.hpp"
#include "coamoeba/shell.hpp"

namespace coamoeba {

struct TorusPoint {
    std::vector<double> y;  // entries in [0, 2pi)
    long mult = 1;
    std::size_t contributions = 1;  // number of (edge tuple, root tuple) pairs landing here
};

/// Flat-torus distance between two points of [0, 2pi)^n.
double torus_distance(std::span<const double> a, std::span<const double> b);

/// All y in [0,2pi)^n with B^t y = b (mod 2pi); B's columns are the
/// directions. Exactly |det B| points, enumerated through the Smith normal
/// form of B^t. Throws std::invalid_argument("dependent directions") when B
/// is singular.
std::vector<TorusPoint> solve_modular(const IntMatrix& b_columns, std::span<const double> phases);

struct EdgeTupleReport {
    std::vector<std::size_t> edges;  // indices into ShellArrangement::spectra
    Int det_b = 0;                   // |det B_I|
    long sigma = 0;                  // |det B_I| * sum over root tuples of prod d
    double weight = 0.0;             // prod gamma / |beta|
};

struct IntersectionSet {
    std::vector<TorusPoint> points;
    long total = 0;
    std::vector<EdgeTupleReport> reports;  // every n-subset of edges
};

IntersectionSet intersection_set(const ShellArrangement& sh, double dedup_tol = 1e-9);

struct GenericCount {
    long count = 0;  // sum over n-subsets of |det B_I|, times the distinct roots on each edge
    bool generic = false;
    bool simple_roots = false;
    bool no_concurrence = false;
    bool no_coinciding_planes = false;
};

GenericCount generic_count(const ShellArrangement& sh);
GenericCount generic_count(const ShellArrangement& sh, const IntersectionSet& is);

struct EstimateBounds {
    double big_m = 0.0;    // max over I of |det B_I| prod gamma/|beta|
    double small_m = 0.0;  // min over I with det B_I != 0
    double lower = 0.0;
    double upper = 0.0;
    long intersections = 0;
    bool brackets = false;
};

/// Throws std::domain_error("degenerate arrangement") when no n edge
/// directions are independent or S is singular.
EstimateBounds estimate_bounds(const ShellArrangement& sh, const SMatrix& sm, double tol = 1e-9);
EstimateBounds estimate_bounds(const ShellArrangement& sh, const SMatrix& sm, const IntersectionSet& is,
                               double tol = 1e-9);

struct MassIdentity {
    double lhs = 0.0;  // 2^n det S
    double rhs = 0.0;  // sum_I prod gamma/|beta| |det B_I| sigma_I
};

MassIdentity ma_mass_identity(const ShellArrangement& sh, const SMatrix& sm);
MassIdentity ma_mass_identity(const IntersectionSet& is, const SMatrix& sm, std::size_t n);

/// Number of points of Z^n in {sum t_j beta_j : t_j in [0,1)}, by scanning
/// the bounding box. Throws for dependent directions.
Int parallelogram_lattice_count(const std::vector<IntVec>& betas);

struct ComponentScan {
    std::size_t count = 0;
    std::size_t grid = 0;
    bool stable = false;
    std::vector<Eigen::VectorXd> samples;  // one interior point per component
};

/// Connected components of the torus minus the shell lines (n = 2 only),
/// by wrap-around flood fill; doubles the grid from 1024 until two
/// consecutive counts agree.
ComponentScan complement_components_2d(const ShellArrangement& sh, std::size_t start_grid = 1024,
                                       std::size_t max_grid = 4096);
std::size_t component_count_2d(const ShellArrangement& sh);

}  // namespace coamoeba
