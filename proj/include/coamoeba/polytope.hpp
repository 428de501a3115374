// Newton polytopes: exact hull, edges with their lattice structure, normal
// cones of edges and their external angles.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "coamoeba/core.hpp"

namespace coamoeba {

/// A support point alpha_0 + k * beta lying on an edge.
struct EdgeLatticePoint {
    Int k;
    std::size_t term;  // index into ExpPoly::terms()
};

struct Edge {
    IntVec start;  // lexicographically smaller endpoint (alpha_0)
    IntVec end;
    IntVec beta;   // primitive, end - start = lattice_length * beta
    Int lattice_length = 0;
    std::vector<EdgeLatticePoint> points;  // strictly increasing k, k=0 and k=lattice_length present

    double euclid_length() const { return static_cast<double>(lattice_length) * norm(beta); }
    std::vector<Int> exponents() const;
};

struct NewtonPolytope {
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<IntVec> support;   // A, in term order
    std::vector<IntVec> vertices;  // sorted lexicographically
    std::vector<Edge> edges;       // sorted by (start, end)
};

NewtonPolytope newton_polytope(const ExpPoly& f);

/// Convex hull of an arbitrary finite point set (no coefficients attached).
NewtonPolytope convex_hull(std::size_t n, const std::vector<IntVec>& points);

/// N_Gamma = {x : x . beta = 0, x . (alpha - alpha') >= 0} written in
/// coordinates of an orthonormal basis of beta^perp.
struct NormalCone {
    std::vector<Eigen::VectorXd> span_basis;         // n - 1 orthonormal vectors
    std::vector<Eigen::VectorXd> halfspace_normals;  // in span coordinates, unit length

    std::size_t span_dim() const { return span_basis.size(); }
    /// Ambient membership test, tolerance relative to |x|.
    bool contains(const Eigen::VectorXd& x, double tol = 1e-12) const;
    Eigen::VectorXd to_ambient(const Eigen::VectorXd& coords) const;
};

NormalCone normal_cone(const NewtonPolytope& p, const Edge& e);

/// Unit vector of beta^perp basis used by normal_cone.
std::vector<Eigen::VectorXd> orthonormal_complement(std::span<const Int> beta);

struct AngleOptions {
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t seed = 20240601;
    /// Dimensions up to this use the closed forms; above, Monte Carlo.
    std::size_t exact_up_to = 3;
};

struct AngleEstimate {
    double value = 0.0;
    double std_error = 0.0;
    bool exact = true;
};

/// gamma = Vol_{n-1}(N_Gamma cap B^{n-1}) / Vol_{n-1}(B^{n-1}).
AngleEstimate external_angle(const NewtonPolytope& p, const Edge& e, const AngleOptions& opts = {});

/// Closed form for cones whose span has dimension <= 2.
double external_angle_exact(const NormalCone& cone);

/// Fraction of uniform directions in the span that fall in the cone.
/// `stream` selects an independent substream of `seed`.
AngleEstimate external_angle_monte_carlo(const NormalCone& cone, std::uint64_t samples,
                                         std::uint64_t seed, std::uint64_t stream = 0);

/// V_{n-1}(Delta, B^n) = Vol_{n-1}(B^{n-1}) / n * sum_Gamma gamma(Gamma) Vol_1(Gamma).
double quermassintegral_vn1(const NewtonPolytope& p, const AngleOptions& opts = {});

std::optional<std::size_t> find_edge(const NewtonPolytope& p, std::span<const Int> a, std::span<const Int> b);

}  // namespace coamoeba
