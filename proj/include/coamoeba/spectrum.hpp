// Restriction of f to an edge of its Newton polytope and the roots of the
// resulting one-variable polynomial.
#pragma once

#include <stdexcept>
#include <vector>

#include "coamoeba/core.hpp"
#include "coamoeba/polytope.hpp"

namespace coamoeba {

/// P(w) = sum_j coeffs[j] w^{exponents[j]}, exponents strictly increasing.
struct SparsePoly {
    std::vector<Int> exponents;
    std::vector<Complex> coeffs;

    Int degree() const { return exponents.empty() ? 0 : exponents.back(); }
    /// Dense coefficient vector, index = power.
    std::vector<Complex> dense() const;
};

struct Root {
    Complex a;
    int mult = 1;
    double phase = 0.0;    // arg a in [0, 2pi)
    double log_abs = 0.0;  // ln |a|
};

class RootFindError : public std::runtime_error {
public:
    RootFindError(const std::string& what, std::vector<Complex> best)
        : std::runtime_error(what), best_iterate(std::move(best)) {}
    std::vector<Complex> best_iterate;
};

/// All roots of a dense polynomial (index = power) by Aberth-Ehrlich
/// iteration, repeated according to multiplicity. Requires nonzero constant
/// and leading coefficients.
std::vector<Complex> aberth_roots(std::span<const Complex> dense, int max_rounds = 2000);

/// Distinct roots with multiplicities. Iterates with aberth_roots, clusters
/// roots closer than 1e-7 max(1,|a|), then merges looser clusters whose
/// centroid passes a d-fold root test, and polishes each centroid with
/// Newton's method on P^{(d-1)}.
std::vector<Root> find_roots(const SparsePoly& p);

/// max |c_top prod (w - a_j)^{d_j} - P| / max |P coefficient|.
double reconstruction_residual(const SparsePoly& p, const std::vector<Root>& roots);

struct EdgeRestriction {
    IntVec alpha0;
    SparsePoly poly;
};

EdgeRestriction restrict_to_edge(const ExpPoly& f, const Edge& e);

struct EdgeSpectrum {
    Edge edge;
    IntVec alpha0;
    SparsePoly poly;
    std::vector<Root> roots;
    AngleEstimate gamma;
    double beta_norm = 0.0;
    double residual = 0.0;

    int total_multiplicity() const;
};

EdgeSpectrum edge_spectrum(const ExpPoly& f, const NewtonPolytope& p, const Edge& e,
                           const AngleOptions& opts = {});

}  // namespace coamoeba
