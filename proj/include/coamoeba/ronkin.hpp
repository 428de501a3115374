// The convex piecewise-affine potential phi_f of the averaged current, its
// gradient, and the gradient image of complement components modulo the
// lattice generated by the columns of 4 pi S_f.
#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "coamoeba/shell.hpp"

namespace coamoeba {

/// Continuous piecewise-linear, Phi(0) = 0, slope k on [2pi(k-1), 2pi k].
double phi_basis(double t);
/// Slope of phi_basis on the open interval containing t.
int phi_basis_slope(double t);

struct RonkinTerm {
    IntVec beta;
    double b = 0.0;
    int mult = 1;
    double coef = 0.0;  // 2 pi gamma d / |beta|
    std::size_t plane = 0;
};

class NonSmoothPoint : public std::domain_error {
public:
    explicit NonSmoothPoint(std::vector<std::size_t> planes);
    std::vector<std::size_t> planes;
};

class RonkinEval {
public:
    RonkinEval(const ShellArrangement& sh, const SMatrix& sm);

    std::size_t dim() const { return n_; }
    const std::vector<RonkinTerm>& terms() const { return terms_; }
    const SMatrix& s() const { return s_; }

    double phi(std::span<const double> y) const;
    /// Throws NonSmoothPoint when y lies within `wall_tol` of a shell plane.
    Eigen::VectorXd grad(std::span<const double> y, double wall_tol = 1e-9) const;
    /// phi(y) - y^t S y.
    double periodic_part_value(std::span<const double> y) const;
    /// Planes whose wall passes within `tol` (in the beta . y scale).
    std::vector<std::size_t> walls_at(std::span<const double> y, double tol) const;

private:
    std::size_t n_;
    std::vector<RonkinTerm> terms_;
    SMatrix s_;
};

double eval_phi(const RonkinEval& r, std::span<const double> y);
Eigen::VectorXd grad_phi(const RonkinEval& r, std::span<const double> y);

/// phi(y + 2pi l) - phi(y) - [(y + 2pi l)^t S (y + 2pi l) - y^t S y]; zero
/// up to rounding.
double periodic_part(const RonkinEval& r, std::span<const double> y, std::span<const Int> ell);

struct SkewLattice {
    Eigen::MatrixXd basis;  // columns of 4 pi S
    bool invertible = false;

    /// Representative of v mod the lattice with coordinates in [-1/2, 1/2).
    Eigen::VectorXd reduce(const Eigen::VectorXd& v) const;
    /// Distance between the classes of u and v (nearest of the 3^n
    /// neighbouring translates after reduction).
    double quotient_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
};

SkewLattice skew_lattice(const SMatrix& sm);

struct GradientClasses {
    std::vector<Eigen::VectorXd> gradients;  // raw
    std::vector<Eigen::VectorXd> classes;    // reduced mod L, or raw when no quotient
    bool quotient = false;
    bool pairwise_distinct = false;
    double min_separation = 0.0;
};

GradientClasses gradient_classes(const RonkinEval& r, const std::vector<Eigen::VectorXd>& samples,
                                 const SkewLattice& lattice, double distinct_tol = 1e-6);

/// Expected jump of grad phi when crossing plane `plane` in the direction of
/// its beta: the sum of coef * beta over every plane coinciding with it,
/// oriented along the crossing.
Eigen::VectorXd expected_gradient_jump(const RonkinEval& r, const ShellArrangement& sh, std::size_t plane);

/// Random points at least `min_wall_distance` away from every plane, one per
/// distinct gradient class. Used for dimensions where no flood fill exists.
std::vector<Eigen::VectorXd> sample_component_points(const RonkinEval& r, const ShellArrangement& sh,
                                                     std::size_t attempts, std::uint64_t seed,
                                                     double min_wall_distance = 0.05);

}  // namespace coamoeba
