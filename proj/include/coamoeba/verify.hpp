// Numerical evidence for the shell as a limit set in the plane: a coamoeba
// sampler and a check that phases of zeros of f(z + R u) cluster on the
// edge hyperplanes as R grows along a normal-cone direction u.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coamoeba/shell.hpp"

namespace coamoeba {

struct CloudPoint {
    double y1 = 0.0;  // arg w1 in [0, 2pi)
    double y2 = 0.0;  // theta2 in [0, 2pi)
    double x2 = 0.0;  // Re z2 of the sample
};

struct SampleCloud {
    std::vector<CloudPoint> points;
    std::uint64_t seed = 0;
    std::size_t grid = 0;
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t solves = 0;
    std::size_t failures = 0;
};

/// For each jittered grid point (x2, theta2) solve f(w1, e^{x2 + i theta2}) = 0
/// for w1 and record the phases. Throws std::invalid_argument("rotate
/// coordinates") when f does not depend on z1.
SampleCloud sample_coamoeba_2d(const ExpPoly& f, std::size_t grid, double x_min, double x_max, std::uint64_t seed);

void write_cloud_csv(std::ostream& os, const SampleCloud& cloud);
SampleCloud read_cloud_csv(std::istream& is);

struct LimitSample {
    double radius = 0.0;
    double max_deviation = 0.0;
    std::size_t samples = 0;
};

struct LimitCheckOptions {
    double epsilon = 0.01;
    std::vector<double> radii{5.0, 10.0, 20.0};
    std::uint64_t seed = 7;
    std::size_t grid = 48;
    double window = 1.0;  // |Re z_k| <= window for accepted zeros
    std::optional<Eigen::Vector2d> direction;  // defaults to a unit vector of N_Gamma^eps
};

/// Unit direction of the normal cone of edge `edge` that lies in the shrunken
/// cone N^eps; throws when that cone is empty.
Eigen::VectorXd limit_direction(const NewtonPolytope& p, const Edge& e, double epsilon);

std::vector<LimitSample> shell_limit_check(const ExpPoly& f, const ShellArrangement& sh, std::size_t edge,
                                           const NewtonPolytope& p, const LimitCheckOptions& opts = {});

/// Deviations strictly decrease along the radii and end below `final_tol`;
/// deviations at or below `floor` (zeros exactly on the hyperplanes up to
/// rounding) count as converged.
bool limit_converges(const std::vector<LimitSample>& samples, double final_tol = 0.01, double floor = 1e-12);

}  // namespace coamoeba
