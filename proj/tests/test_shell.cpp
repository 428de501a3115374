#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace coamoeba;

namespace {

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("shell") {
    TEST_CASE("triangle shell planes and weights") {
        const ShellArrangement sh = build_shell(fixtures::triangle());
        REQUIRE(sh.planes.size() == 3);
        const auto* y1 = fixtures::plane_with(sh, {1, 0});
        const auto* y2 = fixtures::plane_with(sh, {0, 1});
        const auto* diag = fixtures::plane_with(sh, {1, -1});
        REQUIRE(y1);
        REQUIRE(y2);
        REQUIRE(diag);
        for (const auto* h : {y1, y2, diag}) {
            CHECK(h->b == doctest::Approx(kPi).epsilon(1e-15));
            CHECK(h->mult == 1);
            CHECK(h->gamma == 0.5);
        }
        CHECK(std::abs(y1->weight - 0.5) < 1e-12);
        CHECK(std::abs(y2->weight - 0.5) < 1e-12);
        CHECK(std::abs(diag->weight - 1.0 / (2.0 * std::sqrt(2.0))) < 1e-12);
        CHECK(sh.coinciding_groups().size() == 3);
    }

    TEST_CASE("segment and product shells") {
        const ShellArrangement seg = build_shell(fixtures::segment());
        REQUIRE(seg.planes.size() == 1);
        CHECK(seg.planes[0].beta == IntVec{1, 1});
        CHECK(seg.planes[0].gamma == 1.0);
        CHECK(std::abs(seg.planes[0].weight - 1.0 / std::sqrt(2.0)) < 1e-12);

        const ShellArrangement prod = build_shell(fixtures::product());
        REQUIRE(prod.planes.size() == 4);
        int horizontal = 0, vertical = 0;
        for (const auto& h : prod.planes) {
            CHECK(std::abs(h.weight - 0.5) < 1e-12);
            CHECK(h.b == doctest::Approx(kPi).epsilon(1e-15));
            horizontal += h.beta == IntVec{0, 1};
            vertical += h.beta == IntVec{1, 0};
        }
        CHECK(horizontal == 2);
        CHECK(vertical == 2);
        CHECK(prod.coinciding_groups().size() == 2);
    }

    TEST_CASE("canonical keys identify sign-flipped planes") {
        CHECK(same_plane(canonical_key(IntVec{-1, 1}, kPi), canonical_key(IntVec{1, -1}, kPi)));
        CHECK(same_plane(canonical_key(IntVec{-1, 2}, 0.5), canonical_key(IntVec{1, -2}, kTwoPi - 0.5)));
        CHECK_FALSE(same_plane(canonical_key(IntVec{1, 2}, 0.5), canonical_key(IntVec{1, 2}, 0.6)));
        CHECK(same_plane(canonical_key(IntVec{0, 1}, 1e-12), canonical_key(IntVec{0, 1}, kTwoPi - 1e-12)));
    }

    TEST_CASE("S matrices of the examples") {
        const double r2 = std::sqrt(2.0);
        Eigen::Matrix2d tri;
        tri << 1 + r2, -1, -1, 1 + r2;
        tri /= 4 * r2;
        const SMatrix st = s_matrix(build_shell(fixtures::triangle()));
        CHECK(max_abs_diff(st.s, tri) < 1e-12);
        CHECK(st.positive_definite);

        Eigen::Matrix2d seg;
        seg << 1, 1, 1, 1;
        seg *= r2 / 4;
        const SMatrix ss = s_matrix(build_shell(fixtures::segment()));
        CHECK(max_abs_diff(ss.s, seg) < 1e-12);
        CHECK_FALSE(ss.positive_definite);
        CHECK(std::abs(ss.det) < 1e-15);

        const SMatrix sp = s_matrix(build_shell(fixtures::product()));
        CHECK(max_abs_diff(sp.s, 0.5 * Eigen::Matrix2d::Identity()) < 1e-12);
    }

    TEST_CASE("trace masses") {
        const double r2 = std::sqrt(2.0);
        const Analysis t = analyze(fixtures::triangle());
        const double closed = 2 * r2 * kPi * (1 + r2);
        CHECK(trace_mass(t.s, 2) == doctest::Approx(closed).epsilon(1e-12));
        CHECK(trace_mass_via_v(t.polytope) == doctest::Approx(closed).epsilon(1e-12));

        const Analysis s = analyze(fixtures::segment());
        CHECK(trace_mass(s.s, 2) == doctest::Approx(4 * r2 * kPi).epsilon(1e-12));
        CHECK(trace_mass_via_v(s.polytope) == doctest::Approx(4 * r2 * kPi).epsilon(1e-12));

        const Analysis point = analyze(fixtures::make(2, {{1, 1}}));
        CHECK(trace_mass(point.s, 2) == 0.0);
        CHECK(trace_mass_via_v(point.polytope) == 0.0);
    }

    TEST_CASE("S is translation invariant, positive semidefinite and weights balance") {
        std::mt19937_64 rng(53);
        std::uniform_int_distribution<Int> shift(-5, 5);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t n = 2 + trial % 2;
            const ExpPoly f = fixtures::random_poly(rng, n, 3 + trial % 6, 4);
            IntVec t(n);
            for (auto& x : t)
                x = shift(rng);
            const ShellArrangement sh = build_shell(f);
            const SMatrix a = s_matrix(sh);
            const SMatrix b = s_matrix(build_shell(f.translated(t)));
            CHECK(max_abs_diff(a.s, b.s) < 1e-12);
            if (a.eigenvalues.size())
                CHECK(a.eigenvalues.minCoeff() >= -1e-12);

            double lhs = 0.0, rhs = 0.0;
            for (const auto& h : sh.planes)
                lhs += h.weight * norm(h.beta);
            for (const auto& sp : sh.spectra)
                rhs += sp.gamma.value * static_cast<double>(sp.edge.lattice_length);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }

    TEST_CASE("positive definiteness follows the span of edge directions") {
        const SMatrix flat = s_matrix(build_shell(fixtures::make(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}})));
        CHECK_FALSE(flat.positive_definite);
        const SMatrix full = s_matrix(build_shell(fixtures::make(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})));
        CHECK(full.positive_definite);
        CHECK(full.det > 0.0);
    }
}
