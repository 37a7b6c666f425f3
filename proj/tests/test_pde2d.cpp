#include <doctest.h>

#include <cmath>
#include <numbers>

#include "extrobin/ball.hpp"
#include "extrobin/errors.hpp"
#include "extrobin/pde2d.hpp"

using namespace extrobin;
using std::numbers::pi;

namespace {

GridConfig small_grid(double T = 6.0) {
    GridConfig g;
    g.n_s = 32;
    g.n_t = 60;
    g.T = T;
    return g;
}

double lowest(const Curve2D& c, double alpha, const GridConfig& g) {
    const auto pair = assemble(c, alpha, g);
    return lowest_eigenpair(pair, default_shift(pair.max_curvature, alpha)).lambda;
}

}  // namespace

TEST_CASE("metric factor") {
    const double beta = grading_exponent(1.05);
    const ParallelGrid disk(curves::circle(1.0), graded_mesh(4.0, 20, beta), 16);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j <= 20; ++j)
            CHECK(disk.metric_factor(i, j) == doctest::Approx(1.0 + disk.t_mesh().nodes[j]).epsilon(1e-12));
    }
    const ParallelGrid ellipse(curves::ellipse(2.0, 1.0), graded_mesh(4.0, 20, beta), 64);
    for (int i = 0; i < 64; ++i) CHECK(ellipse.metric_factor(i, 0) == 1.0);
    CHECK(ellipse.min_curvature() == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(ellipse.max_curvature() == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(ellipse.perimeter() == doctest::Approx(curve_metrics(curves::ellipse(2.0, 1.0)).perimeter));
}

TEST_CASE("assembled matrices are symmetric") {
    for (OuterBC bc : {OuterBC::dirichlet, OuterBC::neumann}) {
        auto g = small_grid();
        g.outer = bc;
        const auto pair = assemble(curves::ellipse(2.0, 1.0), -1.0, g);
        const Eigen::SparseMatrix<double> dA = pair.A - Eigen::SparseMatrix<double>(pair.A.transpose());
        const Eigen::SparseMatrix<double> dB = pair.B - Eigen::SparseMatrix<double>(pair.B.transpose());
        CHECK(dA.norm() == 0.0);
        CHECK(dB.norm() == 0.0);
        CHECK(pair.A.rows() == g.n_s * (bc == OuterBC::dirichlet ? g.n_t : g.n_t + 1));
    }
}

TEST_CASE("disk eigenvalue on a small grid") {
    const double exact = lambda1_ball({2, 1.0, -1.0}).lambda1;
    const double v = lowest(curves::circle(1.0), -1.0, small_grid(12.0));
    CHECK(std::abs(v - exact) / std::abs(exact) < 2e-2);
    CHECK(v >= exact - 1e-12);  // Galerkin upper bound
}

TEST_CASE("form monotonicity in alpha") {
    const auto c = curves::ellipse(1.5, 1.0);
    CHECK(lowest(c, -0.1, small_grid(30.0)) >= lowest(c, -1.0, small_grid(30.0)));
}

TEST_CASE("refining in t lowers the Dirichlet value") {
    const auto c = curves::circle(1.0);
    auto g = small_grid(8.0);
    const double coarse = lowest(c, -2.0, g);
    g.n_t *= 2;
    const double fine = lowest(c, -2.0, g);
    CHECK(fine <= coarse);
}

TEST_CASE("Neumann truncation is not above Dirichlet") {
    auto g = small_grid(6.0);
    const auto c = curves::ellipse(1.3, 1.0);
    const double dir = lowest(c, -1.0, g);
    g.outer = OuterBC::neumann;
    CHECK(lowest(c, -1.0, g) <= dir);
}

TEST_CASE("reflection symmetry of the eigenvector") {
    const auto c = curves::ellipse(2.0, 1.0);
    const auto g = small_grid(8.0);
    const auto pair = assemble(c, -1.0, g);
    const auto ep = lowest_eigenpair(pair, default_shift(pair.max_curvature, -1.0));
    // y -> -y maps arclength s to P - s.
    Eigen::VectorXd mirrored(ep.vector.size());
    for (int j = 0; j < pair.t_rows; ++j)
        for (int i = 0; i < g.n_s; ++i) mirrored[j * g.n_s + i] = ep.vector[j * g.n_s + (g.n_s - i) % g.n_s];
    const Eigen::VectorXd diff = ep.vector - mirrored;
    const double defect = std::sqrt(diff.dot(pair.B * diff));
    const double norm = std::sqrt(ep.vector.dot(pair.B * ep.vector));
    CHECK(defect / norm <= 1e-6);
    CHECK(ep.residual <= 1e-8);
}

TEST_CASE("a shift above the spectrum is recovered") {
    const auto pair = assemble(curves::circle(1.0), -1.0, small_grid(10.0));
    const auto ok = lowest_eigenpair(pair, default_shift(pair.max_curvature, -1.0));
    const auto retried = lowest_eigenpair(pair, ok.lambda + 0.05);
    CHECK(retried.lambda == doctest::Approx(ok.lambda).epsilon(1e-8));
}

TEST_CASE("PCG and LDLT agree") {
    const auto pair = assemble(curves::ellipse(1.4, 1.0), -1.0, small_grid(8.0));
    const double shift = default_shift(pair.max_curvature, -1.0);
    EigenSolverConfig pcg;
    pcg.solver = LinearSolver::pcg;
    CHECK(lowest_eigenpair(pair, shift, pcg).lambda ==
          doctest::Approx(lowest_eigenpair(pair, shift).lambda).epsilon(1e-8));
}

TEST_CASE("validation ladder") {
    ValidationConfig cfg;
    cfg.n_s = 64;
    cfg.n_t = 100;
    const auto r = lambda1_exterior_2d(curves::circle(1.0), -1.0, cfg);
    REQUIRE(r.refinement_table.size() == 4);
    const double exact = lambda1_ball({2, 1.0, -1.0}).lambda1;
    CHECK(std::abs(r.lambda_dirichlet - exact) / std::abs(exact) < 1e-3);
    CHECK(r.lambda_neumann <= r.refinement_table[1].lambda);
    CHECK(r.refinement_table[1].lambda <= r.refinement_table[0].lambda);
    CHECK(r.refinement_table[2].lambda <= r.refinement_table[1].lambda);
    CHECK(std::abs(r.lambda_dirichlet - exact) <= 5e-3);
    const auto csv = refinement_csv(r);
    CHECK(csv.rfind("n_s,n_t,T,outer_bc,lambda,residual,iterations\n", 0) == 0);
}

TEST_CASE("non-convex curves are rejected") {
    CHECK_THROWS_AS(assemble(curves::star(1.0, 0.3, 5), -1.0, small_grid()), ConvexityError);
    CHECK_THROWS_AS(lambda1_exterior_2d(curves::star(1.0, 0.3, 5), -1.0), ConvexityError);
}
