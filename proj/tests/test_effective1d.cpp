#include <doctest.h>

#include <cmath>
#include <numbers>

#include "extrobin/ball.hpp"
#include "extrobin/effective1d.hpp"
#include "extrobin/errors.hpp"
#include "support/oracles.hpp"

using namespace extrobin;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

MultiCurve2D unit_disks(int n) {
    std::vector<Curve2D> c;
    for (int i = 0; i < n; ++i) c.push_back(curves::circle(1.0, 3.0 * i, 0.0));
    return MultiCurve2D(std::move(c));
}

}  // namespace

TEST_CASE("weights from curves and bodies") {
    const auto w1 = weight_from_multicurve(unit_disks(1));
    CHECK(w1.coeffs[0] == doctest::Approx(2 * pi).epsilon(1e-13));
    CHECK(w1.coeffs[1] == doctest::Approx(2 * pi).epsilon(1e-13));
    CHECK(w1.w0 == doctest::Approx(2 * pi).epsilon(1e-13));
    const auto w2 = weight_from_multicurve(unit_disks(2));
    CHECK(w2.coeffs[0] == doctest::Approx(4 * pi).epsilon(1e-13));
    CHECK(w2.coeffs[1] == doctest::Approx(4 * pi).epsilon(1e-13));
    const auto w3 = weight_from_multicurve(MultiCurve2D({curves::circle(2.5)}));
    CHECK(w3(0.0) == doctest::Approx(5 * pi).epsilon(1e-13));
    const auto wb = weight_from_steiner(steiner_polynomial(bodies::sphere(3, 1.0)));
    CHECK(wb(1.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(wb.derivative(0.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("graded meshes") {
    const double beta = grading_exponent(1.05);
    const auto ref = graded_mesh(1.0, kGradingReferenceCells, beta);
    const double w0 = ref.nodes[1] - ref.nodes[0];
    const double w1 = ref.nodes[2] - ref.nodes[1];
    CHECK(w1 / w0 == doctest::Approx(1.05).epsilon(1e-12));
    const auto coarse = graded_mesh(3.0, 20, beta);
    const auto fine = graded_mesh(3.0, 40, beta);
    for (int i = 0; i <= 20; ++i) CHECK(fine.nodes[2 * i] == doctest::Approx(coarse.nodes[i]).epsilon(1e-14));
    CHECK(coarse.T() == 3.0);
    const auto ext = extend_mesh(coarse, 4.5);
    CHECK(ext.T() == doctest::Approx(4.5));
    for (int i = 0; i <= 20; ++i) CHECK(ext.nodes[i] == coarse.nodes[i]);
    const auto uniform = graded_mesh(2.0, 4, 0.0);
    CHECK(uniform.nodes[1] == doctest::Approx(0.5));
}

TEST_CASE("disk weight reproduces the ball") {
    const auto w = weight_from_multicurve(unit_disks(1));
    for (double alpha : {-0.5, -1.0, -3.0}) {
        const auto r = min_rayleigh(w, alpha);
        CAPTURE(alpha);
        CHECK(r.converged);
        CHECK(rel(r.lambda, lambda1_ball({2, 1.0, alpha}).lambda1) < 1e-5);
    }
}

TEST_CASE("ball weights in d = 2, 3, 4") {
    for (int d : {2, 3, 4}) {
        for (double R : {0.5, 1.0, 2.0}) {
            const double alpha = critical_coupling(d, R) - 1.5;
            const auto r = min_rayleigh(ball_weight(d, R), alpha);
            CAPTURE(d);
            CAPTURE(R);
            CHECK(rel(r.lambda, lambda1_ball({d, R, alpha}).lambda1) < 1e-5);
        }
    }
}

TEST_CASE("three separated disks give the one-disk value") {
    const double one = min_rayleigh(weight_from_multicurve(unit_disks(1)), -1.0).lambda;
    const double three = min_rayleigh(weight_from_multicurve(unit_disks(3)), -1.0).lambda;
    CHECK(rel(three, one) < 1e-10);
    CHECK(bound_thm1(unit_disks(3), -1.0) == bound_thm1(unit_disks(1), -1.0));
    CHECK(bound_thm1(unit_disks(1), -2.0) == lambda1_ball({2, 1.0, -2.0}).lambda1);
    const auto ellipse = MultiCurve2D({curves::ellipse_with_perimeter(1.5, 2 * pi)});
    CHECK(rel(bound_thm1(ellipse, -1.0), lambda1_ball({2, 1.0, -1.0}).lambda1) < 1e-12);
}

TEST_CASE("zero coupling sits at the essential bottom") {
    const auto w = weight_from_multicurve(unit_disks(1));
    const auto r = min_rayleigh(w, 0.0);
    CHECK(r.lambda == 0.0);
    CHECK(r.essential_bottom);
    double prev = INFINITY;
    for (double T : {2.0, 4.0, 8.0, 16.0}) {
        const double v = ritz_value(w, 0.0, graded_mesh(T, 200, 0.0));
        CHECK(v >= 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("trial-space nesting") {
    const auto w = ball_weight(3, 1.0);
    const double beta = grading_exponent(1.05);
    double prev = INFINITY;
    for (int n : {32, 64, 128, 256}) {
        const double v = ritz_value(w, -2.0, graded_mesh(8.0, n, beta));
        CHECK(v <= prev);
        prev = v;
    }
    auto mesh = graded_mesh(4.0, 64, beta);
    prev = ritz_value(w, -2.0, mesh);
    for (double T : {6.0, 9.0, 14.0}) {
        mesh = extend_mesh(mesh, T);
        const double v = ritz_value(w, -2.0, mesh);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("monotone in alpha") {
    oracle::CaseGen gen(41);
    for (int i = 0; i < 5; ++i) {
        const auto body = bodies::perturbed_sphere(3, static_cast<unsigned>(gen.integer(0, 500)));
        const auto w = weight_from_steiner(steiner_polynomial(body));
        double prev = -INFINITY;
        for (double alpha : {-5.0, -3.0, -2.0, -1.0, -0.5}) {
            const double v = min_rayleigh(w, alpha).lambda;
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("homothety scaling") {
    const EffectiveWeight w{{1.0, 1.3, 0.4}, 1.0};
    const double sigma = 1.7;
    const EffectiveWeight ws{{1.0, 1.3 * sigma, 0.4 * sigma * sigma}, 1.0};
    const double a = min_rayleigh(w, -2.0).lambda;
    const double b = min_rayleigh(ws, -2.0 * sigma).lambda;
    CHECK(rel(b, sigma * sigma * a) < 1e-7);
}

TEST_CASE("Steiner-weight bound on the sphere and on spheroids") {
    const auto s = bound_thm2(bodies::sphere(3, 1.0), -2.0);
    CHECK(s.bound == lambda1_ball({3, 1.0, -2.0}).lambda1);
    CHECK(rel(s.steiner.lambda, s.bound) < 1e-5);
    CHECK(s.chain_holds);
    for (double aspect : {0.5, 1.5, 2.5}) {
        const auto body = bodies::spheroid(3, aspect, 1.0);
        const auto normalized = body.scaled(scale_to_total_mean_curvature(axisym_curvatures(body), 1.0));
        const auto b = bound_thm2(normalized, -2.0);
        CHECK(b.R == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(b.steiner.lambda <= lambda1_ball({3, 1.0, -2.0}).lambda1 + 1e-6);
        CHECK(b.chain_holds);
    }
    // At or above the critical coupling both sides are 0.
    const auto weak = bound_thm2(bodies::sphere(3, 1.0), -0.5);
    CHECK(weak.bound == 0.0);
    CHECK(weak.steiner.lambda == 0.0);
}

TEST_CASE("invalid input") {
    CHECK_THROWS_AS(min_rayleigh(EffectiveWeight{{}, 1.0}, -1.0), DomainError);
    CHECK_THROWS_AS(min_rayleigh(EffectiveWeight{{1.0, -3.0}, 1.0}, -1.0), DomainError);
    CHECK_THROWS_AS(min_rayleigh(ball_weight(2, 1.0), 1.0), DomainError);
    TruncationConfig bad;
    bad.n = 4;
    CHECK_THROWS_AS(min_rayleigh(ball_weight(2, 1.0), -1.0, bad), DomainError);
    CHECK_THROWS_AS(bound_thm1(unit_disks(1), 0.0), DomainError);
}
