#include <doctest.h>

#include <cmath>
#include <vector>

#include "extrobin/ball.hpp"
#include "extrobin/errors.hpp"
#include "support/oracles.hpp"

using namespace extrobin;

namespace {

double oracle_f(double nu, double x) {
    return x * oracle::bessel_k_scaled(nu + 1, x) / oracle::bessel_k_scaled(nu, x);
}

}  // namespace

TEST_CASE("critical coupling") {
    CHECK(critical_coupling(2, 7.0) == 0.0);
    CHECK(critical_coupling(3, 1.0) == -1.0);
    CHECK(critical_coupling(5, 2.0) == -1.5);
    CHECK_THROWS_AS(critical_coupling(1, 1.0), DomainError);
    CHECK_THROWS_AS(critical_coupling(3, 0.0), DomainError);
}

TEST_CASE("at the threshold the spectrum is not discrete") {
    const auto s = lambda1_ball({3, 1.0, -1.0});
    CHECK(s.lambda1 == 0.0);
    CHECK_FALSE(s.is_discrete);
    CHECK(s.alpha_star == -1.0);
    CHECK_THROWS_AS(radial_eigenfunction({3, 1.0, -1.0}, s, 2.0), StateError);
}

TEST_CASE("d = 2, alpha = -1 against an oracle bisection") {
    double lo = 1e-6, hi = 1.0;  // f(x) >= x puts the root of f = 1 in (0, 1]
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (oracle_f(0.0, mid) < 1.0 ? lo : hi) = mid;
    }
    const double k_ref = 0.5 * (lo + hi);
    const auto s = lambda1_ball({2, 1.0, -1.0});
    CHECK(s.is_discrete);
    CHECK(s.k > 0.0);
    CHECK(s.k <= 1.0);
    CHECK(s.k == doctest::Approx(k_ref).epsilon(1e-9));
    CHECK(s.lambda1 == doctest::Approx(-k_ref * k_ref).epsilon(1e-9));
}

TEST_CASE("d = 3, alpha = -2 has a bound state") {
    const auto s = lambda1_ball({3, 1.0, -2.0});
    CHECK(s.is_discrete);
    CHECK(s.lambda1 < 0.0);
    // f(x) = 1 + x for nu = 1/2, so kR = -alpha R - 1 = 1.
    CHECK(s.k == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigenfunction normalization and Robin condition") {
    const BallProblem p{2, 1.0, -1.0};
    const auto s = lambda1_ball(p);
    CHECK(radial_eigenfunction(p, s, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    const double dpsi = oracle::forward_derivative([&](double r) { return radial_eigenfunction(p, s, r); }, 1.0, 1e-5);
    CHECK(std::abs(dpsi - p.alpha) / std::abs(p.alpha) < 1e-6);
    CHECK(radial_eigenfunction(p, s, 60.0) < 1e-10);
    CHECK_THROWS_AS(radial_eigenfunction(p, s, 0.5), DomainError);
}

TEST_CASE("radial ODE residual by spectral differentiation") {
    const BallProblem p{3, 1.0, -2.0};
    const auto s = lambda1_ball(p);
    const oracle::Chebyshev cheb(24, 1.5, 2.5);
    std::vector<double> psi(cheb.x.size());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = radial_eigenfunction(p, s, cheb.x[i]);
    auto flux = cheb.apply(psi);
    for (std::size_t i = 0; i < flux.size(); ++i) flux[i] *= cheb.x[i] * cheb.x[i];
    const auto dflux = cheb.apply(flux);
    const std::size_t mid = 12;  // x = 2
    REQUIRE(cheb.x[mid] == doctest::Approx(2.0));
    const double r = cheb.x[mid];
    const double residual = -dflux[mid] / (r * r) + s.k * s.k * psi[mid];
    CHECK(std::abs(residual) <= 1e-8);
}

TEST_CASE("random subcritical cases are self-consistent") {
    oracle::CaseGen gen(99);
    for (int i = 0; i < 50; ++i) {
        const int d = gen.integer(2, 8);
        const double R = gen.log_uniform(0.2, 5.0);
        const double alpha = critical_coupling(d, R) - gen.log_uniform(0.05, 20.0);
        CAPTURE(d);
        CAPTURE(R);
        CAPTURE(alpha);
        const BallProblem p{d, R, alpha};
        const auto s = lambda1_ball(p);
        REQUIRE(s.is_discrete);
        const Order nu = Order::from_dimension(d);
        CHECK(std::abs(bessel_ratio_f(nu, s.k * R) + alpha * R) <= 1e-10 * std::max(1.0, std::abs(alpha * R)));
        CHECK(std::abs(oracle_f(nu.nu(), s.k * R) + alpha * R) <= 1e-7 * std::max(1.0, std::abs(alpha * R)));
        CHECK(s.lambda1 == -s.k * s.k);
    }
}

TEST_CASE("monotone in alpha and continuous at the threshold") {
    for (int d : {2, 3, 4}) {
        double prev = -INFINITY;
        for (int i = 0; i <= 60; ++i) {
            const double alpha = -6.0 + 0.1 * i;
            const double l = lambda1_ball({d, 1.0, alpha}).lambda1;
            CHECK(l >= prev);
            prev = l;
        }
    }
    for (int d : {3, 4, 5}) {
        const double astar = critical_coupling(d, 1.0);
        // Approach rate depends on d (quadratic in d = 3, linear from d = 5 on).
        double prev = -INFINITY;
        for (int j = 1; j <= 6; ++j) {
            const double l = lambda1_ball({d, 1.0, astar - std::pow(10.0, -j)}).lambda1;
            CAPTURE(d);
            CAPTURE(j);
            CHECK(l < 0.0);
            CHECK(l > prev);
            prev = l;
        }
        CHECK(prev > -1e-5);
    }
}

TEST_CASE("strictly decreasing in R for d = 2") {
    double prev = 0.0;
    for (double R : {0.5, 1.0, 2.0, 4.0}) {
        const double l = lambda1_ball({2, R, -1.0}).lambda1;
        if (R > 0.5) CHECK(prev - l > 1e-10);
        prev = l;
    }
}

TEST_CASE("weak coupling in d = 2 stays discrete") {
    const auto s = lambda1_ball({2, 1.0, -0.01});
    CHECK(s.is_discrete);
    CHECK(s.lambda1 < 0.0);
    CHECK(s.lambda1 > -1e-80);
}

TEST_CASE("asymptotic predictor") {
    CHECK(asym_lambda(2, 1.0 / 3.0, -4.0) == doctest::Approx(-16.0 + 4.0 / 3.0));
    CHECK(asym_lambda(3, 2.0, -0.0) == 0.0);
    // The scaled remainder shrinks with |alpha|.
    double prev = INFINITY;
    for (double alpha : {-10.0, -20.0, -40.0, -80.0}) {
        const double rem = std::abs(lambda1_ball({2, 1.0, alpha}).lambda1 - asym_lambda(2, 1.0, alpha)) / -alpha;
        CHECK(rem < prev);
        prev = rem;
    }
}

TEST_CASE("invalid problems") {
    CHECK_THROWS_AS(lambda1_ball({1, 1.0, -1.0}), DomainError);
    CHECK_THROWS_AS(lambda1_ball({2, -1.0, -1.0}), DomainError);
    CHECK_THROWS_AS(lambda1_ball({2, 1.0, 0.5}), DomainError);
}
