#include "extrobin/ball.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "extrobin/errors.hpp"

namespace extrobin {

namespace {
constexpr int kMaxBisection = 200;
}

void BallProblem::validate() const {
    if (d < 2) throw DomainError("BallProblem: d must be >= 2, got " + std::to_string(d));
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("BallProblem: R must be positive");
    if (!(alpha <= 0.0)) throw DomainError("BallProblem: alpha must be <= 0");
}

double critical_coupling(int d, double R) {
    if (d < 2) throw DomainError("critical_coupling: d must be >= 2, got " + std::to_string(d));
    if (!(R > 0.0)) throw DomainError("critical_coupling: R must be positive");
    if (d == 2) return 0.0;
    return -(d - 2) / R;
}

BallSpectrum lambda1_ball(const BallProblem& problem, const EvalPolicy& policy) {
    problem.validate();
    BallSpectrum out;
    out.alpha_star = critical_coupling(problem.d, problem.R);
    if (problem.alpha >= out.alpha_star) return out;

    const Order order = Order::from_dimension(problem.d);
    const double target = -problem.alpha * problem.R;
    auto g = [&](double x) { return bessel_ratio_f(order, x, policy) - target; };

    // f(x) >= x puts the root in (0, target]; f(0+) = 2 nu < target below.
    double hi = target;
    double lo = std::numeric_limits<double>::min();
    double g_hi = g(hi);
    double g_lo = g(lo);
    out.is_discrete = true;
    if (g_lo >= 0.0) {
        // Root below the representable range (d = 2, tiny |alpha| R).
        out.k = 0.0;
        out.lambda1 = -0.0;
        return out;
    }
    if (g_hi < 0.0) throw InternalError("lambda1_ball: f(x) >= x bracket violated");

    int steps = 0;
    // Geometric bisection while the bracket spans many decades, then arithmetic.
    while (steps < kMaxBisection && hi > 2.0 * lo) {
        const double mid = std::sqrt(lo) * std::sqrt(hi);
        const double gm = g(mid);
        ++steps;
        if (gm < 0.0) {
            lo = mid;
            g_lo = gm;
        } else {
            hi = mid;
            g_hi = gm;
        }
    }
    while (steps < kMaxBisection) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        ++steps;
        if (gm < 0.0) {
            lo = mid;
            g_lo = gm;
        } else {
            hi = mid;
            g_hi = gm;
        }
    }
    const double root = std::abs(g_lo) < std::abs(g_hi) ? lo : hi;
    out.k = root / problem.R;
    out.lambda1 = -out.k * out.k;
    out.bisection_steps = steps;
    return out;
}

double radial_eigenfunction(const BallProblem& problem, const BallSpectrum& spectrum, double r,
                            const EvalPolicy& policy) {
    problem.validate();
    if (!spectrum.is_discrete)
        throw StateError("radial_eigenfunction: no discrete eigenvalue at this coupling");
    if (!(spectrum.k > 0.0))
        throw StateError("radial_eigenfunction: eigenvalue underflows double precision");
    if (!(r >= problem.R)) throw DomainError("radial_eigenfunction: r must be >= R");
    const Order order = Order::from_dimension(problem.d);
    const double k = spectrum.k;
    const double ratio = bessel_k_scaled(order, k * r, policy) /
                         bessel_k_scaled(order, k * problem.R, policy);
    return std::pow(problem.R / r, order.nu()) * ratio * std::exp(-k * (r - problem.R));
}

double asym_lambda(int d, double M_max, double alpha) {
    return -alpha * alpha - alpha * (d - 1) * M_max;
}

}  // namespace extrobin
