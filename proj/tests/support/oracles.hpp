#pragma once

// Independent reference computations for the tests. Nothing here calls into the
// library's numerics; only plain formulas, Boost quadrature and finite differences.

#include <array>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

/// Seeded case generator. Every property test draws from one of these so a failing
/// case can be replayed from its seed.
class CaseGen {
public:
    explicit CaseGen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    /// log-uniform on [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    template <class T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<std::size_t>(integer(0, static_cast<int>(items.size()) - 1))];
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// e^x K_nu(x) = int_0^inf exp(-x (cosh t - 1)) cosh(nu t) dt.
inline double bessel_k_scaled(double nu, double x) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [nu, x](double t) {
        // x (cosh t - 1) = 2 x sinh^2(t/2) keeps precision for small t.
        const double s = std::sinh(0.5 * t);
        const double e = 2.0 * x * s * s;
        if (e > 745.0) return 0.0;
        return std::exp(e > 0 ? -e : 0.0) * std::cosh(nu * t);
    };
    return integrator.integrate(f, 1e-14);
}

inline double bessel_k(double nu, double x) { return std::exp(-x) * bessel_k_scaled(nu, x); }

/// int_0^{2 pi} |gamma'(theta)| dtheta for the ellipse (a cos, b sin), adaptive Gauss-Kronrod.
inline double ellipse_perimeter(double a, double b) {
    auto speed = [a, b](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(speed, 0.0, 2.0 * std::numbers::pi, 20,
                                                                          1e-14);
}

/// Derivative at x0 from the one-sided five-point stencil f(x0), ..., f(x0 + 4h).
inline double forward_derivative(const std::function<double(double)>& f, double x0, double h) {
    return (-25.0 * f(x0) + 48.0 * f(x0 + h) - 36.0 * f(x0 + 2 * h) + 16.0 * f(x0 + 3 * h) - 3.0 * f(x0 + 4 * h)) /
           (12.0 * h);
}

/// Fourth-order central difference.
inline double central_derivative(const std::function<double(double)>& f, double x0, double h) {
    return (f(x0 - 2 * h) - 8.0 * f(x0 - h) + 8.0 * f(x0 + h) - f(x0 + 2 * h)) / (12.0 * h);
}

/// Chebyshev points x_j = cos(pi j / n) mapped to [a, b] and the differentiation matrix.
struct Chebyshev {
    std::vector<double> x;
    std::vector<std::vector<double>> D;

    Chebyshev(int n, double a, double b) : x(n + 1), D(n + 1, std::vector<double>(n + 1, 0.0)) {
        std::vector<double> ref(n + 1), c(n + 1);
        for (int j = 0; j <= n; ++j) {
            ref[j] = std::cos(std::numbers::pi * j / n);
            c[j] = ((j == 0 || j == n) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0);
            x[j] = a + 0.5 * (b - a) * (1.0 - ref[j]);
        }
        // d/dx on [a, b] = -(2 / (b - a)) d/dref because x runs opposite to ref.
        const double scale = -2.0 / (b - a);
        for (int i = 0; i <= n; ++i) {
            double row = 0.0;
            for (int j = 0; j <= n; ++j) {
                if (i == j) continue;
                D[i][j] = scale * (c[i] / c[j]) / (ref[i] - ref[j]);
                row += D[i][j];
            }
            D[i][i] = -row;  // rows of D annihilate constants
        }
    }

    std::vector<double> apply(const std::vector<double>& f) const {
        std::vector<double> out(f.size(), 0.0);
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j) out[i] += D[i][j] * f[j];
        return out;
    }
};

/// Monte Carlo volume of the unit ball in R^d; the sphere area is d times this.
inline double unit_ball_volume_mc(int d, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    long inside = 0;
    for (int i = 0; i < samples; ++i) {
        double r2 = 0.0;
        for (int k = 0; k < d; ++k) {
            const double v = u(rng);
            r2 += v * v;
        }
        inside += r2 < 1.0;
    }
    return std::pow(2.0, d) * static_cast<double>(inside) / samples;
}

/// Principal curvatures of the profile (z(u), rho(u)) rotated about the z-axis, from
/// positions only: the unit normal is built from a differenced tangent and then
/// differenced again (Weingarten map along the meridian).
/// Returns {meridian, rotational} with the outward normal, so convex bodies are positive.
inline std::array<double, 2> weingarten_fd(const std::function<std::array<double, 2>(double)>& zr, double u) {
    const double h = 1e-4;
    auto tangent = [&](double v) {
        const double dz = central_derivative([&](double w) { return zr(w)[0]; }, v, h);
        const double dr = central_derivative([&](double w) { return zr(w)[1]; }, v, h);
        return std::array<double, 2>{dz, dr};
    };
    // Counterclockwise in (z, rho) as u runs 0 -> pi means the outward normal is (t_rho, -t_z)
    // for profiles starting on the positive z-axis; the sign is fixed by pointing away from the axis.
    auto normal = [&](double v) {
        const auto t = tangent(v);
        const double len = std::hypot(t[0], t[1]);
        std::array<double, 2> n{t[1] / len, -t[0] / len};
        const auto p = zr(v);
        if (n[0] * p[0] + n[1] * p[1] < 0) n = {-n[0], -n[1]};
        return n;
    };
    const double H = 1e-3;
    const auto t = tangent(u);
    const double speed = std::hypot(t[0], t[1]);
    const double dnz = central_derivative([&](double w) { return normal(w)[0]; }, u, H);
    const double dnr = central_derivative([&](double w) { return normal(w)[1]; }, u, H);
    // dn/du = kappa_m dgamma/du for the meridian direction.
    const double kappa_m = (dnz * t[0] + dnr * t[1]) / (speed * speed);
    const auto n = normal(u);
    const double kappa_rot = n[1] / zr(u)[1];
    return {kappa_m, kappa_rot};
}

}  // namespace oracle
