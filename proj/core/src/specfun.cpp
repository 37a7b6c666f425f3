#include "extrobin/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "extrobin/errors.hpp"

namespace extrobin {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

double term_tolerance(const EvalPolicy& policy) {
    return std::max(std::numeric_limits<double>::epsilon(), policy.rel_tol * 1e-3);
}

void require_positive(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(fn) + ": argument must be positive and finite, got " +
                          std::to_string(x));
}

// K_0 and x K_1 / K_0 for integer orders.
struct IntegerSeed {
    double k0_scaled;  // e^x K_0(x)
    double f0;         // x K_1(x) / K_0(x)
};

// Temme's series, x <= 2 (order 0, so the gamma-ratio coefficients are exact constants).
IntegerSeed temme_series(double x, const EvalPolicy& policy) {
    const double tol = term_tolerance(policy);
    const double half_x = 0.5 * x;
    double ff = -std::log(half_x) - kEulerGamma;
    double p = 0.5;
    double q = 0.5;
    double c = 1.0;
    const double d = half_x * half_x;
    double sum = ff;
    double sum1 = p;
    bool converged = false;
    for (int i = 1; i <= policy.max_terms; ++i) {
        const double di = i;
        ff = (di * ff + p + q) / (di * di);
        c *= d / di;
        p /= di;
        q /= di;
        const double del = c * ff;
        sum += del;
        sum1 += c * (p - di * ff);
        if (std::abs(del) < std::abs(sum) * tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw AccuracyError("bessel_k: Temme series did not converge", sum);
    // K_1 = 2 sum1 / x, so x K_1 / K_0 = 2 sum1 / sum.
    return {sum * std::exp(x), 2.0 * sum1 / sum};
}

// Steed's continued fraction CF2, x > 2.
IntegerSeed steed_cf2(double x, const EvalPolicy& policy) {
    const double tol = term_tolerance(policy);
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    bool converged = false;
    for (int i = 2; i <= policy.max_terms; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < tol) {
            converged = true;
            break;
        }
    }
    const double k0_scaled = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    if (!converged)
        throw AccuracyError("bessel_k: continued fraction did not converge", k0_scaled);
    h *= a1;
    return {k0_scaled, x + 0.5 - h};
}

IntegerSeed integer_seed(double x, const EvalPolicy& policy) {
    return x <= 2.0 ? temme_series(x, policy) : steed_cf2(x, policy);
}

// Coefficients a_{n,k} = (n+k)! / (k! (n-k)!) of
// K_{n+1/2}(x) = sqrt(pi/(2x)) e^{-x} sum_k a_{n,k} (2x)^{-k}.
std::vector<double> half_integer_coeffs(int n) {
    std::vector<double> a(n + 1);
    a[0] = 1.0;
    for (int k = 0; k < n; ++k) a[k + 1] = a[k] * (n + k + 1) * (n - k) / (k + 1.0);
    return a;
}

// sum_k a_{n,k} y^k
double poly_in_inverse(int n, double y) {
    const auto a = half_integer_coeffs(n);
    double acc = 0.0;
    for (int k = n; k >= 0; --k) acc = acc * y + a[k];
    return acc;
}

// sum_k a_{n,k} z^{n-k} = z^n * poly_in_inverse(n, 1/z), safe at small z.
double poly_in_forward(int n, double z) {
    const auto a = half_integer_coeffs(n);
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) acc = acc * z + a[k];
    return acc;
}

}  // namespace

Order::Order(double nu) {
    if (!(nu >= 0.0) || nu > max_nu)
        throw DomainError("Order: nu must lie in [0, 20], got " + std::to_string(nu));
    const double twice = 2.0 * nu;
    if (std::abs(twice - std::round(twice)) > 1e-12)
        throw DomainError("Order: only integer and half-integer orders are supported, got " +
                          std::to_string(nu));
    twice_ = static_cast<int>(std::lround(twice));
}

Order Order::from_dimension(int d) {
    if (d < 2) throw DomainError("Order::from_dimension: d must be >= 2");
    return Order(0.5 * (d - 2));
}

void EvalPolicy::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw DomainError("EvalPolicy: tolerances must be positive");
    if (max_terms < 1) throw DomainError("EvalPolicy: max_terms must be >= 1");
    if (quadrature_nodes < 1) throw DomainError("EvalPolicy: quadrature_nodes must be >= 1");
}

double sphere_area(int d) {
    if (d < 1) throw DomainError("sphere_area: d must be >= 1, got " + std::to_string(d));
    const double half = 0.5 * d;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double bessel_ratio_f(Order order, double x, const EvalPolicy& policy) {
    require_positive(x, "bessel_ratio_f");
    policy.validate();
    if (order.is_half_integer()) {
        const int n = (order.twice() - 1) / 2;
        if (x >= 1.0) {
            const double y = 0.5 / x;
            return x * poly_in_inverse(n + 1, y) / poly_in_inverse(n, y);
        }
        const double z = 2.0 * x;
        return poly_in_forward(n + 1, z) / (2.0 * poly_in_forward(n, z));
    }
    // f_j = x K_{j+1} / K_j obeys f_j = x^2 / f_{j-1} + 2j.
    const int n = order.twice() / 2;
    double f = integer_seed(x, policy).f0;
    for (int j = 1; j <= n; ++j) f = x * x / f + 2.0 * j;
    return f;
}

double bessel_k_ratio(Order order, double x, const EvalPolicy& policy) {
    return bessel_ratio_f(order, x, policy) / x;
}

double bessel_k_scaled(Order order, double x, const EvalPolicy& policy) {
    require_positive(x, "bessel_k_scaled");
    policy.validate();
    if (order.is_half_integer()) {
        const int n = (order.twice() - 1) / 2;
        return std::sqrt(std::numbers::pi / (2.0 * x)) * poly_in_inverse(n, 0.5 / x);
    }
    const int n = order.twice() / 2;
    const IntegerSeed seed = integer_seed(x, policy);
    double value = seed.k0_scaled;
    double f = seed.f0;
    for (int j = 0; j < n; ++j) {
        value *= f / x;  // K_{j+1} = K_j * f_j / x
        f = x * x / f + 2.0 * (j + 1);
    }
    return value;
}

double bessel_k(Order order, double x, const EvalPolicy& policy) {
    const double scaled = bessel_k_scaled(order, x, policy);
    return scaled * std::exp(-x);
}

}  // namespace extrobin
