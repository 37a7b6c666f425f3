#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "extrobin/errors.hpp"
#include "extrobin/geometry.hpp"
#include "extrobin/quadrature.hpp"
#include "extrobin/specfun.hpp"

namespace extrobin {

namespace {

constexpr double kConvexityTol = 1e-10;
constexpr double kPoleWindow = 1e-7;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Coefficients of (1 + t k_m)(1 + t k_r)^{d-2}, i.e. the elementary symmetric
// polynomials of the principal curvatures.
std::vector<double> elementary_symmetric(int d, double k_meridian, double k_rot) {
    std::vector<double> e(static_cast<std::size_t>(d), 0.0);
    e[0] = 1.0;
    int deg = 0;
    auto multiply = [&](double k) {
        for (int j = deg + 1; j >= 1; --j) e[j] += k * e[j - 1];
        ++deg;
    };
    multiply(k_meridian);
    for (int i = 0; i < d - 2; ++i) multiply(k_rot);
    return e;
}

}  // namespace

AxisymBody::AxisymBody(int d, std::vector<double> z_cos, std::vector<double> rho_sin, int n_quad)
    : d_(d), z_cos_(std::move(z_cos)), rho_sin_(std::move(rho_sin)), n_quad_(n_quad) {
    if (d_ < 3) throw DomainError("AxisymBody: d must be >= 3, got " + std::to_string(d_));
    if (n_quad_ < 8) throw DomainError("AxisymBody: n_quad must be >= 8");
    if (rho_sin_.empty()) throw GeometryError("AxisymBody: empty radial profile");
    // Orient from the north pole (larger z) to the south pole so the normal points outward.
    if (profile(0.0)[0] < profile(std::numbers::pi)[0])
        for (double& a : z_cos_) a = -a;

    for (double u : {0.0, std::numbers::pi}) {
        const auto p = profile(u);
        if (!(std::hypot(p[2], p[3]) > 1e-12))
            throw GeometryError("AxisymBody: profile degenerates at a pole");
    }
    const int checks = 4 * n_quad_;
    for (int i = 1; i < checks; ++i) {
        const double u = std::numbers::pi * i / checks;
        const auto p = profile(u);
        if (!(p[1] > 0.0))
            throw GeometryError("AxisymBody: profile touches the axis away from the poles");
        if (!(std::hypot(p[2], p[3]) > 1e-12))
            throw GeometryError("AxisymBody: irregular profile parametrization");
    }
}

std::array<double, 6> AxisymBody::profile(double u) const {
    std::array<double, 6> p{};
    for (std::size_t m = 0; m < z_cos_.size(); ++m) {
        const double fm = static_cast<double>(m);
        const double c = std::cos(fm * u);
        const double s = std::sin(fm * u);
        p[0] += z_cos_[m] * c;
        p[2] -= z_cos_[m] * fm * s;
        p[4] -= z_cos_[m] * fm * fm * c;
    }
    for (std::size_t i = 0; i < rho_sin_.size(); ++i) {
        const double fm = static_cast<double>(i + 1);
        const double c = std::cos(fm * u);
        const double s = std::sin(fm * u);
        p[1] += rho_sin_[i] * s;
        p[3] += rho_sin_[i] * fm * c;
        p[5] -= rho_sin_[i] * fm * fm * s;
    }
    return p;
}

std::array<double, 2> AxisymBody::principal_curvatures(double u) const {
    const auto [z, rho, dz, drho, ddz, ddrho] = profile(u);
    (void)z;
    const double speed = std::hypot(dz, drho);
    const double k_meridian = (ddrho * dz - ddz * drho) / (speed * speed * speed);
    // On the axis the rotational curvature equals the meridian one.
    if (u < kPoleWindow || std::numbers::pi - u < kPoleWindow) return {k_meridian, k_meridian};
    const double k_rot = -dz / (speed * rho);
    return {k_meridian, k_rot};
}

AxisymBody AxisymBody::scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("AxisymBody::scaled: factor must be positive");
    auto z = z_cos_;
    auto r = rho_sin_;
    for (double& a : z) a *= factor;
    for (double& b : r) b *= factor;
    return AxisymBody(d_, std::move(z), std::move(r), n_quad_);
}

CurvatureReport axisym_curvatures(const AxisymBody& body) {
    const int d = body.d();
    const QuadratureRule rule = gauss_legendre(body.n_quad(), 0.0, std::numbers::pi);
    const double s_fiber = sphere_area(d - 1);

    CurvatureReport rep;
    rep.d = d;
    rep.Mj_samples.assign(static_cast<std::size_t>(d), {});
    rep.Mj_avg.assign(static_cast<std::size_t>(d), 0.0);
    rep.M_min = std::numeric_limits<double>::infinity();
    rep.M_max = -std::numeric_limits<double>::infinity();

    std::vector<double> Mj_integral(static_cast<std::size_t>(d), 0.0);
    double M_power_integral = 0.0;

    auto sample = [&](double u, double weight) {
        const auto [k_m, k_r] = body.principal_curvatures(u);
        if (k_m < -kConvexityTol || k_r < -kConvexityTol)
            throw ConvexityError("axisym_curvatures: negative principal curvature at u = " +
                                 std::to_string(u));
        const auto e = elementary_symmetric(d, k_m, k_r);
        std::vector<double> Mj(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) Mj[j] = e[j] / binomial(d - 1, j);
        const double M = Mj[1];
        rep.M_min = std::min(rep.M_min, M);
        rep.M_max = std::max(rep.M_max, M);
        if (weight > 0.0) {
            rep.sample_u.push_back(u);
            rep.kappa_meridian.push_back(k_m);
            rep.kappa_rotational.push_back(k_r);
            for (int j = 0; j < d; ++j) {
                rep.Mj_samples[j].push_back(Mj[j]);
                Mj_integral[j] += weight * Mj[j];
            }
            M_power_integral += weight * std::pow(M, d - 1);
        }
    };

    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double u = rule.nodes[i];
        const auto p = body.profile(u);
        const double dA = s_fiber * std::pow(p[1], d - 2) * std::hypot(p[2], p[3]) * rule.weights[i];
        rep.area += dA;
        sample(u, dA);
    }
    sample(0.0, 0.0);
    sample(std::numbers::pi, 0.0);

    for (int j = 0; j < d; ++j) rep.Mj_avg[j] = Mj_integral[j] / rep.area;
    rep.Mj_avg[0] = 1.0;
    rep.M_total = M_power_integral / rep.area;
    return rep;
}

double SteinerPolynomial::operator()(double t) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

SteinerPolynomial steiner_polynomial(const CurvatureReport& report) {
    const int d = report.d;
    SteinerPolynomial p;
    p.d = d;
    p.coeffs.assign(static_cast<std::size_t>(d), 0.0);
    p.coeffs[0] = 1.0;
    for (int j = 1; j <= d - 2; ++j) p.coeffs[j] = binomial(d - 1, j) * report.Mj_avg[j];
    p.coeffs[d - 1] = sphere_area(d) / report.area;
    return p;
}

SteinerPolynomial steiner_polynomial(const AxisymBody& body) {
    return steiner_polynomial(axisym_curvatures(body));
}

SteinerPolynomial ball_steiner_polynomial(int d, double R) {
    if (d < 2) throw DomainError("ball_steiner_polynomial: d must be >= 2");
    if (!(R > 0.0)) throw DomainError("ball_steiner_polynomial: R must be positive");
    SteinerPolynomial p;
    p.d = d;
    p.coeffs.resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) p.coeffs[j] = binomial(d - 1, j) * std::pow(R, -j);
    return p;
}

double CurvatureMargins::min_margin() const {
    double m = alexandrov_fenchel;
    for (double v : maclaurin) m = std::min(m, v);
    for (double v : jensen) m = std::min(m, v);
    return m;
}

CurvatureMargins check_curvature_inequalities(const CurvatureReport& report) {
    const int d = report.d;
    CurvatureMargins out;
    for (int j = 1; j <= d - 1; ++j) {
        double worst = std::numeric_limits<double>::infinity();
        const auto& Mj = report.Mj_samples[j];
        const auto& M = report.Mj_samples[1];
        for (std::size_t i = 0; i < Mj.size(); ++i) worst = std::min(worst, std::pow(M[i], j) - Mj[i]);
        out.maclaurin.push_back(worst);
    }
    for (int j = 1; j <= d - 2; ++j)
        out.jensen.push_back(std::pow(report.M_total, static_cast<double>(j) / (d - 1)) -
                             report.Mj_avg[j]);
    out.alexandrov_fenchel =
        report.Mj_avg[1] - std::pow(sphere_area(d) / report.area, 1.0 / (d - 1));
    return out;
}

CurvatureMargins check_curvature_inequalities(const AxisymBody& body) {
    return check_curvature_inequalities(axisym_curvatures(body));
}

double scale_to_total_mean_curvature(const CurvatureReport& report, double target) {
    if (!(target > 0.0)) throw DomainError("scale_to_total_mean_curvature: target must be positive");
    return std::pow(report.M_total / target, 1.0 / (report.d - 1));
}

namespace bodies {

AxisymBody sphere(int d, double radius, int n_quad) { return spheroid(d, radius, radius, n_quad); }

AxisymBody spheroid(int d, double a, double b, int n_quad) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("spheroid: semi-axes must be positive");
    return AxisymBody(d, {0.0, a}, {b}, n_quad);
}

AxisymBody perturbed_sphere(int d, unsigned seed, double amplitude, int modes, int n_quad) {
    if (modes < 2) throw DomainError("perturbed_sphere: modes must be >= 2");
    std::mt19937 gen(seed);
    auto uniform = [&gen] { return 2.0 * (static_cast<double>(gen()) / 4294967296.0) - 1.0; };
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<double> z(static_cast<std::size_t>(modes) + 1, 0.0);
        std::vector<double> r(static_cast<std::size_t>(modes), 0.0);
        z[1] = 1.0;
        r[0] = 1.0;
        for (int m = 2; m <= modes; ++m) {
            z[m] = amplitude * uniform() / (m * m);
            r[m - 1] = amplitude * uniform() / (m * m);
        }
        try {
            AxisymBody body(d, z, r, n_quad);
            axisym_curvatures(body);
            return body;
        } catch (const GeometryError&) {
            continue;
        }
    }
    throw GeometryError("perturbed_sphere: no convex draw found; lower the amplitude");
}

}  // namespace bodies

}  // namespace extrobin
