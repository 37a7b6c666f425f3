#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

namespace extrobin {

// ---------------------------------------------------------------------------
// Planar curves
// ---------------------------------------------------------------------------

/// c(theta) = mean + sum_{m>=1} cos_coeffs[m-1] cos(m theta) + sin_coeffs[m-1] sin(m theta)
struct FourierSeries {
    double mean = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    std::size_t degree() const noexcept { return std::max(cos_coeffs.size(), sin_coeffs.size()); }
    double value(double theta) const;
    double derivative(double theta, int order) const;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Smooth closed curve theta in [0, 2 pi) -> (x, y), band-limited.
///
/// Construction checks regularity and simplicity and flips the parameter so the
/// curve runs counterclockwise. Curvature follows the outward-normal convention:
/// kappa >= 0 on convex curves and the total curvature is +2 pi.
class Curve2D {
public:
    Curve2D(FourierSeries x, FourierSeries y, int n_quad = 1024);

    const FourierSeries& x_series() const noexcept { return x_; }
    const FourierSeries& y_series() const noexcept { return y_; }
    int n_quad() const noexcept { return n_quad_; }

    Point2 point(double theta) const;
    Point2 tangent(double theta) const;  // d/dtheta, not normalized
    double speed(double theta) const;
    double curvature(double theta) const;

    double perimeter() const noexcept { return perimeter_; }
    /// Parameter theta at arclength s measured from theta = 0 (s taken modulo the perimeter).
    double theta_at_arclength(double s) const;
    double arclength_at_theta(double theta) const;

    /// Closed polyline with n vertices at uniform theta.
    std::vector<Point2> polyline(int n) const;

    Curve2D scaled(double factor) const;
    Curve2D translated(double dx, double dy) const;

private:
    FourierSeries x_;
    FourierSeries y_;
    int n_quad_;
    double perimeter_ = 0.0;
    FourierSeries speed_;  // |gamma'(theta)| for the arclength map
};

struct CurveMetrics {
    double perimeter = 0.0;
    double enclosed_area = 0.0;
    std::vector<double> curvature_samples;  // at theta_i = 2 pi i / n_quad
    double total_curvature = 0.0;
    double min_curvature = 0.0;
    double max_curvature = 0.0;
};

CurveMetrics curve_metrics(const Curve2D& curve);

/// Finite union of planar curves with pairwise disjoint closures.
class MultiCurve2D {
public:
    explicit MultiCurve2D(std::vector<Curve2D> components);

    const std::vector<Curve2D>& components() const noexcept { return components_; }
    std::size_t count() const noexcept { return components_.size(); }
    double total_perimeter() const;

private:
    std::vector<Curve2D> components_;
};

/// |boundary| / N.
double multicurve_constraint(const MultiCurve2D& mc);

namespace curves {
Curve2D circle(double radius, double cx = 0.0, double cy = 0.0, int n_quad = 1024);
Curve2D ellipse(double a, double b, double cx = 0.0, double cy = 0.0, double rotation = 0.0,
                int n_quad = 1024);
/// Ellipse with semi-axis ratio a/b = aspect scaled to the given perimeter.
Curve2D ellipse_with_perimeter(double aspect, double perimeter, int n_quad = 1024);
/// Polar star r(theta) = R (1 + eps cos(m theta)).
Curve2D star(double radius, double eps, int m, double cx = 0.0, double cy = 0.0,
             int n_quad = 1024);
/// Strictly convex band-limited approximation of the stadium with straight sides of
/// length 2 half_length and caps of radius cap_radius (Jackson-kernel smoothing of the
/// support function; `modes` is the Fourier degree of the coordinates).
Curve2D stadium(double half_length, double cap_radius, int modes = 128, double cx = 0.0,
                double cy = 0.0, int n_quad = 1024);
}  // namespace curves

// ---------------------------------------------------------------------------
// Convex bodies of revolution in R^d, d >= 3
// ---------------------------------------------------------------------------

/// Body of revolution about the z-axis in R^d generated by the profile
/// u in [0, pi] -> (z(u), rho(u)) with
///   z(u)   = sum_{m>=0} z_cos[m] cos(m u),
///   rho(u) = sum_{m>=0} rho_sin[m] sin((m + 1) u).
/// The cosine/sine basis makes the hypersurface smooth where it meets the axis.
class AxisymBody {
public:
    AxisymBody(int d, std::vector<double> z_cos, std::vector<double> rho_sin, int n_quad = 512);

    int d() const noexcept { return d_; }
    int n_quad() const noexcept { return n_quad_; }
    const std::vector<double>& z_cos() const noexcept { return z_cos_; }
    const std::vector<double>& rho_sin() const noexcept { return rho_sin_; }

    /// (z, rho, z', rho', z'', rho'') at u.
    std::array<double, 6> profile(double u) const;
    /// Meridian curvature and the (d-2)-fold rotational curvature at u.
    std::array<double, 2> principal_curvatures(double u) const;

    AxisymBody scaled(double factor) const;

private:
    int d_;
    std::vector<double> z_cos_;
    std::vector<double> rho_sin_;
    int n_quad_;
};

struct CurvatureReport {
    int d = 3;
    double area = 0.0;
    std::vector<double> sample_u;                 // profile parameter of each sample
    std::vector<double> kappa_meridian;           // per sample
    std::vector<double> kappa_rotational;         // per sample, multiplicity d - 2
    std::vector<std::vector<double>> Mj_samples;  // [j][sample], j = 0..d-1
    std::vector<double> Mj_avg;                   // j = 0..d-1, Mj_avg[0] = 1
    double M_total = 0.0;                         // boundary average of M^{d-1}
    double M_min = 0.0;
    double M_max = 0.0;
};

CurvatureReport axisym_curvatures(const AxisymBody& body);

/// P(t) = sum_j coeffs[j] t^j.
struct SteinerPolynomial {
    int d = 3;
    std::vector<double> coeffs;

    double operator()(double t) const;
};

SteinerPolynomial steiner_polynomial(const CurvatureReport& report);
SteinerPolynomial steiner_polynomial(const AxisymBody& body);
/// (1 + t / R)^{d-1}, the Steiner-type polynomial of the ball.
SteinerPolynomial ball_steiner_polynomial(int d, double R);

struct CurvatureMargins {
    std::vector<double> maclaurin;  // j = 1..d-1: min over samples of M^j - M_j
    std::vector<double> jensen;     // j = 1..d-2: Mtot^{j/(d-1)} - Mj_avg
    double alexandrov_fenchel = 0.0;  // Mj_avg[1] - (s_d / area)^{1/(d-1)}

    double min_margin() const;
};

CurvatureMargins check_curvature_inequalities(const CurvatureReport& report);
CurvatureMargins check_curvature_inequalities(const AxisymBody& body);

/// Homothety factor that brings the boundary average of M^{d-1} to the target.
double scale_to_total_mean_curvature(const CurvatureReport& report, double target);

namespace bodies {
AxisymBody sphere(int d, double radius, int n_quad = 512);
/// z = a cos u, rho = b sin u.
AxisymBody spheroid(int d, double a, double b, int n_quad = 512);
/// Sphere with seeded small smooth perturbations of the profile, rejected until convex.
AxisymBody perturbed_sphere(int d, unsigned seed, double amplitude = 0.05, int modes = 4,
                            int n_quad = 512);
}  // namespace bodies

}  // namespace extrobin
