#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "extrobin/errors.hpp"
#include "extrobin/geometry.hpp"

namespace extrobin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kSimplicityVertices = 512;
constexpr double kMinSpeed = 1e-12;

double coeff(const std::vector<double>& c, std::size_t m) { return m < c.size() ? c[m] : 0.0; }

double cross(Point2 a, Point2 b, Point2 c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
    const double d1 = cross(q1, q2, p1);
    const double d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1);
    const double d4 = cross(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on_segment = [](Point2 a, Point2 b, Point2 c) {
        return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
               c.y <= std::max(a.y, b.y);
    };
    if (d1 == 0 && on_segment(q1, q2, p1)) return true;
    if (d2 == 0 && on_segment(q1, q2, p2)) return true;
    if (d3 == 0 && on_segment(p1, p2, q1)) return true;
    if (d4 == 0 && on_segment(p1, p2, q2)) return true;
    return false;
}

bool point_in_polygon(const std::vector<Point2>& poly, Point2 p) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2 a = poly[i];
        const Point2 b = poly[j];
        if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
            inside = !inside;
    }
    return inside;
}

bool polylines_cross(const std::vector<Point2>& a, const std::vector<Point2>& b) {
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            if (segments_intersect(a[i], a[(i + 1) % na], b[j], b[(j + 1) % nb])) return true;
    return false;
}

// Fourier coefficients of periodic samples f_i = f(2 pi i / n) up to degree n/2 - 1.
FourierSeries fourier_fit(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    std::vector<double> cos_table(n), sin_table(n);
    for (std::size_t i = 0; i < n; ++i) {
        cos_table[i] = std::cos(kTwoPi * i / n);
        sin_table[i] = std::sin(kTwoPi * i / n);
    }
    FourierSeries out;
    double mean = 0.0;
    for (double s : samples) mean += s;
    out.mean = mean / n;
    const std::size_t degree = n / 2 - 1;
    out.cos_coeffs.resize(degree);
    out.sin_coeffs.resize(degree);
    for (std::size_t m = 1; m <= degree; ++m) {
        double a = 0.0;
        double b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t idx = (m * i) % n;
            a += samples[i] * cos_table[idx];
            b += samples[i] * sin_table[idx];
        }
        out.cos_coeffs[m - 1] = 2.0 * a / n;
        out.sin_coeffs[m - 1] = 2.0 * b / n;
    }
    // Drop the tail below round-off.
    const double floor = 1e-17 * (std::abs(out.mean) + 1.0);
    std::size_t keep = degree;
    while (keep > 0 && std::abs(out.cos_coeffs[keep - 1]) < floor &&
           std::abs(out.sin_coeffs[keep - 1]) < floor)
        --keep;
    out.cos_coeffs.resize(keep);
    out.sin_coeffs.resize(keep);
    return out;
}

FourierSeries scaled_series(const FourierSeries& s, double factor, double shift) {
    FourierSeries out = s;
    out.mean = s.mean * factor + shift;
    for (double& c : out.cos_coeffs) c *= factor;
    for (double& c : out.sin_coeffs) c *= factor;
    return out;
}

void add_term(FourierSeries& s, int m, double cos_part, double sin_part) {
    if (m == 0) {
        s.mean += cos_part;
        return;
    }
    const auto idx = static_cast<std::size_t>(m - 1);
    if (s.cos_coeffs.size() <= idx) s.cos_coeffs.resize(idx + 1, 0.0);
    if (s.sin_coeffs.size() <= idx) s.sin_coeffs.resize(idx + 1, 0.0);
    s.cos_coeffs[idx] += cos_part;
    s.sin_coeffs[idx] += sin_part;
}

}  // namespace

double FourierSeries::value(double theta) const { return derivative(theta, 0); }

double FourierSeries::derivative(double theta, int order) const {
    double acc = order == 0 ? mean : 0.0;
    const std::size_t n = degree();
    for (std::size_t k = 1; k <= n; ++k) {
        const double m = static_cast<double>(k);
        const double a = coeff(cos_coeffs, k - 1);
        const double b = coeff(sin_coeffs, k - 1);
        if (a == 0.0 && b == 0.0) continue;
        const double c = std::cos(m * theta);
        const double s = std::sin(m * theta);
        switch (order) {
            case 0: acc += a * c + b * s; break;
            case 1: acc += m * (-a * s + b * c); break;
            case 2: acc += m * m * (-a * c - b * s); break;
            case 3: acc += m * m * m * (a * s - b * c); break;
            default: throw DomainError("FourierSeries::derivative: order must be 0..3");
        }
    }
    return acc;
}

Curve2D::Curve2D(FourierSeries x, FourierSeries y, int n_quad)
    : x_(std::move(x)), y_(std::move(y)), n_quad_(n_quad) {
    if (n_quad_ < 16) throw DomainError("Curve2D: n_quad must be >= 16");
    if (x_.degree() == 0 || y_.degree() == 0)
        throw GeometryError("Curve2D: constant coordinate, not a closed curve");

    // Orientation: flip theta -> -theta when the signed area is negative.
    double signed_area = 0.0;
    for (int i = 0; i < n_quad_; ++i) {
        const double t = kTwoPi * i / n_quad_;
        signed_area += x_.value(t) * y_.derivative(t, 1) - y_.value(t) * x_.derivative(t, 1);
    }
    if (signed_area < 0.0) {
        for (double& b : x_.sin_coeffs) b = -b;
        for (double& b : y_.sin_coeffs) b = -b;
    }

    std::vector<double> speeds(static_cast<std::size_t>(n_quad_));
    for (int i = 0; i < n_quad_; ++i) {
        const double sp = speed(kTwoPi * i / n_quad_);
        if (!(sp >= kMinSpeed))
            throw GeometryError("Curve2D: irregular parametrization (|tangent| < 1e-12) at theta = " +
                                std::to_string(kTwoPi * i / n_quad_));
        speeds[static_cast<std::size_t>(i)] = sp;
    }
    speed_ = fourier_fit(speeds);
    perimeter_ = kTwoPi * speed_.mean;

    const auto poly = polyline(kSimplicityVertices);
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // adjacent through the seam
            if (segments_intersect(poly[i], poly[i + 1], poly[j], poly[(j + 1) % n]))
                throw GeometryError("Curve2D: self-intersection detected");
        }
    }
}

Point2 Curve2D::point(double theta) const { return {x_.value(theta), y_.value(theta)}; }

Point2 Curve2D::tangent(double theta) const {
    return {x_.derivative(theta, 1), y_.derivative(theta, 1)};
}

double Curve2D::speed(double theta) const {
    const Point2 t = tangent(theta);
    return std::hypot(t.x, t.y);
}

double Curve2D::curvature(double theta) const {
    const double dx = x_.derivative(theta, 1);
    const double dy = y_.derivative(theta, 1);
    const double ddx = x_.derivative(theta, 2);
    const double ddy = y_.derivative(theta, 2);
    const double sp = std::hypot(dx, dy);
    return (dx * ddy - dy * ddx) / (sp * sp * sp);
}

double Curve2D::arclength_at_theta(double theta) const {
    double s = speed_.mean * theta;
    const std::size_t n = speed_.degree();
    for (std::size_t k = 1; k <= n; ++k) {
        const double m = static_cast<double>(k);
        const double a = coeff(speed_.cos_coeffs, k - 1);
        const double b = coeff(speed_.sin_coeffs, k - 1);
        s += (a * std::sin(m * theta) + b * (1.0 - std::cos(m * theta))) / m;
    }
    return s;
}

double Curve2D::theta_at_arclength(double s) const {
    s = std::fmod(s, perimeter_);
    if (s < 0.0) s += perimeter_;
    double lo = 0.0;
    double hi = kTwoPi;
    double theta = kTwoPi * s / perimeter_;
    for (int iter = 0; iter < 100; ++iter) {
        const double g = arclength_at_theta(theta) - s;
        if (g > 0.0)
            hi = theta;
        else
            lo = theta;
        double next = theta - g / speed(theta);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - theta) < 1e-15 * kTwoPi) return next;
        theta = next;
    }
    return theta;
}

std::vector<Point2> Curve2D::polyline(int n) const {
    std::vector<Point2> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = point(kTwoPi * i / n);
    return out;
}

Curve2D Curve2D::scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("Curve2D::scaled: factor must be positive");
    return Curve2D(scaled_series(x_, factor, 0.0), scaled_series(y_, factor, 0.0), n_quad_);
}

Curve2D Curve2D::translated(double dx, double dy) const {
    return Curve2D(scaled_series(x_, 1.0, dx), scaled_series(y_, 1.0, dy), n_quad_);
}

CurveMetrics curve_metrics(const Curve2D& curve) {
    CurveMetrics out;
    const int n = curve.n_quad();
    const double h = kTwoPi / n;
    out.curvature_samples.resize(static_cast<std::size_t>(n));
    double perimeter = 0.0;
    double area = 0.0;
    double total = 0.0;
    out.min_curvature = std::numeric_limits<double>::infinity();
    out.max_curvature = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double t = h * i;
        const Point2 p = curve.point(t);
        const Point2 d = curve.tangent(t);
        const double sp = std::hypot(d.x, d.y);
        const double kappa = curve.curvature(t);
        out.curvature_samples[static_cast<std::size_t>(i)] = kappa;
        out.min_curvature = std::min(out.min_curvature, kappa);
        out.max_curvature = std::max(out.max_curvature, kappa);
        perimeter += sp;
        area += p.x * d.y - p.y * d.x;
        total += kappa * sp;
    }
    out.perimeter = perimeter * h;
    out.enclosed_area = 0.5 * area * h;
    out.total_curvature = total * h;
    return out;
}

MultiCurve2D::MultiCurve2D(std::vector<Curve2D> components) : components_(std::move(components)) {
    if (components_.empty()) throw GeometryError("MultiCurve2D: at least one component required");
    std::vector<std::vector<Point2>> polys;
    polys.reserve(components_.size());
    for (const auto& c : components_) polys.push_back(c.polyline(kSimplicityVertices));
    for (std::size_t i = 0; i < polys.size(); ++i) {
        for (std::size_t j = i + 1; j < polys.size(); ++j) {
            if (polylines_cross(polys[i], polys[j]) || point_in_polygon(polys[i], polys[j][0]) ||
                point_in_polygon(polys[j], polys[i][0]))
                throw GeometryError("MultiCurve2D: components " + std::to_string(i) + " and " +
                                    std::to_string(j) + " overlap");
        }
    }
}

double MultiCurve2D::total_perimeter() const {
    double total = 0.0;
    for (const auto& c : components_) total += c.perimeter();
    return total;
}

double multicurve_constraint(const MultiCurve2D& mc) {
    return mc.total_perimeter() / static_cast<double>(mc.count());
}

namespace curves {

Curve2D circle(double radius, double cx, double cy, int n_quad) {
    return ellipse(radius, radius, cx, cy, 0.0, n_quad);
}

Curve2D ellipse(double a, double b, double cx, double cy, double rotation, int n_quad) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("ellipse: semi-axes must be positive");
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    FourierSeries x{cx, {a * c}, {-b * s}};
    FourierSeries y{cy, {a * s}, {b * c}};
    return Curve2D(std::move(x), std::move(y), n_quad);
}

Curve2D ellipse_with_perimeter(double aspect, double perimeter, int n_quad) {
    if (!(aspect > 0.0) || !(perimeter > 0.0))
        throw DomainError("ellipse_with_perimeter: aspect and perimeter must be positive");
    const Curve2D base = ellipse(aspect, 1.0, 0.0, 0.0, 0.0, n_quad);
    return base.scaled(perimeter / base.perimeter());
}

Curve2D star(double radius, double eps, int m, double cx, double cy, int n_quad) {
    if (!(radius > 0.0)) throw DomainError("star: radius must be positive");
    if (m < 1) throw DomainError("star: m must be >= 1");
    if (!(std::abs(eps) < 1.0)) throw DomainError("star: |eps| must be < 1");
    // R (1 + eps cos m t) (cos t, sin t) expanded by product-to-sum.
    FourierSeries x{cx, {}, {}};
    FourierSeries y{cy, {}, {}};
    add_term(x, 1, radius, 0.0);
    add_term(y, 1, 0.0, radius);
    const double h = 0.5 * radius * eps;
    add_term(x, m + 1, h, 0.0);
    add_term(x, m - 1, h, 0.0);
    add_term(y, m + 1, 0.0, h);
    add_term(y, m - 1, 0.0, -h);
    return Curve2D(std::move(x), std::move(y), n_quad);
}

Curve2D stadium(double half_length, double cap_radius, int modes, double cx, double cy, int n_quad) {
    if (!(half_length >= 0.0) || !(cap_radius > 0.0))
        throw DomainError("stadium: half_length >= 0 and cap_radius > 0 required");
    if (modes < 2) throw DomainError("stadium: at least two modes required");
    // Support function h = r + a |cos theta| in the normal angle, smoothed with the Jackson
    // kernel (the normalized square of a Fejer kernel). A positive kernel keeps the radius
    // of curvature h + h'' positive, so the smoothed curve stays convex.
    const int degree = modes - 1;
    const int half = degree / 2;
    auto fejer = [half](int j) { return std::abs(j) > half ? 0.0 : 1.0 - std::abs(j) / (half + 1.0); };
    auto jackson = [&](int n) {
        double acc = 0.0;
        for (int j = -half; j <= half; ++j) acc += fejer(j) * fejer(n - j);
        return acc;
    };
    const double norm = jackson(0);
    std::vector<double> H(static_cast<std::size_t>(degree) + 1, 0.0);
    H[0] = cap_radius + half_length * 2.0 / std::numbers::pi;
    for (int k = 1; 2 * k <= degree; ++k) {
        const double c = half_length * (4.0 / std::numbers::pi) * ((k % 2) ? 1.0 : -1.0) / (4.0 * k * k - 1.0);
        H[2 * k] = c * jackson(2 * k) / norm;
    }
    const std::size_t n = 4 * static_cast<std::size_t>(modes + 1);
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = kTwoPi * i / n;
        double h = 0.0;
        double dh = 0.0;
        for (int m = 0; m <= degree; ++m) {
            h += H[m] * std::cos(m * t);
            dh -= H[m] * m * std::sin(m * t);
        }
        xs[i] = h * std::cos(t) - dh * std::sin(t);
        ys[i] = h * std::sin(t) + dh * std::cos(t);
    }
    FourierSeries fx = fourier_fit(xs);
    FourierSeries fy = fourier_fit(ys);
    fx.mean += cx;
    fy.mean += cy;
    return Curve2D(std::move(fx), std::move(fy), n_quad);
}

}  // namespace curves

}  // namespace extrobin
