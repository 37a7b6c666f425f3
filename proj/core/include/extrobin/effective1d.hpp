#pragma once

#include <optional>
#include <vector>

#include "extrobin/geometry.hpp"

namespace extrobin {

/// Weight of the reduced half-line quotient
///   Q[psi] = ( int_0^inf |psi'|^2 w dt + alpha w0 |psi(0)|^2 ) / int_0^inf |psi|^2 w dt
/// with w(t) = sum_j coeffs[j] t^j. w0 is the boundary coefficient, normally w(0).
struct EffectiveWeight {
    std::vector<double> coeffs;
    double w0 = 1.0;

    double operator()(double t) const;
    double derivative(double t) const;
    void validate() const;
};

struct TruncationConfig {
    /// Dirichlet truncation point; chosen automatically from the eigenvalue when unset.
    std::optional<double> T;
    int n = 128;
    /// Ratio of consecutive cell widths on a reference mesh of 100 cells (cells grow
    /// away from t = 0); see grading_exponent.
    double grading = 1.05;
    /// Extrapolate over the nested ladder n, 2n, 4n.
    bool richardson = true;

    void validate() const;
};

struct SpectralResult {
    /// Reported eigenvalue: 0 when the minimum sits at the essential-spectrum bottom.
    double lambda = 0.0;
    /// Smallest discrete eigenvalue of the truncated problem at the finest rung
    /// (or the extrapolated value), before clamping.
    double raw_lambda = 0.0;
    /// Extrapolation error estimate, or bisection width without extrapolation.
    double residual = 0.0;
    bool converged = false;
    bool essential_bottom = false;
    bool truncation_warning = false;
    double T_used = 0.0;
    int n_used = 0;
};

/// Node set 0 = t_0 < ... < t_n = T.
struct Mesh1D {
    std::vector<double> nodes;

    double T() const { return nodes.back(); }
    int cells() const { return static_cast<int>(nodes.size()) - 1; }
};

/// Cells of the reference mesh used to express a grading ratio.
inline constexpr int kGradingReferenceCells = 100;
/// beta such that graded_mesh(T, 100, beta) has consecutive width ratio `grading`.
double grading_exponent(double grading);

/// t(xi) = T (e^{beta xi} - 1) / (e^beta - 1) on a uniform xi grid; beta = 0 is uniform.
/// Meshes with the same (T, beta) and n | m are nested.
Mesh1D graded_mesh(double T, int n, double beta);
/// Appends cells of the last width until T_new is reached (the old mesh stays a subset).
Mesh1D extend_mesh(const Mesh1D& mesh, double T_new);

/// Smallest Ritz value of the P1 discretization on the mesh with psi(T) = 0.
/// Sturm-sequence bisection on the tridiagonal pencil.
double ritz_value(const EffectiveWeight& w, double alpha, const Mesh1D& mesh);

EffectiveWeight weight_from_multicurve(const MultiCurve2D& mc);
EffectiveWeight weight_from_steiner(const SteinerPolynomial& p);
/// (1 + t/R)^{d-1} with w0 = 1: the exact reduction of the ball problem.
EffectiveWeight ball_weight(int d, double R);

SpectralResult min_rayleigh(const EffectiveWeight& w, double alpha, const TruncationConfig& cfg = {});

/// Upper bound for lambda_1 outside a planar union of simply connected components:
/// the disk value at perimeter |boundary| / N.
double bound_thm1(const MultiCurve2D& mc, double alpha);

struct Thm2Bound {
    double M_total = 0.0;
    double R = 0.0;        // ball radius with the same boundary average of M^{d-1}
    double bound = 0.0;    // lambda_1 of the exterior of B_R
    SpectralResult steiner;  // reduced quotient with the Steiner-type weight of the body
    double ball_reduced = 0.0;  // same solver on the ball weight, same configuration
    /// steiner.lambda <= bound + tolerance.
    bool chain_holds = false;
};

Thm2Bound bound_thm2(const AxisymBody& body, double alpha, const TruncationConfig& cfg = {},
                     double tolerance = 1e-6);

}  // namespace extrobin
