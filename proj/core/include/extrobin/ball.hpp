#pragma once

#include "extrobin/specfun.hpp"

namespace extrobin {

/// Robin problem in the exterior of the ball B_R in R^d with coupling alpha.
struct BallProblem {
    int d = 2;
    double R = 1.0;
    double alpha = -1.0;

    void validate() const;
};

struct BallSpectrum {
    double lambda1 = 0.0;  // -k^2 when discrete, 0 (essential-spectrum bottom) otherwise
    double k = 0.0;
    bool is_discrete = false;
    double alpha_star = 0.0;
    int bisection_steps = 0;
};

/// alpha_*(B_R^ext) = -(d - 2) / R.
double critical_coupling(int d, double R);

/// Lowest Robin eigenvalue outside B_R: bisection for the root of f(kR) = -alpha R.
///
/// For alpha >= alpha_* the spectrum is [0, inf) and lambda1 = 0 with is_discrete = false.
/// In d = 2 with |alpha| R below ~1/700 the root kR is smaller than the smallest
/// double; k is then reported as 0 while is_discrete stays true.
BallSpectrum lambda1_ball(const BallProblem& problem, const EvalPolicy& policy = {});

/// Radial eigenfunction r^{-nu} K_nu(kr), normalized to psi(R) = 1.
double radial_eigenfunction(const BallProblem& problem, const BallSpectrum& spectrum, double r,
                            const EvalPolicy& policy = {});

/// Two-term large-coupling predictor -alpha^2 - alpha (d - 1) M_max.
double asym_lambda(int d, double M_max, double alpha);

}  // namespace extrobin
