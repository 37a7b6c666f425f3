#pragma once

// Special functions needed by the radial Robin problem: unit-sphere areas and
// modified Bessel functions of the second kind K_nu for nu = 0, 1/2, 1, ..., 20.

namespace extrobin {

/// Bessel order nu >= 0 restricted to integers and half-integers, the only
/// orders that arise as nu = (d - 2) / 2.
class Order {
public:
    explicit Order(double nu);

    static Order from_dimension(int d);

    double nu() const noexcept { return twice_ * 0.5; }
    int twice() const noexcept { return twice_; }
    bool is_half_integer() const noexcept { return twice_ % 2 != 0; }

    static constexpr double max_nu = 20.0;

private:
    int twice_;
};

struct EvalPolicy {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
    int max_terms = 1000;
    int quadrature_nodes = 2000;  // used by quadrature oracles only

    void validate() const;
};

/// s_d = 2 pi^{d/2} / Gamma(d/2), the (d-1)-volume of the unit sphere in R^d.
double sphere_area(int d);

/// K_nu(x), x > 0. Underflows to 0 for x beyond ~700.
double bessel_k(Order order, double x, const EvalPolicy& policy = {});

/// e^x K_nu(x), x > 0. Free of underflow for large x.
double bessel_k_scaled(Order order, double x, const EvalPolicy& policy = {});

/// K_{nu+1}(x) / K_nu(x) without forming either factor separately for large x.
double bessel_k_ratio(Order order, double x, const EvalPolicy& policy = {});

/// f(x) = x K_{nu+1}(x) / K_nu(x). Strictly increasing from f(0+) = 2 nu to infinity.
double bessel_ratio_f(Order order, double x, const EvalPolicy& policy = {});

}  // namespace extrobin
