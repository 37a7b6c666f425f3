#pragma once

#include <Eigen/Sparse>
#include <optional>
#include <string>
#include <vector>

#include "extrobin/effective1d.hpp"
#include "extrobin/geometry.hpp"

namespace extrobin {

enum class OuterBC { dirichlet, neumann };
enum class LinearSolver { ldlt, pcg };

const char* to_string(OuterBC bc) noexcept;

/// Discretization of the exterior of a convex curve in parallel coordinates (s, t):
/// s uniform periodic arclength, t graded on [0, T].
struct GridConfig {
    int n_s = 256;
    int n_t = 400;
    double T = 1.0;
    double grading = 1.05;  // see grading_exponent
    OuterBC outer = OuterBC::dirichlet;
};

class ParallelGrid {
public:
    ParallelGrid(const Curve2D& curve, Mesh1D t_mesh, int n_s);

    int n_s() const noexcept { return n_s_; }
    double perimeter() const noexcept { return perimeter_; }
    const Mesh1D& t_mesh() const noexcept { return t_mesh_; }
    /// s-node i sits at arclength i * perimeter / n_s.
    double s_node(int i) const { return perimeter_ * i / n_s_; }
    /// Curvature at the s-quadrature points of cell i (3-point Gauss).
    const std::vector<double>& cell_curvature(int i) const { return kappa_[i]; }
    double min_curvature() const noexcept { return kappa_min_; }
    double max_curvature() const noexcept { return kappa_max_; }
    /// Same curve samples on another t mesh.
    ParallelGrid with_t_mesh(Mesh1D t_mesh) const;
    /// F(s, t) = 1 + t kappa(s) at a node.
    double metric_factor(int i, int j) const;

private:
    int n_s_;
    double perimeter_;
    Mesh1D t_mesh_;
    std::vector<std::vector<double>> kappa_;
    std::vector<double> kappa_node_;
    double kappa_min_ = 0.0;
    double kappa_max_ = 0.0;
};

/// Stiffness A and mass B; unknown (i, j) has index j * n_s + i.
struct SparsePair {
    Eigen::SparseMatrix<double> A;
    Eigen::SparseMatrix<double> B;
    int n_s = 0;
    int t_rows = 0;  // unknown rows in t (n_t for Dirichlet, n_t + 1 for Neumann)
    OuterBC outer = OuterBC::dirichlet;
    double T = 0.0;
    double max_curvature = 0.0;
};

SparsePair assemble(const Curve2D& curve, double alpha, const GridConfig& cfg);
SparsePair assemble(const ParallelGrid& grid, double alpha, OuterBC outer);

struct EigenSolverConfig {
    LinearSolver solver = LinearSolver::ldlt;
    double tolerance = 1e-8;
    int max_iterations = 400;
    int pcg_max_iterations = 20000;
};

struct Eigenpair {
    double lambda = 0.0;
    Eigen::VectorXd vector;  // B-normalized, positive sum
    int iterations = 0;
    double residual = 0.0;
    double final_shift = 0.0;
};

/// Default shift: 1.2 * asym_lambda(2, max kappa, alpha), kept below -alpha^2.
double default_shift(double max_curvature, double alpha);

/// Smallest generalized eigenpair by shifted inverse iteration. The shift must lie
/// below the spectrum; an indefinite A - shift B triggers up to three retries with
/// more negative shifts before failing.
Eigenpair lowest_eigenpair(const SparsePair& pair, double shift, const EigenSolverConfig& cfg = {});

struct RefinementRow {
    int n_s = 0;
    int n_t = 0;
    double T = 0.0;
    OuterBC outer = OuterBC::dirichlet;
    double lambda = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

struct ValidationConfig {
    int n_s = 256;
    int n_t = 400;
    /// Truncation; 10 / k_est when unset, k_est from the disk with the same perimeter.
    std::optional<double> T;
    double grading = 1.05;  // see grading_exponent
    double outer_extension = 1.5;  // second truncation T2 = outer_extension * T
    EigenSolverConfig solver;
};

struct ValidationResult {
    double lambda_dirichlet = 0.0;
    double lambda_neumann = 0.0;
    std::vector<RefinementRow> refinement_table;
};

/// lambda_1 outside a convex curve: a ladder of coarse/fine grids, two truncations and
/// both outer conditions. The Dirichlet value at the finest, widest rung is the estimate.
ValidationResult lambda1_exterior_2d(const Curve2D& curve, double alpha,
                                     const ValidationConfig& cfg = {});

/// CSV with columns n_s,n_t,T,outer_bc,lambda,residual,iterations.
std::string refinement_csv(const ValidationResult& result);

}  // namespace extrobin
