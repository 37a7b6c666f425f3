#include "extrobin/pde2d.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "extrobin/ball.hpp"
#include "extrobin/errors.hpp"
#include "extrobin/quadrature.hpp"

namespace extrobin {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

constexpr double kConvexityTol = 1e-10;
constexpr int kShiftRetries = 3;
// Each shift change costs a refactorization.
constexpr int kMaxShiftUpdates = 3;
constexpr int kShiftUpdateSpacing = 8;

const QuadratureRule& unit_gauss3() {
    static const QuadratureRule rule = gauss_legendre(3, 0.0, 1.0);
    return rule;
}

// Shifted solves for the inverse iteration.
class ShiftedSolver {
public:
    ShiftedSolver(const SparsePair& pair, const EigenSolverConfig& cfg) : pair_(pair), cfg_(cfg) {}

    // Returns false when A - sigma B is detected to be indefinite.
    bool set_shift(double sigma) {
        sigma_ = sigma;
        shifted_ = pair_.A - sigma * pair_.B;
        if (cfg_.solver == LinearSolver::ldlt) {
            if (!analyzed_) {
                ldlt_.analyzePattern(shifted_);
                analyzed_ = true;
            }
            ldlt_.factorize(shifted_);
            if (ldlt_.info() != Eigen::Success) return false;
            return ldlt_.vectorD().minCoeff() > 0.0;
        }
        inv_diag_ = shifted_.diagonal();
        if (inv_diag_.minCoeff() <= 0.0) return false;
        inv_diag_ = inv_diag_.cwiseInverse();
        return true;
    }

    // Returns false on detected indefiniteness (PCG only).
    bool solve(const Vec& rhs, Vec& x) {
        if (cfg_.solver == LinearSolver::ldlt) {
            x = ldlt_.solve(rhs);
            return ldlt_.info() == Eigen::Success;
        }
        return pcg(rhs, x);
    }

private:
    bool pcg(const Vec& b, Vec& x) {
        if (x.size() != b.size()) x = Vec::Zero(b.size());
        Vec r = b - shifted_ * x;
        Vec z = inv_diag_.cwiseProduct(r);
        Vec p = z;
        double rz = r.dot(z);
        const double target = 1e-13 * b.norm();
        for (int it = 0; it < cfg_.pcg_max_iterations; ++it) {
            if (r.norm() <= target) return true;
            const Vec q = shifted_ * p;
            const double curvature = p.dot(q);
            if (curvature <= 0.0) return false;
            const double step = rz / curvature;
            x += step * p;
            r -= step * q;
            z = inv_diag_.cwiseProduct(r);
            const double rz_next = r.dot(z);
            p = z + (rz_next / rz) * p;
            rz = rz_next;
        }
        return r.norm() <= 1e-8 * b.norm();
    }

    const SparsePair& pair_;
    EigenSolverConfig cfg_;
    double sigma_ = 0.0;
    SpMat shifted_;
    Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
    Vec inv_diag_;
    bool analyzed_ = false;
};

double estimate_k(const Curve2D& curve, double alpha) {
    // The disk with the same perimeter has the larger (less negative) eigenvalue,
    // hence the smaller decay rate: a safe truncation estimate.
    const double R = curve.perimeter() / (2.0 * std::numbers::pi);
    const BallSpectrum s = lambda1_ball({2, R, alpha});
    if (s.k > 0.0) return s.k;
    return std::max(std::sqrt(std::max(-asym_lambda(2, 1.0 / R, alpha), 0.0)), 1e-12);
}

}  // namespace

const char* to_string(OuterBC bc) noexcept {
    return bc == OuterBC::dirichlet ? "dirichlet" : "neumann";
}

ParallelGrid::ParallelGrid(const Curve2D& curve, Mesh1D t_mesh, int n_s)
    : n_s_(n_s), perimeter_(curve.perimeter()), t_mesh_(std::move(t_mesh)) {
    if (n_s_ < 3) throw DomainError("ParallelGrid: n_s must be >= 3");
    if (t_mesh_.cells() < 1) throw DomainError("ParallelGrid: empty t mesh");
    const auto& g = unit_gauss3();
    const double hs = perimeter_ / n_s_;
    kappa_.assign(static_cast<std::size_t>(n_s_), std::vector<double>(g.size()));
    kappa_node_.resize(static_cast<std::size_t>(n_s_));
    kappa_min_ = std::numeric_limits<double>::infinity();
    kappa_max_ = -std::numeric_limits<double>::infinity();
    auto record = [&](double k) {
        kappa_min_ = std::min(kappa_min_, k);
        kappa_max_ = std::max(kappa_max_, k);
    };
    for (int i = 0; i < n_s_; ++i) {
        kappa_node_[i] = curve.curvature(curve.theta_at_arclength(hs * i));
        record(kappa_node_[i]);
        for (std::size_t q = 0; q < g.size(); ++q) {
            kappa_[i][q] = curve.curvature(curve.theta_at_arclength(hs * (i + g.nodes[q])));
            record(kappa_[i][q]);
        }
    }
    // A dense check catches concave dents between grid points.
    const auto metrics = curve_metrics(curve);
    record(metrics.min_curvature);
    if (kappa_min_ < -kConvexityTol)
        throw ConvexityError("ParallelGrid: curve is not convex (min curvature " +
                             std::to_string(kappa_min_) + ")");
    if (!(1.0 + t_mesh_.T() * std::min(kappa_min_, 0.0) > 0.0))
        throw GeometryError("ParallelGrid: metric factor F <= 0 on the grid");
}

ParallelGrid ParallelGrid::with_t_mesh(Mesh1D t_mesh) const {
    if (t_mesh.cells() < 1) throw DomainError("ParallelGrid: empty t mesh");
    if (!(1.0 + t_mesh.T() * std::min(kappa_min_, 0.0) > 0.0))
        throw GeometryError("ParallelGrid: metric factor F <= 0 on the grid");
    ParallelGrid out = *this;
    out.t_mesh_ = std::move(t_mesh);
    return out;
}

double ParallelGrid::metric_factor(int i, int j) const {
    return 1.0 + t_mesh_.nodes[j] * kappa_node_[i];
}

SparsePair assemble(const ParallelGrid& grid, double alpha, OuterBC outer) {
    const int n_s = grid.n_s();
    const Mesh1D& tm = grid.t_mesh();
    const int n_t = tm.cells();
    const int t_rows = outer == OuterBC::dirichlet ? n_t : n_t + 1;
    const int n = n_s * t_rows;
    const double hs = grid.perimeter() / n_s;
    const auto& g = unit_gauss3();

    std::vector<Eigen::Triplet<double>> a_trip;
    std::vector<Eigen::Triplet<double>> b_trip;
    a_trip.reserve(static_cast<std::size_t>(n_s) * n_t * 16 + 3 * n_s);
    b_trip.reserve(static_cast<std::size_t>(n_s) * n_t * 16);

    for (int j = 0; j < n_t; ++j) {
        const double t0 = tm.nodes[j];
        const double ht = tm.nodes[j + 1] - t0;
        for (int i = 0; i < n_s; ++i) {
            const auto& kq = grid.cell_curvature(i);
            double ae[4][4] = {};
            double be[4][4] = {};
            for (std::size_t qs = 0; qs < g.size(); ++qs) {
                const double sig = g.nodes[qs];
                const double S[2] = {1.0 - sig, sig};
                const double dS[2] = {-1.0 / hs, 1.0 / hs};
                for (std::size_t qt = 0; qt < g.size(); ++qt) {
                    const double tau = g.nodes[qt];
                    const double T[2] = {1.0 - tau, tau};
                    const double dT[2] = {-1.0 / ht, 1.0 / ht};
                    const double F = 1.0 + (t0 + ht * tau) * kq[qs];
                    const double w = g.weights[qs] * g.weights[qt] * hs * ht;
                    for (int a = 0; a < 4; ++a) {
                        const int as = a & 1;
                        const int at = a >> 1;
                        for (int b = a; b < 4; ++b) {  // upper triangle, mirrored below
                            const int bs = b & 1;
                            const int bt = b >> 1;
                            ae[a][b] += w * (dS[as] * dS[bs] * T[at] * T[bt] / F +
                                             S[as] * S[bs] * dT[at] * dT[bt] * F);
                            be[a][b] += w * S[as] * S[bs] * T[at] * T[bt] * F;
                        }
                    }
                }
            }
            // Mirroring keeps A and B exactly symmetric after triplet summation.
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < a; ++b) {
                    ae[a][b] = ae[b][a];
                    be[a][b] = be[b][a];
                }
            int idx[4];
            for (int a = 0; a < 4; ++a) {
                const int ii = (i + (a & 1)) % n_s;
                const int jj = j + (a >> 1);
                idx[a] = jj < t_rows ? jj * n_s + ii : -1;
            }
            for (int a = 0; a < 4; ++a) {
                if (idx[a] < 0) continue;
                for (int b = 0; b < 4; ++b) {
                    if (idx[b] < 0) continue;
                    a_trip.emplace_back(idx[a], idx[b], ae[a][b]);
                    b_trip.emplace_back(idx[a], idx[b], be[a][b]);
                }
            }
        }
    }
    // Robin term alpha * int |u(s, 0)|^2 ds (F(s, 0) = 1).
    for (int i = 0; i < n_s; ++i) {
        const int ip = (i + 1) % n_s;
        a_trip.emplace_back(i, i, alpha * hs / 3.0);
        a_trip.emplace_back(ip, ip, alpha * hs / 3.0);
        a_trip.emplace_back(i, ip, alpha * hs / 6.0);
        a_trip.emplace_back(ip, i, alpha * hs / 6.0);
    }

    SparsePair pair;
    pair.A.resize(n, n);
    pair.B.resize(n, n);
    pair.A.setFromTriplets(a_trip.begin(), a_trip.end());
    pair.B.setFromTriplets(b_trip.begin(), b_trip.end());
    pair.A.makeCompressed();
    pair.B.makeCompressed();
    pair.n_s = n_s;
    pair.t_rows = t_rows;
    pair.outer = outer;
    pair.T = tm.T();
    pair.max_curvature = grid.max_curvature();
    return pair;
}

SparsePair assemble(const Curve2D& curve, double alpha, const GridConfig& cfg) {
    if (!(alpha < 0.0)) throw DomainError("assemble: alpha must be negative");
    if (!(cfg.T > 0.0)) throw DomainError("assemble: T must be positive");
    if (cfg.n_t < 2) throw DomainError("assemble: n_t must be >= 2");
    if (!(cfg.grading >= 1.0)) throw DomainError("assemble: grading must be >= 1");
    const ParallelGrid grid(curve, graded_mesh(cfg.T, cfg.n_t, grading_exponent(cfg.grading)),
                            cfg.n_s);
    return assemble(grid, alpha, cfg.outer);
}

double default_shift(double max_curvature, double alpha) {
    return std::min(1.2 * asym_lambda(2, max_curvature, alpha), -1.01 * alpha * alpha);
}

Eigenpair lowest_eigenpair(const SparsePair& pair, double shift, const EigenSolverConfig& cfg) {
    const Eigen::Index n = pair.A.rows();
    if (n == 0) throw DomainError("lowest_eigenpair: empty system");
    ShiftedSolver solver(pair, cfg);

    double sigma = shift;
    bool ok = solver.set_shift(sigma);
    for (int retry = 0; !ok && retry < kShiftRetries; ++retry) {
        sigma = 2.0 * sigma - 1.0;
        ok = solver.set_shift(sigma);
    }
    if (!ok)
        throw AccuracyError("lowest_eigenpair: shift not below the spectrum after retries", sigma);

    Vec v = Vec::Ones(n);
    v /= std::sqrt(v.dot(pair.B * v));
    Vec x = Vec::Zero(n);
    Eigenpair out;
    double previous_residual = std::numeric_limits<double>::infinity();
    int shift_updates = 0;
    int last_update = 0;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        if (!solver.solve(pair.B * v, x)) {
            // PCG saw negative curvature: the shift overshot.
            sigma = 2.0 * sigma - 1.0;
            if (!solver.set_shift(sigma))
                throw AccuracyError("lowest_eigenpair: indefinite shifted operator", sigma);
            continue;
        }
        const Vec Bx = pair.B * x;
        v = x / std::sqrt(x.dot(Bx));
        const Vec Bv = pair.B * v;
        const Vec Av = pair.A * v;
        const double rho = v.dot(Av);
        const double residual = (Av - rho * Bv).norm() / Bv.norm();
        out.lambda = rho;
        out.iterations = it;
        out.residual = residual;
        if (residual <= cfg.tolerance) break;

        // Move the shift toward the Rayleigh quotient once it is reliable; keep the old
        // shift when the factorization reports negative pivots.
        if (shift_updates < kMaxShiftUpdates && it - last_update >= kShiftUpdateSpacing &&
            residual < 1e-2 && residual < previous_residual &&
            rho - sigma > 1e-8) {
            ++shift_updates;
            last_update = it;
            const double candidate = rho - 0.1 * (rho - sigma);
            if (solver.set_shift(candidate))
                sigma = candidate;
            else
                solver.set_shift(sigma);
        }
        previous_residual = residual;
    }
    if (out.residual > cfg.tolerance)
        throw AccuracyError("lowest_eigenpair: inverse iteration did not converge", out.lambda);
    if (v.sum() < 0.0) v = -v;
    out.vector = std::move(v);
    out.final_shift = sigma;
    return out;
}

ValidationResult lambda1_exterior_2d(const Curve2D& curve, double alpha, const ValidationConfig& cfg) {
    if (!(alpha < 0.0)) throw DomainError("lambda1_exterior_2d: alpha must be negative");
    if (cfg.n_s < 8 || cfg.n_t < 8 || cfg.n_s % 2 || cfg.n_t % 2)
        throw DomainError("lambda1_exterior_2d: n_s and n_t must be even and >= 8");
    if (!(cfg.outer_extension > 1.0))
        throw DomainError("lambda1_exterior_2d: outer_extension must exceed 1");

    const double T = cfg.T ? *cfg.T : 10.0 / estimate_k(curve, alpha);
    if (!(T > 0.0)) throw DomainError("lambda1_exterior_2d: T must be positive");
    const int coarse_t = cfg.n_t / 2;
    const double beta = grading_exponent(cfg.grading);
    const Mesh1D coarse_mesh = graded_mesh(T, coarse_t, beta);
    const Mesh1D fine_mesh = graded_mesh(T, cfg.n_t, beta);
    const Mesh1D wide_mesh = extend_mesh(fine_mesh, cfg.outer_extension * T);

    struct Rung {
        int n_s;
        const Mesh1D* mesh;
        OuterBC outer;
    };
    const Rung rungs[] = {
        {cfg.n_s / 2, &coarse_mesh, OuterBC::dirichlet},
        {cfg.n_s, &fine_mesh, OuterBC::dirichlet},
        {cfg.n_s, &wide_mesh, OuterBC::dirichlet},
        {cfg.n_s, &fine_mesh, OuterBC::neumann},
    };

    ValidationResult out;
    double shift = 0.0;
    bool have_shift = false;
    const ParallelGrid coarse_grid(curve, coarse_mesh, cfg.n_s / 2);
    const ParallelGrid fine_grid(curve, fine_mesh, cfg.n_s);
    for (const Rung& rung : rungs) {
        const ParallelGrid grid = rung.n_s == cfg.n_s ? fine_grid.with_t_mesh(*rung.mesh)
                                                      : coarse_grid;
        const SparsePair pair = assemble(grid, alpha, rung.outer);
        if (!have_shift) {
            shift = default_shift(grid.max_curvature(), alpha);
            have_shift = true;
        }
        const Eigenpair ep = lowest_eigenpair(pair, shift, cfg.solver);
        // The last shift is below this rung's eigenvalue and refined rungs move it only
        // slightly; the inertia check in lowest_eigenpair catches the exceptions.
        shift = ep.final_shift;
        out.refinement_table.push_back({rung.n_s, rung.mesh->cells(), rung.mesh->T(), rung.outer,
                                        ep.lambda, ep.residual, ep.iterations});
    }
    out.lambda_dirichlet = out.refinement_table[2].lambda;
    out.lambda_neumann = out.refinement_table[3].lambda;
    return out;
}

std::string refinement_csv(const ValidationResult& result) {
    std::ostringstream os;
    os << "n_s,n_t,T,outer_bc,lambda,residual,iterations\n";
    os << std::setprecision(12);
    for (const auto& r : result.refinement_table)
        os << r.n_s << ',' << r.n_t << ',' << r.T << ',' << to_string(r.outer) << ',' << r.lambda
           << ',' << r.residual << ',' << r.iterations << '\n';
    return os.str();
}

}  // namespace extrobin
