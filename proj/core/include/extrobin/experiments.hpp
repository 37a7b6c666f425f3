#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "extrobin/effective1d.hpp"
#include "extrobin/geometry.hpp"
#include "extrobin/pde2d.hpp"
#include "extrobin/table.hpp"

namespace extrobin {

std::string library_version();

/// Worker count for scans: EXTROBIN_THREADS when set (>= 1), else the hardware count.
int scan_threads();

/// Runs body(i) for i in [0, n) on at most `threads` workers. Results must be written
/// to slot i by the caller, which keeps the output order independent of scheduling.
/// The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

struct NamedCurves {
    std::string id;
    MultiCurve2D shape;
};

struct NamedBody {
    std::string id;
    AxisymBody body;
};

struct ScanRow {
    std::string shape;
    double alpha = 0.0;
    double constraint = 0.0;  // |boundary| / N (planar scans) or the boundary average of M^{d-1}
    double bound = 0.0;       // reduced-quotient value
    std::optional<double> validator;  // 2D PDE estimate, single convex components only
    double ball_reference = 0.0;
    /// ball_reference - validator when a validator value exists, else ball_reference - bound.
    double margin = 0.0;
};

struct Thm1ScanConfig {
    /// Rescale every shape so that |boundary| / N equals this value.
    std::optional<double> perimeter;
    bool validate = true;
    ValidationConfig validation;
    TruncationConfig truncation;
    int threads = 1;
};

std::vector<ScanRow> scan_thm1(const std::vector<NamedCurves>& shapes, const std::vector<double>& alphas,
                               const Thm1ScanConfig& cfg);

struct Thm2ScanConfig {
    /// Rescale every body so that the boundary average of M^{d-1} equals this value.
    double target = 1.0;
    TruncationConfig truncation;
    int threads = 1;
};

struct Thm2ScanRow {
    ScanRow row;
    int d = 3;
    double curvature_margin = 0.0;  // smallest Maclaurin/Jensen/Alexandrov-Fenchel margin
    double polynomial_margin = 0.0;  // min over t of ball Steiner polynomial - body Steiner polynomial
};

std::vector<Thm2ScanRow> scan_thm2(const std::vector<NamedBody>& bodies, const std::vector<double>& alphas,
                                   const Thm2ScanConfig& cfg);

/// min over a grid of t in (0, t_max] of P_ball(t) - P(t) for the ball with the same
/// total mean curvature average (R = target^{-1/(d-1)}).
double steiner_polynomial_margin(const SteinerPolynomial& p, double R, double t_max = 100.0, int samples = 2000);

struct AsymptoticsRow {
    double alpha = 0.0;
    double lambda = 0.0;
    double predictor = 0.0;        // -alpha^2 - alpha (d-1) / R
    double scaled_remainder = 0.0;  // |lambda - predictor| / |alpha|
};

std::vector<AsymptoticsRow> asymptotics(int d, double R, const std::vector<double>& alphas);

struct SharpnessRow {
    double alpha = 0.0;
    double predictor_union = 0.0;  // N disks of radius r
    double predictor_ball = 0.0;   // one disk of radius R
    double predicted_difference = 0.0;  // union - ball
    double union_exact = 0.0;  // single disk of radius r (limit of well separated disks)
    double ball_exact = 0.0;
    double exact_difference = 0.0;
    bool reversed = false;  // predicted_difference > 0
};

struct SharpnessTable {
    std::vector<SharpnessRow> rows;
    /// Least negative alpha in the grid from which every further (more negative) row
    /// is reversed; empty when the ordering never reverses.
    std::optional<double> reversal_alpha;
};

SharpnessTable emit_sharpness_example(double r, double R, const std::vector<double>& alpha_grid);

/// Command-line style entry point shared by the CLI and the tests.
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> params;
    std::string output;  // file path; empty writes the table to `out`
    std::string format = "csv";
    bool plot = false;  // write <output>.py next to the data file
    std::string command_line;
};

struct RunResult {
    int exit_code = 0;  // 0 ok, 2 an asserted inequality failed, 1 usage error
    Table table;
    std::vector<std::string> failures;
    std::string rendered;  // CSV or JSON text
    std::string plot_x;    // axes for the optional plot script; empty when not plottable
    std::vector<std::string> plot_y;
    std::string plot_group;
};

/// Executes a command without touching the file system.
RunResult execute(const RunConfig& cfg);
/// execute() plus output files; messages go to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

extern const std::vector<std::string> kCommands;

}  // namespace extrobin
