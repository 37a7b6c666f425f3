#include "extrobin/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "extrobin/ball.hpp"
#include "extrobin/errors.hpp"
#include "extrobin/shape_io.hpp"

#ifndef EXTROBIN_VERSION
#define EXTROBIN_VERSION "unknown"
#endif

namespace extrobin {

const std::vector<std::string> kCommands = {"ball",      "effective", "geometry",   "validate2d",
                                            "scan-thm1", "scan-thm2", "asymptotics"};

namespace {

// Tolerances for the asserted inequalities (exit code 2 when exceeded).
constexpr double kValidatorSlack = 1e-4;
constexpr double kReducedSlack = 1e-6;
constexpr double kCurvatureSlack = 1e-10;
constexpr double kConservationTol = 1e-8;
constexpr double kLadderSlack = 1e-10;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Params {
public:
    explicit Params(const std::map<std::string, std::string>& p) : p_(p) {}

    bool has(const std::string& key) {
        used_.insert(key);
        return p_.count(key) > 0;
    }

    std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
        used_.insert(key);
        const auto it = p_.find(key);
        if (it != p_.end()) return it->second;
        if (fallback) return *fallback;
        throw UsageError("missing parameter --" + key);
    }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
        if (!has(key)) {
            if (fallback) return *fallback;
            throw UsageError("missing parameter --" + key);
        }
        return parse_number(key, p_.at(key));
    }

    int integer(const std::string& key, std::optional<int> fallback = std::nullopt) {
        const double v = number(key, fallback ? std::optional<double>(*fallback) : std::nullopt);
        if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError("--" + key + " must be an integer");
        return static_cast<int>(v);
    }

    bool flag(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const std::string& v = p_.at(key);
        if (v == "true" || v == "1" || v == "yes" || v.empty()) return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw UsageError("--" + key + " expects true or false");
    }

    std::vector<double> numbers(const std::string& key) {
        std::vector<double> out;
        for (const auto& item : list(key)) out.push_back(parse_number(key, item));
        return out;
    }

    std::vector<std::string> list(const std::string& key) {
        const std::string v = text(key);
        std::vector<std::string> out;
        std::string item;
        std::istringstream is(v);
        while (std::getline(is, item, ',')) {
            item.erase(0, item.find_first_not_of(" \t"));
            item.erase(item.find_last_not_of(" \t") + 1);
            if (item.empty()) throw UsageError("empty entry in --" + key);
            out.push_back(item);
        }
        if (out.empty()) throw UsageError("--" + key + " is empty");
        return out;
    }

    void reject_unused() const {
        for (const auto& [key, value] : p_)
            if (!used_.count(key)) throw UsageError("unknown parameter --" + key);
    }

private:
    static double parse_number(const std::string& key, const std::string& s) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::logic_error&) {
            throw UsageError("--" + key + ": not a number: '" + s + "'");
        }
    }

    const std::map<std::string, std::string>& p_;
    std::set<std::string> used_;
};

MultiCurve2D scale_multicurve(const MultiCurve2D& mc, double factor) {
    std::vector<Curve2D> parts;
    for (const auto& c : mc.components()) parts.push_back(c.scaled(factor));
    return MultiCurve2D(std::move(parts));
}

bool is_convex(const Curve2D& c) { return curve_metrics(c).min_curvature >= -1e-10; }

std::vector<double> alpha_list(Params& p) {
    if (p.has("alphas")) return p.numbers("alphas");
    return {p.number("alpha")};
}

TruncationConfig truncation(Params& p) {
    TruncationConfig cfg;
    if (p.has("T")) cfg.T = p.number("T");
    cfg.n = p.integer("n", cfg.n);
    cfg.grading = p.number("grading", cfg.grading);
    cfg.richardson = p.flag("richardson", cfg.richardson);
    cfg.validate();
    return cfg;
}

ValidationConfig validation(Params& p) {
    ValidationConfig cfg;
    cfg.n_s = p.integer("n-s", cfg.n_s);
    cfg.n_t = p.integer("n-t", cfg.n_t);
    if (p.has("T2d")) cfg.T = p.number("T2d");
    cfg.grading = p.number("grading2d", cfg.grading);
    const std::string solver = p.text("solver", std::string("ldlt"));
    if (solver == "ldlt")
        cfg.solver.solver = LinearSolver::ldlt;
    else if (solver == "pcg")
        cfg.solver.solver = LinearSolver::pcg;
    else
        throw UsageError("--solver must be ldlt or pcg");
    return cfg;
}

std::vector<NamedCurves> curve_inputs(Params& p, const std::string& list_key) {
    std::vector<NamedCurves> out;
    if (p.has("file")) {
        const std::string path = p.text("file");
        out.push_back({path, load_shape_file(path).multicurve()});
    }
    if (p.has(list_key))
        for (const auto& id : p.list(list_key)) out.push_back({id, parse_curve_spec(id)});
    if (out.empty()) throw UsageError("give --" + list_key + " or --file");
    return out;
}

std::vector<NamedBody> body_inputs(Params& p, const std::string& list_key, int d,
                                   std::optional<unsigned>& seed) {
    std::vector<NamedBody> out;
    if (p.has("file")) {
        const std::string path = p.text("file");
        const ShapeFile f = load_shape_file(path);
        for (std::size_t i = 0; i < f.bodies.size(); ++i)
            out.push_back({path + "#" + std::to_string(i), f.bodies[i]});
    }
    if (p.has(list_key))
        for (const auto& id : p.list(list_key)) out.push_back({id, parse_body_spec(id, d)});
    if (p.has("random-bodies")) {
        const int count = p.integer("random-bodies");
        const int s = p.integer("seed", 1);
        if (count < 0 || s < 0) throw UsageError("--random-bodies and --seed must be non-negative");
        seed = static_cast<unsigned>(s);
        for (int i = 0; i < count; ++i) {
            const std::string id = "perturbed:" + std::to_string(s + i);
            out.push_back({id, parse_body_spec(id, d)});
        }
    }
    if (out.empty()) throw UsageError("give --" + list_key + ", --random-bodies or --file");
    for (const auto& b : out)
        if (b.body.d() != d) throw UsageError("body '" + b.id + "' has a different dimension than --d");
    return out;
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

struct CommandOutput {
    Table table;
    std::vector<std::string> failures;
    std::optional<unsigned> seed;
    std::string plot_x;
    std::vector<std::string> plot_y;
    std::string plot_group;
};

CommandOutput cmd_ball(Params& p) {
    CommandOutput out;
    const int d = p.integer("d");
    const double R = p.number("R", 1.0);
    out.table.columns = {"d", "R", "alpha", "alpha_star", "lambda1", "k", "is_discrete"};
    for (double a : alpha_list(p)) {
        const BallSpectrum s = lambda1_ball({d, R, a});
        out.table.add_row({static_cast<long long>(d), R, a, s.alpha_star, s.lambda1, s.k, s.is_discrete});
    }
    out.plot_x = "alpha";
    out.plot_y = {"lambda1"};
    return out;
}

CommandOutput cmd_effective(Params& p) {
    CommandOutput out;
    const auto alphas = alpha_list(p);
    const TruncationConfig cfg = truncation(p);
    out.table.columns = {"shape", "d",        "alpha", "lambda", "raw_lambda", "residual", "T",
                         "n",     "essential_bottom", "truncation_warning", "ball_reference"};
    struct Input {
        std::string id;
        int d;
        EffectiveWeight w;
        double R;  // radius of the comparison ball
    };
    std::vector<Input> inputs;
    if (p.has("body") || p.has("random-bodies") || (p.has("file") && p.has("d"))) {
        const int d = p.integer("d", 3);
        for (const auto& b : body_inputs(p, "body", d, out.seed)) {
            const auto rep = axisym_curvatures(b.body);
            inputs.push_back({b.id, d, weight_from_steiner(steiner_polynomial(rep)),
                              std::pow(rep.M_total, -1.0 / (d - 1))});
        }
    } else {
        for (const auto& c : curve_inputs(p, "shape"))
            inputs.push_back({c.id, 2, weight_from_multicurve(c.shape),
                              multicurve_constraint(c.shape) / (2.0 * std::numbers::pi)});
    }
    for (const auto& in : inputs)
        for (double a : alphas) {
            const SpectralResult r = min_rayleigh(in.w, a, cfg);
            const double ref = lambda1_ball({in.d, in.R, a}).lambda1;
            out.table.add_row({in.id, static_cast<long long>(in.d), a, r.lambda, r.raw_lambda, r.residual,
                               r.T_used, static_cast<long long>(r.n_used), r.essential_bottom,
                               r.truncation_warning, ref});
            if (r.lambda > ref + kReducedSlack)
                out.failures.push_back(in.id + " alpha=" + format_number(a) + ": reduced value " +
                                       format_number(r.lambda) + " above ball " + format_number(ref));
        }
    out.plot_x = "alpha";
    out.plot_y = {"lambda", "ball_reference"};
    out.plot_group = "shape";
    return out;
}

CommandOutput cmd_geometry(Params& p) {
    CommandOutput out;
    out.table.columns = {"shape", "quantity", "value"};
    const bool bodies_mode = p.has("body") || p.has("random-bodies") || (p.has("file") && p.has("d"));
    if (bodies_mode) {
        const int d = p.integer("d", 3);
        for (const auto& b : body_inputs(p, "body", d, out.seed)) {
            const auto rep = axisym_curvatures(b.body);
            const auto margins = check_curvature_inequalities(rep);
            auto put = [&](const std::string& q, double v) { out.table.add_row({b.id, q, v}); };
            put("d", d);
            put("area", rep.area);
            for (int j = 1; j < d; ++j) put("M" + std::to_string(j) + "_avg", rep.Mj_avg[j]);
            put("M_total", rep.M_total);
            put("M_min", rep.M_min);
            put("M_max", rep.M_max);
            put("min_margin", margins.min_margin());
            if (d == 3) {
                const double gauss = rep.Mj_avg[2] * rep.area - 4.0 * std::numbers::pi;
                put("total_gauss_curvature_defect", gauss);
                if (std::abs(gauss) > kConservationTol)
                    out.failures.push_back(b.id + ": integral of M_2 differs from 4 pi by " + format_number(gauss));
            }
            if (margins.min_margin() < -kCurvatureSlack)
                out.failures.push_back(b.id + ": curvature inequality margin " +
                                       format_number(margins.min_margin()));
        }
        return out;
    }
    for (const auto& c : curve_inputs(p, "shape")) {
        int k = 0;
        for (const auto& comp : c.shape.components()) {
            const auto m = curve_metrics(comp);
            const std::string id = c.shape.count() > 1 ? c.id + "#" + std::to_string(k) : c.id;
            auto put = [&](const std::string& q, double v) { out.table.add_row({id, q, v}); };
            put("perimeter", m.perimeter);
            put("area", m.enclosed_area);
            put("total_curvature", m.total_curvature);
            put("min_curvature", m.min_curvature);
            put("max_curvature", m.max_curvature);
            const double defect = m.total_curvature - 2.0 * std::numbers::pi;
            if (std::abs(defect) > kConservationTol)
                out.failures.push_back(id + ": total curvature differs from 2 pi by " + format_number(defect));
            ++k;
        }
        out.table.add_row({c.id, std::string("constraint"), multicurve_constraint(c.shape)});
    }
    return out;
}

CommandOutput cmd_validate2d(Params& p) {
    CommandOutput out;
    const double alpha = p.number("alpha");
    const ValidationConfig cfg = validation(p);
    const auto inputs = curve_inputs(p, "shape");
    if (inputs.size() != 1 || inputs[0].shape.count() != 1)
        throw UsageError("validate2d takes exactly one single-component shape");
    const ValidationResult r = lambda1_exterior_2d(inputs[0].shape.components()[0], alpha, cfg);
    out.table.columns = {"n_s", "n_t", "T", "outer_bc", "lambda", "residual", "iterations"};
    for (const auto& row : r.refinement_table)
        out.table.add_row({static_cast<long long>(row.n_s), static_cast<long long>(row.n_t), row.T,
                           std::string(to_string(row.outer)), row.lambda, row.residual,
                           static_cast<long long>(row.iterations)});
    const auto& t = r.refinement_table;
    const double slack = kLadderSlack * std::max(1.0, std::abs(r.lambda_dirichlet));
    if (t[1].lambda > t[0].lambda + slack) out.failures.push_back("Dirichlet value grew under mesh refinement");
    if (t[2].lambda > t[1].lambda + slack) out.failures.push_back("Dirichlet value grew when T was enlarged");
    if (t[3].lambda > t[1].lambda + slack) out.failures.push_back("Neumann companion above the Dirichlet value");
    out.plot_x = "n_t";
    out.plot_y = {"lambda"};
    out.plot_group = "outer_bc";
    return out;
}

CommandOutput cmd_scan_thm1(Params& p) {
    CommandOutput out;
    Thm1ScanConfig cfg;
    if (p.has("perimeter")) cfg.perimeter = p.number("perimeter");
    cfg.validate = p.flag("validate", true);
    cfg.validation = validation(p);
    cfg.truncation = truncation(p);
    cfg.threads = scan_threads();
    const auto alphas = alpha_list(p);
    const auto rows = scan_thm1(curve_inputs(p, "shapes"), alphas, cfg);
    out.table.columns = {"shape", "alpha", "constraint", "bound", "validator", "ball_reference", "margin"};
    for (const auto& r : rows) {
        out.table.add_row({r.shape, r.alpha, r.constraint, r.bound, opt_cell(r.validator), r.ball_reference, r.margin});
        const double slack = r.validator ? kValidatorSlack : kReducedSlack;
        if (r.margin < -slack)
            out.failures.push_back(r.shape + " alpha=" + format_number(r.alpha) + ": margin " + format_number(r.margin));
    }
    out.plot_x = "alpha";
    out.plot_y = {"margin"};
    out.plot_group = "shape";
    return out;
}

CommandOutput cmd_scan_thm2(Params& p) {
    CommandOutput out;
    const int d = p.integer("d", 3);
    Thm2ScanConfig cfg;
    cfg.target = p.number("target", 1.0);
    cfg.truncation = truncation(p);
    cfg.threads = scan_threads();
    const auto alphas = alpha_list(p);
    const auto rows = scan_thm2(body_inputs(p, "bodies", d, out.seed), alphas, cfg);
    out.table.columns = {"shape",  "d",      "alpha",           "constraint",       "bound",
                         "ball_reference", "margin", "curvature_margin", "polynomial_margin"};
    for (const auto& r : rows) {
        out.table.add_row({r.row.shape, static_cast<long long>(r.d), r.row.alpha, r.row.constraint, r.row.bound,
                           r.row.ball_reference, r.row.margin, r.curvature_margin, r.polynomial_margin});
        const std::string tag = r.row.shape + " alpha=" + format_number(r.row.alpha) + ": ";
        if (r.row.margin < -kReducedSlack) out.failures.push_back(tag + "margin " + format_number(r.row.margin));
        if (r.curvature_margin < -kCurvatureSlack)
            out.failures.push_back(tag + "curvature margin " + format_number(r.curvature_margin));
        if (r.polynomial_margin < -kCurvatureSlack)
            out.failures.push_back(tag + "Steiner polynomial margin " + format_number(r.polynomial_margin));
    }
    out.plot_x = "alpha";
    out.plot_y = {"margin"};
    out.plot_group = "shape";
    return out;
}

CommandOutput cmd_asymptotics(Params& p) {
    CommandOutput out;
    const auto alphas = p.numbers("alpha-grid");
    if (p.has("sharpness-r")) {
        const double r = p.number("sharpness-r");
        const double R = p.number("R");
        const SharpnessTable s = emit_sharpness_example(r, R, alphas);
        out.table.columns = {"alpha",       "predictor_union", "predictor_ball", "predicted_difference",
                             "union_exact", "ball_exact",      "exact_difference", "reversed"};
        for (const auto& row : s.rows)
            out.table.add_row({row.alpha, row.predictor_union, row.predictor_ball, row.predicted_difference,
                               row.union_exact, row.ball_exact, row.exact_difference, row.reversed});
        out.plot_x = "alpha";
        out.plot_y = {"predicted_difference", "exact_difference"};
        return out;
    }
    const int d = p.integer("d", 2);
    const double R = p.number("R", 1.0);
    const auto rows = asymptotics(d, R, alphas);
    out.table.columns = {"alpha", "lambda1", "predictor", "scaled_remainder"};
    for (const auto& r : rows) out.table.add_row({r.alpha, r.lambda, r.predictor, r.scaled_remainder});
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].scaled_remainder < rows[i - 1].scaled_remainder))
            out.failures.push_back("scaled remainder not decreasing at alpha=" + format_number(rows[i].alpha));
    out.plot_x = "alpha";
    out.plot_y = {"scaled_remainder"};
    return out;
}

}  // namespace

std::string library_version() { return EXTROBIN_VERSION; }

int scan_threads() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("EXTROBIN_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, 256));
    }
    return static_cast<int>(hw);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<ScanRow> scan_thm1(const std::vector<NamedCurves>& shapes, const std::vector<double>& alphas,
                               const Thm1ScanConfig& cfg) {
    if (cfg.perimeter && !(*cfg.perimeter > 0.0)) throw DomainError("scan_thm1: perimeter must be positive");
    std::vector<MultiCurve2D> scaled;
    for (const auto& s : shapes)
        scaled.push_back(cfg.perimeter ? scale_multicurve(s.shape, *cfg.perimeter / multicurve_constraint(s.shape))
                                       : s.shape);
    std::vector<ScanRow> rows(shapes.size() * alphas.size());
    parallel_for(rows.size(), cfg.threads, [&](std::size_t cell) {
        const std::size_t si = cell / alphas.size();
        const double a = alphas[cell % alphas.size()];
        const MultiCurve2D& mc = scaled[si];
        ScanRow& r = rows[cell];
        r.shape = shapes[si].id;
        r.alpha = a;
        r.constraint = multicurve_constraint(mc);
        r.bound = min_rayleigh(weight_from_multicurve(mc), a, cfg.truncation).lambda;
        r.ball_reference = lambda1_ball({2, r.constraint / (2.0 * std::numbers::pi), a}).lambda1;
        if (cfg.validate && mc.count() == 1 && is_convex(mc.components()[0]))
            r.validator = lambda1_exterior_2d(mc.components()[0], a, cfg.validation).lambda_dirichlet;
        r.margin = r.ball_reference - (r.validator ? *r.validator : r.bound);
    });
    return rows;
}

double steiner_polynomial_margin(const SteinerPolynomial& p, double R, double t_max, int samples) {
    const SteinerPolynomial ball = ball_steiner_polynomial(p.d, R);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= samples; ++i) {
        // Denser near t = 0 where the two polynomials agree to first order.
        const double t = t_max * std::pow(static_cast<double>(i) / samples, 3.0);
        const double scale = std::max(1.0, std::abs(ball(t)));
        worst = std::min(worst, (ball(t) - p(t)) / scale);
    }
    return worst;
}

std::vector<Thm2ScanRow> scan_thm2(const std::vector<NamedBody>& bodies, const std::vector<double>& alphas,
                                   const Thm2ScanConfig& cfg) {
    if (!(cfg.target > 0.0)) throw DomainError("scan_thm2: target must be positive");
    std::vector<AxisymBody> scaled;
    for (const auto& b : bodies) {
        const auto rep = axisym_curvatures(b.body);
        scaled.push_back(b.body.scaled(scale_to_total_mean_curvature(rep, cfg.target)));
    }
    std::vector<Thm2ScanRow> rows(bodies.size() * alphas.size());
    parallel_for(rows.size(), cfg.threads, [&](std::size_t cell) {
        const std::size_t bi = cell / alphas.size();
        const double a = alphas[cell % alphas.size()];
        const AxisymBody& body = scaled[bi];
        const auto rep = axisym_curvatures(body);
        const Thm2Bound b = bound_thm2(body, a, cfg.truncation);
        Thm2ScanRow& out = rows[cell];
        out.d = body.d();
        out.row.shape = bodies[bi].id;
        out.row.alpha = a;
        out.row.constraint = b.M_total;
        out.row.bound = b.steiner.lambda;
        out.row.ball_reference = b.bound;
        out.row.margin = b.bound - b.steiner.lambda;
        out.curvature_margin = check_curvature_inequalities(rep).min_margin();
        out.polynomial_margin = steiner_polynomial_margin(steiner_polynomial(rep), b.R);
    });
    return rows;
}

std::vector<AsymptoticsRow> asymptotics(int d, double R, const std::vector<double>& alphas) {
    std::vector<AsymptoticsRow> rows;
    for (double a : alphas) {
        AsymptoticsRow r;
        r.alpha = a;
        r.lambda = lambda1_ball({d, R, a}).lambda1;
        r.predictor = asym_lambda(d, 1.0 / R, a);
        r.scaled_remainder = std::abs(r.lambda - r.predictor) / std::abs(a);
        rows.push_back(r);
    }
    return rows;
}

SharpnessTable emit_sharpness_example(double r, double R, const std::vector<double>& alpha_grid) {
    if (!(r > 0.0)) throw DomainError("emit_sharpness_example: r must be positive");
    if (!(R >= r)) throw DomainError("emit_sharpness_example: R must not be smaller than r");
    std::vector<double> grid = alpha_grid;
    for (double a : grid)
        if (!(a < 0.0)) throw DomainError("emit_sharpness_example: alphas must be negative");
    std::sort(grid.begin(), grid.end(), std::greater<>());
    SharpnessTable out;
    for (double a : grid) {
        SharpnessRow row;
        row.alpha = a;
        row.predictor_union = asym_lambda(2, 1.0 / r, a);
        row.predictor_ball = asym_lambda(2, 1.0 / R, a);
        row.predicted_difference = row.predictor_union - row.predictor_ball;
        row.union_exact = lambda1_ball({2, r, a}).lambda1;
        row.ball_exact = lambda1_ball({2, R, a}).lambda1;
        row.exact_difference = row.union_exact - row.ball_exact;
        row.reversed = row.predicted_difference > 0.0;
        out.rows.push_back(row);
    }
    for (std::size_t i = out.rows.size(); i-- > 0;) {
        if (!out.rows[i].reversed) break;
        out.reversal_alpha = out.rows[i].alpha;
    }
    return out;
}

RunResult execute(const RunConfig& cfg) {
    RunResult result;
    if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end()) {
        result.exit_code = 1;
        result.failures.push_back("unknown command '" + cfg.command + "'");
        return result;
    }
    if (cfg.format != "csv" && cfg.format != "json") {
        result.exit_code = 1;
        result.failures.push_back("format must be csv or json");
        return result;
    }
    CommandOutput out;
    try {
        Params p(cfg.params);
        if (cfg.command == "ball") out = cmd_ball(p);
        else if (cfg.command == "effective") out = cmd_effective(p);
        else if (cfg.command == "geometry") out = cmd_geometry(p);
        else if (cfg.command == "validate2d") out = cmd_validate2d(p);
        else if (cfg.command == "scan-thm1") out = cmd_scan_thm1(p);
        else if (cfg.command == "scan-thm2") out = cmd_scan_thm2(p);
        else out = cmd_asymptotics(p);
        p.reject_unused();
    } catch (const UsageError& e) {
        result.exit_code = 1;
        result.failures.push_back(e.what());
        return result;
    } catch (const ParseError& e) {
        result.exit_code = 1;
        result.failures.push_back(e.what());
        return result;
    } catch (const DomainError& e) {
        result.exit_code = 1;
        result.failures.push_back(e.what());
        return result;
    } catch (const GeometryError& e) {
        result.exit_code = 1;
        result.failures.push_back(e.what());
        return result;
    } catch (const AccuracyError& e) {
        // A computation that cannot certify its value counts as a failed validation.
        result.exit_code = 2;
        result.failures.push_back(e.what());
        return result;
    }
    result.table = std::move(out.table);
    result.failures = std::move(out.failures);
    result.exit_code = result.failures.empty() ? 0 : 2;
    const Provenance prov{cfg.command_line, out.seed, library_version()};
    result.rendered = cfg.format == "csv" ? to_csv(result.table, prov) : to_json(result.table, prov);
    result.plot_x = std::move(out.plot_x);
    result.plot_y = std::move(out.plot_y);
    result.plot_group = std::move(out.plot_group);
    return result;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    RunResult r = execute(cfg);
    for (const auto& f : r.failures) err << (r.exit_code == 1 ? "error: " : "FAIL: ") << f << '\n';
    if (r.exit_code == 1) return 1;
    if (r.rendered.empty()) return r.exit_code;
    if (cfg.output.empty()) {
        out << r.rendered;
        return r.exit_code;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
        err << "error: cannot write " << cfg.output << '\n';
        return 1;
    }
    file << r.rendered;
    if (cfg.plot) {
        if (cfg.format != "csv") {
            err << "note: plot scripts read CSV; no script written for JSON output\n";
        } else if (!r.plot_x.empty()) {
            std::ofstream script(cfg.output + ".py", std::ios::binary);
            script << plot_script(cfg.output, r.plot_x, r.plot_y, r.plot_group);
        }
    }
    return r.exit_code;
}

}  // namespace extrobin
