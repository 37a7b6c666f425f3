// extrobin: drivers for the exterior Robin eigenvalue experiments.
//
//   extrobin ball --d 3 --R 1 --alpha -1
//   extrobin scan-thm1 --perimeter 6.2831853 --alphas -0.5,-1,-2 --shapes ellipse:1.5,ellipse:2
//   extrobin asymptotics --d 2 --R 1 --alpha-grid -10,-20,-40
//
// Exit status: 0 success, 2 an asserted inequality failed, 1 usage error.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <string>

#include "extrobin/experiments.hpp"

namespace {

struct OptionSpec {
    const char* name;
    const char* help;
};

// Options per command; every value is passed through as text and validated by the core.
const std::map<std::string, std::vector<OptionSpec>>& command_options() {
    static const std::map<std::string, std::vector<OptionSpec>> table = {
        {"ball",
         {{"d", "dimension (>= 2)"},
          {"R", "ball radius (default 1)"},
          {"alpha", "boundary coupling"},
          {"alphas", "comma-separated couplings"}}},
        {"effective",
         {{"shape", "planar shape ids, e.g. disk, disks:3, ellipse:2"},
          {"body", "body ids, e.g. sphere, spheroid:1.5, perturbed:7"},
          {"random-bodies", "append this many perturbed spheres"},
          {"seed", "first seed for --random-bodies (default 1)"},
          {"file", "shape file"},
          {"d", "dimension for bodies (default 3)"},
          {"alpha", "boundary coupling"},
          {"alphas", "comma-separated couplings"},
          {"T", "truncation point (automatic when omitted)"},
          {"n", "coarsest number of cells (default 128)"},
          {"grading", "cell-width ratio on a 100-cell mesh (default 1.05)"},
          {"richardson", "extrapolate over n, 2n, 4n (default true)"}}},
        {"geometry",
         {{"shape", "planar shape ids"},
          {"body", "body ids"},
          {"random-bodies", "append this many perturbed spheres"},
          {"seed", "first seed for --random-bodies (default 1)"},
          {"file", "shape file"},
          {"d", "dimension for bodies (default 3)"}}},
        {"validate2d",
         {{"shape", "one convex planar shape id"},
          {"file", "shape file with one [curve] section"},
          {"alpha", "boundary coupling"},
          {"n-s", "arclength cells on the fine grid (default 256)"},
          {"n-t", "normal cells on the fine grid (default 400)"},
          {"T2d", "truncation distance (default 10 / k_est)"},
          {"grading2d", "cell-width ratio on a 100-cell mesh (default 1.05)"},
          {"solver", "ldlt or pcg (default ldlt)"}}},
        {"scan-thm1",
         {{"shapes", "planar shape ids"},
          {"file", "shape file"},
          {"perimeter", "rescale so that |boundary| / N equals this"},
          {"alpha", "boundary coupling"},
          {"alphas", "comma-separated couplings"},
          {"validate", "also run the 2D validator on convex single curves (default true)"},
          {"n-s", "validator arclength cells"},
          {"n-t", "validator normal cells"},
          {"T2d", "validator truncation distance"},
          {"grading2d", "validator grading"},
          {"solver", "ldlt or pcg"},
          {"T", "reduced-problem truncation point"},
          {"n", "reduced-problem coarsest cells"},
          {"grading", "reduced-problem grading"},
          {"richardson", "reduced-problem extrapolation"}}},
        {"scan-thm2",
         {{"bodies", "body ids"},
          {"random-bodies", "append this many perturbed spheres"},
          {"seed", "first seed for --random-bodies (default 1)"},
          {"file", "shape file"},
          {"d", "dimension (default 3)"},
          {"target", "boundary average of M^{d-1} after rescaling (default 1)"},
          {"alpha", "boundary coupling"},
          {"alphas", "comma-separated couplings"},
          {"T", "truncation point"},
          {"n", "coarsest cells"},
          {"grading", "grading"},
          {"richardson", "extrapolation"}}},
        {"asymptotics",
         {{"d", "dimension (default 2)"},
          {"R", "ball radius (default 1); the larger radius with --sharpness-r"},
          {"alpha-grid", "comma-separated couplings"},
          {"sharpness-r", "tabulate N disks of this radius against the ball of radius R"}}},
    };
    return table;
}

std::string join_argv(int argc, char** argv) {
    std::string s = "extrobin";
    for (int i = 1; i < argc; ++i) {
        s += ' ';
        s += argv[i];
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lowest Robin eigenvalues in exteriors of compact sets"};
    app.set_version_flag("--version", extrobin::library_version());
    app.set_config("--config", "", "INI/TOML file with one section per command; flags override it");
    app.require_subcommand(1);

    extrobin::RunConfig cfg;
    cfg.command_line = join_argv(argc, argv);
    std::map<std::string, std::map<std::string, std::string>> values;

    for (const auto& [command, options] : command_options()) {
        CLI::App* sub = app.add_subcommand(command);
        sub->add_option("-o,--output", cfg.output, "write the table to this file instead of stdout");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--plot", cfg.plot, "also write <output>.py, a matplotlib script for the data");
        for (const auto& opt : options) {
            const std::string key = opt.name;
            const std::string flag = key.size() == 1 ? "-" + key + ",--" + key : "--" + key;
            sub->add_option_function<std::string>(
                   flag, [&values, command, key](const std::string& v) { values[command][key] = v; },
                   opt.help)
                ->allow_extra_args(false);
        }
        sub->callback([&cfg, &values, command] {
            cfg.command = command;
            cfg.params = values[command];
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    return extrobin::run(cfg, std::cout, std::cerr);
}
