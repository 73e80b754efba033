#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "utmheat/errors.hpp"
#include "utmheat/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    int jobs = 1;
    bool plot_script = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration file")->required();
    cmd->add_option("--out", args.out_path, "CSV output path (default from config)");
    cmd->add_option("--jobs", args.jobs, "worker threads for grid points")
        ->check(CLI::Range(1, 256));
    cmd->add_flag("--plot-script", args.plot_script,
                  "also write a gnuplot script next to the CSV");
}

int write_output(const std::string& subcommand, const utmheat::CsvTable& table,
                 const utmheat::RunConfig& cfg, const CommonArgs& args) {
    const std::string csv = table.to_string();
    std::string path = !args.out_path.empty() ? args.out_path : cfg.out_path;
    if (path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(path);
        if (!out) {
            std::cerr << "error: cannot write " << path << "\n";
            return kExitConfig;
        }
        out << csv;
        std::cerr << subcommand << ": wrote " << table.rows.size() << " rows to " << path
                  << "\n";
        if (args.plot_script) {
            const std::string script_path = path + ".gp";
            std::ofstream gp(script_path);
            gp << utmheat::plot_script(subcommand, path);
            std::cerr << subcommand << ": wrote plot script " << script_path << "\n";
        }
    }
    return kExitOk;
}

int run_subcommand(const std::string& name, const CommonArgs& args) {
    utmheat::RunConfig cfg;
    try {
        cfg = utmheat::load_run_config(args.config_path);
    } catch (const utmheat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        if (name == "eval") return write_output(name, utmheat::cmd_eval(cfg, args.jobs), cfg, args);
        if (name == "compare") {
            utmheat::CompareSummary summary;
            const int rc =
                write_output(name, utmheat::cmd_compare(cfg, &summary, args.jobs), cfg, args);
            std::cerr << "compare: max_spread=" << utmheat::format_real(summary.max_spread)
                      << " mean_spread=" << utmheat::format_real(summary.mean_spread)
                      << " max_pde_residual="
                      << utmheat::format_real(summary.max_residual) << "\n";
            return rc;
        }
        if (name == "trace") return write_output(name, utmheat::cmd_trace(cfg, args.jobs), cfg, args);
        if (name == "corner")
            return write_output(name, utmheat::cmd_corner(cfg, args.jobs), cfg, args);
        if (name == "convergence")
            return write_output(name, utmheat::cmd_convergence(cfg, args.jobs), cfg, args);
    } catch (const utmheat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const utmheat::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    std::cerr << "unknown subcommand " << name << "\n";
    return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-line heat equation via unified-transform representations"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> subs = {
        {"eval", "evaluate representations on the configured grid"},
        {"compare", "pairwise representation differences and PDE residual"},
        {"trace", "boundary traces by Richardson extrapolation"},
        {"corner", "corner limits along three approach paths"},
        {"convergence", "node- and radius-refinement studies"},
    };
    std::vector<std::pair<CLI::App*, std::shared_ptr<CommonArgs>>> cmds;
    for (const auto& [name, desc] : subs) {
        auto args = std::make_shared<CommonArgs>();
        CLI::App* cmd = app.add_subcommand(name, desc);
        add_common(cmd, *args);
        cmds.emplace_back(cmd, args);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    for (std::size_t i = 0; i < cmds.size(); ++i) {
        if (cmds[i].first->parsed())
            return run_subcommand(subs[i].first, *cmds[i].second);
    }
    return kExitConfig;
}
