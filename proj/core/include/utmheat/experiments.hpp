#pragma once

#include <string>
#include <vector>

#include "utmheat/run_config.hpp"

namespace utmheat {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string to_string() const;
};

std::string format_real(double v);  // 17 significant digits

// Grid evaluation: rows (x, t, representation, value, est_error).
CsvTable cmd_eval(const RunConfig& cfg, int jobs = 1);

struct CompareSummary {
    double max_spread = 0.0;
    double mean_spread = 0.0;
    double max_residual = 0.0;
};

// Pairwise representation differences plus the PDE residual
// d/dt u - d^2/dx^2 u per grid point.
CsvTable cmd_compare(const RunConfig& cfg, CompareSummary* summary = nullptr,
                     int jobs = 1);

// Boundary-trace extraction for the configured (direction, order, anchor).
CsvTable cmd_trace(const RunConfig& cfg, int jobs = 1);

// Corner limits along the three approach paths for each requested order.
CsvTable cmd_corner(const RunConfig& cfg, int jobs = 1);

// Node-doubling and radius-doubling refinement studies at (conv_x, conv_t).
CsvTable cmd_convergence(const RunConfig& cfg, int jobs = 1);

// gnuplot script that renders the CSV written for the given subcommand.
std::string plot_script(const std::string& subcommand, const std::string& csv_path);

}  // namespace utmheat
