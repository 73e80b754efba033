#include "utmheat/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "utmheat/boundary.hpp"
#include "utmheat/errors.hpp"

namespace utmheat {

namespace {

// Runs tasks 0..n-1 on a small pool; each task writes its own result slot, so
// output order is independent of the job count.
void run_indexed(int n, int jobs, const std::function<void(int)>& task) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string CsvTable::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

CsvTable cmd_eval(const RunConfig& cfg, int jobs) {
    const EvalOptions opt = cfg.eval_options();
    const double T = cfg.effective_horizon();
    struct Cell {
        double x, t;
        RepresentationKind rep;
        EvalResult result;
    };
    std::vector<Cell> cells;
    for (double x : cfg.xs)
        for (double t : cfg.ts)
            for (RepresentationKind rep : cfg.representations)
                cells.push_back({x, t, rep, {}});
    run_indexed(static_cast<int>(cells.size()), jobs, [&](int i) {
        Cell& c = cells[i];
        Representation rep{c.rep, {}};
        if (c.rep == RepresentationKind::Ehrenpreis) rep.horizon = T;
        c.result = eval_representation(cfg.problem, rep, c.x, c.t, opt);
    });
    CsvTable table;
    table.header = {"x", "t", "representation", "value", "est_error"};
    for (const Cell& c : cells)
        table.rows.push_back({format_real(c.x), format_real(c.t),
                              representation_name(c.rep), format_real(c.result.value),
                              format_real(c.result.est_error)});
    return table;
}

CsvTable cmd_compare(const RunConfig& cfg, CompareSummary* summary, int jobs) {
    const EvalOptions opt = cfg.eval_options();
    const double T = cfg.effective_horizon();
    struct Cell {
        double x, t;
        std::vector<EvalResult> values;
        double spread = 0.0;
        double residual = 0.0;
        double residual_err = 0.0;
    };
    std::vector<Cell> cells;
    for (double x : cfg.xs)
        for (double t : cfg.ts) cells.push_back({x, t, {}, 0.0, 0.0, 0.0});
    run_indexed(static_cast<int>(cells.size()), jobs, [&](int i) {
        Cell& c = cells[i];
        for (RepresentationKind kind : cfg.representations) {
            Representation rep{kind, {}};
            if (kind == RepresentationKind::Ehrenpreis) rep.horizon = T;
            c.values.push_back(eval_representation(cfg.problem, rep, c.x, c.t, opt));
        }
        for (std::size_t a = 0; a < c.values.size(); ++a)
            for (std::size_t b = a + 1; b < c.values.size(); ++b)
                c.spread = std::max(c.spread,
                                    std::abs(c.values[a].value - c.values[b].value));
        const EvalResult ut = eval_dt(cfg.problem, 1, c.x, c.t, T, opt);
        const EvalResult uxx = eval_dx(cfg.problem, 2, c.x, c.t, opt);
        c.residual = ut.value - uxx.value;
        c.residual_err = ut.est_error + uxx.est_error;
    });
    CsvTable table;
    table.header = {"x", "t"};
    for (RepresentationKind kind : cfg.representations) {
        table.header.push_back(representation_name(kind));
        table.header.push_back(std::string(representation_name(kind)) + "_err");
    }
    table.header.push_back("max_spread");
    table.header.push_back("pde_residual");
    table.header.push_back("pde_residual_err");
    double max_spread = 0.0, sum_spread = 0.0, max_res = 0.0;
    for (const Cell& c : cells) {
        std::vector<std::string> row = {format_real(c.x), format_real(c.t)};
        for (const EvalResult& r : c.values) {
            row.push_back(format_real(r.value));
            row.push_back(format_real(r.est_error));
        }
        row.push_back(format_real(c.spread));
        row.push_back(format_real(c.residual));
        row.push_back(format_real(c.residual_err));
        table.rows.push_back(std::move(row));
        max_spread = std::max(max_spread, c.spread);
        sum_spread += c.spread;
        max_res = std::max(max_res, std::abs(c.residual));
    }
    if (summary) {
        summary->max_spread = max_spread;
        summary->mean_spread = cells.empty() ? 0.0 : sum_spread / cells.size();
        summary->max_residual = max_res;
    }
    return table;
}

CsvTable cmd_trace(const RunConfig& cfg, int jobs) {
    const EvalOptions opt = cfg.eval_options();
    std::vector<TraceSpec> specs = cfg.traces;
    if (specs.empty()) {
        specs.push_back({true, 0, 1.0});
        specs.push_back({false, 0, 1.0});
    }
    const double T = cfg.effective_horizon();
    std::vector<TraceResult> results(specs.size());
    run_indexed(static_cast<int>(specs.size()), jobs, [&](int i) {
        const TraceSpec& s = specs[i];
        results[i] = s.x_to_zero
                         ? trace_x_to_0(cfg.problem, s.order, s.anchor, opt)
                         : trace_t_to_0(cfg.problem, s.order, s.anchor, opt, 0.25, 9,
                                        std::max(T, 0.5));
    });
    CsvTable table;
    table.header = {"direction", "order", "anchor", "value", "est_error", "converged"};
    for (std::size_t i = 0; i < specs.size(); ++i) {
        table.rows.push_back({specs[i].x_to_zero ? "x_to_0" : "t_to_0",
                              std::to_string(specs[i].order), format_real(specs[i].anchor),
                              format_real(results[i].value),
                              format_real(results[i].est_error),
                              results[i].converged ? "true" : "false"});
    }
    return table;
}

CsvTable cmd_corner(const RunConfig& cfg, int jobs) {
    const EvalOptions opt = cfg.eval_options();
    std::vector<CornerReport> reports(cfg.corner_orders.size());
    run_indexed(static_cast<int>(cfg.corner_orders.size()), jobs, [&](int i) {
        reports[i] = corner_limit(cfg.problem, cfg.corner_orders[i], opt);
    });
    CsvTable table;
    table.header = {"k",          "path",         "limit",  "est_error",
                    "converged",  "compat_order", "predicted", "agrees"};
    for (const CornerReport& rep : reports) {
        for (const CornerPathResult& pr : rep.paths) {
            table.rows.push_back(
                {std::to_string(rep.k), corner_path_name(pr.path),
                 format_real(pr.trace.value), format_real(pr.trace.est_error),
                 pr.trace.converged ? "true" : "false", std::to_string(rep.compat_order),
                 rep.predicted_limit ? format_real(*rep.predicted_limit) : "none",
                 rep.predicted_limit ? (rep.agrees ? "true" : "false") : "n/a"});
        }
    }
    return table;
}

CsvTable cmd_convergence(const RunConfig& cfg, int jobs) {
    (void)jobs;  // the study is a short serial sweep
    const double x = cfg.conv_x, t = cfg.conv_t;
    CsvTable table;
    table.header = {"study", "level", "parameter", "value", "change_from_prev",
                    "tail_bound"};

    // Node-doubling study: each level halves the composite-rule panel widths.
    double prev = 0.0;
    for (int level = 0; level <= cfg.conv_doublings; ++level) {
        const int subdivisions = 1 << level;
        const EvalResult r = eval_contour_fixed(cfg.problem, x, t, subdivisions);
        const double change = level == 0 ? 0.0 : std::abs(r.value - prev);
        table.rows.push_back({"nodes", std::to_string(level), std::to_string(subdivisions),
                              format_real(r.value), format_real(change), ""});
        prev = r.value;
    }

    // Radius-doubling study against the analytic tail bound.
    EvalOptions opt = cfg.eval_options();
    const double R0 = cfg.radius_override > 0.0 ? cfg.radius_override
                                                : 0.5 * contour_radius_for(x, 1, 1e-10);
    prev = 0.0;
    for (int level = 0; level <= cfg.conv_doublings; ++level) {
        opt.radius_override = R0 * (1 << level);
        const EvalResult r = eval_contour(cfg.problem, x, t, opt);
        const double change = level == 0 ? 0.0 : std::abs(r.value - prev);
        const double bound =
            level == 0 ? 0.0
                       : gamma_tail_bound(x, R0 * (1 << (level - 1)), 1) *
                             std::max({1.0, cfg.problem.u0.is_zero()
                                                ? 0.0
                                                : cfg.problem.u0.abs_integral(),
                                       g0_abs_bound(cfg.problem, t)});
        table.rows.push_back({"radius", std::to_string(level),
                              format_real(opt.radius_override), format_real(r.value),
                              format_real(change),
                              level == 0 ? "" : format_real(bound)});
        prev = r.value;
    }
    return table;
}

std::string plot_script(const std::string& subcommand, const std::string& csv_path) {
    std::ostringstream os;
    os << "set datafile separator ','\n";
    os << "set key autotitle columnhead\n";
    os << "set grid\n";
    if (subcommand == "eval" || subcommand == "compare") {
        os << "set logscale y\n";
        os << "set xlabel 'x'\n";
        os << "set ylabel 'value'\n";
        os << "plot '" << csv_path << "' using 1:4 with points\n";
    } else if (subcommand == "trace") {
        os << "set xlabel 'anchor'\n";
        os << "plot '" << csv_path << "' using 3:4 with points\n";
    } else if (subcommand == "corner") {
        os << "set xlabel 'k'\n";
        os << "plot '" << csv_path << "' using 1:3 with points\n";
    } else {
        os << "set logscale y\n";
        os << "set xlabel 'level'\n";
        os << "plot '" << csv_path << "' using 2:5 with linespoints\n";
    }
    return os.str();
}

}  // namespace utmheat
