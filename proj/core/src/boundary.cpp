#include "utmheat/boundary.hpp"

#include <cmath>

#include "utmheat/errors.hpp"
#include "utmheat/richardson.hpp"

namespace utmheat {

namespace {

TraceResult extrapolate_sequence(const std::vector<std::pair<double, double>>& approx,
                                 const std::vector<double>& noise) {
    std::vector<double> values;
    values.reserve(approx.size());
    for (const auto& [h, v] : approx) values.push_back(v);
    const RichardsonResult r = richardson_extrapolate(values, 2.0, noise);
    TraceResult out;
    out.value = r.value;
    out.est_error = r.est_error;
    out.converged = r.converged;
    out.approximants = approx;
    return out;
}

}  // namespace

TraceResult trace_x_to_0(const HalfLineProblem& problem, int n, double t,
                         const EvalOptions& opt, double x0, int levels) {
    if (t <= 0.0) throw DomainError("trace_x_to_0: requires t > 0");
    std::vector<std::pair<double, double>> approx;
    std::vector<double> noise;
    double x = x0;
    for (int j = 0; j < levels; ++j, x *= 0.5) {
        const EvalResult r = eval_dx(problem, n, x, t, opt);
        approx.emplace_back(x, r.value);
        noise.push_back(r.est_error);
    }
    return extrapolate_sequence(approx, noise);
}

TraceResult trace_t_to_0(const HalfLineProblem& problem, int n, double x,
                         const EvalOptions& opt, double t0, int levels, double T) {
    if (x <= 0.0) throw DomainError("trace_t_to_0: requires x > 0");
    if (T <= t0) throw HorizonError("trace_t_to_0: horizon must exceed t0");
    std::vector<std::pair<double, double>> approx;
    std::vector<double> noise;
    double t = t0;
    for (int j = 0; j < levels; ++j, t *= 0.5) {
        const EvalResult r = eval_dt(problem, n, x, t, T, opt);
        approx.emplace_back(t, r.value);
        noise.push_back(r.est_error);
    }
    return extrapolate_sequence(approx, noise);
}

const char* corner_path_name(CornerPath p) {
    switch (p) {
        case CornerPath::Diagonal: return "diagonal";
        case CornerPath::Parabolic: return "parabolic";
        case CornerPath::Flat: return "flat";
    }
    return "?";
}

CornerReport corner_limit(const HalfLineProblem& problem, int k, const EvalOptions& opt,
                          double h0, int levels) {
    if (k < 0 || k > 6) throw UnsupportedOrder("corner_limit: requires 0 <= k <= 6");
    CornerReport report;
    report.k = k;
    for (CornerPath path : {CornerPath::Diagonal, CornerPath::Parabolic, CornerPath::Flat}) {
        std::vector<std::pair<double, double>> approx;
        std::vector<double> noise;
        double h = h0;
        for (int j = 0; j < levels; ++j, h *= 0.5) {
            double x = h, t = h;
            if (path == CornerPath::Parabolic) t = h * h;
            if (path == CornerPath::Flat) x = h * h;
            const EvalResult r = eval_dx(problem, k, x, t, opt);
            approx.emplace_back(h, r.value);
            noise.push_back(r.est_error);
        }
        report.paths.push_back({path, extrapolate_sequence(approx, noise)});
    }
    const int max_n = std::min(k + 2, DataFamily::kDerivativeCap / 2);
    const CompatibilityReport compat = check_compatibility(problem, max_n);
    report.compat_order = compat.order;
    if (report.compat_order >= 0 && k <= 2 * report.compat_order + 1) {
        report.predicted_limit = problem.u0.eval(k, 0.0);
        report.agrees = true;
        for (const auto& pr : report.paths) {
            const double tol = 10.0 * pr.trace.est_error + 1e-9;
            if (std::abs(pr.trace.value - *report.predicted_limit) > tol)
                report.agrees = false;
        }
    }
    return report;
}

ChainCheckReport trace_chain_check(const HalfLineProblem& problem, int n,
                                   const EvalOptions& opt, std::vector<double> times) {
    ChainCheckReport report;
    for (int ell = 1; ell <= n; ++ell) {
        for (double t : times) {
            const double h = std::min(0.02, t / 3.0);
            auto g_low = [&](double tt) {
                return trace_x_to_0(problem, 2 * ell - 1, tt, opt).value;
            };
            // 4th-order central difference of the odd trace
            const double dgdt = (-g_low(t + 2 * h) + 8.0 * g_low(t + h) -
                                 8.0 * g_low(t - h) + g_low(t - 2 * h)) /
                                (12.0 * h);
            const double g_next = trace_x_to_0(problem, 2 * ell + 1, t, opt).value;
            ChainCheckRow row;
            row.ell = ell;
            row.t = t;
            row.dgdt = dgdt;
            row.g_next = g_next;
            row.mismatch = std::abs(dgdt - g_next);
            report.max_mismatch = std::max(report.max_mismatch, row.mismatch);
            report.rows.push_back(row);
        }
    }
    return report;
}

std::vector<DecayRow> decay_profile(const HalfLineProblem& problem, int m, int n, double t,
                                    const std::vector<double>& xs, const EvalOptions& opt) {
    std::vector<DecayRow> rows;
    for (double x : xs) {
        const EvalResult r = n == 0 ? eval_gauss(problem, x, t, opt)
                                    : eval_dx(problem, n, x, t, opt);
        DecayRow row;
        row.x = x;
        row.weighted = std::pow(x, m) * std::abs(r.value);
        row.est_error = std::pow(x, m) * r.est_error;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace utmheat
