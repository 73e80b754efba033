#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "utmheat/problem.hpp"
#include "utmheat/representations.hpp"

namespace utmheat {

struct TraceResult {
    double value = 0.0;
    // (parameter, approximant) along the strictly decreasing geometric grid.
    std::vector<std::pair<double, double>> approximants;
    double est_error = 0.0;
    bool converged = false;
};

// g_n(t) = lim_{x->0+} d^n u/dx^n at fixed t, by Richardson extrapolation over
// x_j = x0 2^{-j}.
TraceResult trace_x_to_0(const HalfLineProblem& problem, int n, double t,
                         const EvalOptions& opt = {}, double x0 = 0.5, int levels = 9);

// u_n(x) = lim_{t->0+} d^n u/dt^n at fixed x, over t_j = t0 2^{-j} with the
// horizon form at horizon T.
TraceResult trace_t_to_0(const HalfLineProblem& problem, int n, double x,
                         const EvalOptions& opt = {}, double t0 = 0.25, int levels = 9,
                         double T = 1.0);

enum class CornerPath { Diagonal, Parabolic, Flat };

struct CornerPathResult {
    CornerPath path;
    TraceResult trace;
};

struct CornerReport {
    int k = 0;
    std::vector<CornerPathResult> paths;
    int compat_order = -1;
    // d^k u0/dx^k|_0 when k <= 2 compat_order + 1; no prediction otherwise.
    std::optional<double> predicted_limit;
    bool agrees = false;
};

// Corner limits of d^k u/dx^k along the diagonal (x = t = h), parabolic
// (x = h, t = h^2) and flat (x = h^2, t = h) approach paths, h_j = h0 2^{-j}.
CornerReport corner_limit(const HalfLineProblem& problem, int k,
                          const EvalOptions& opt = {}, double h0 = 0.25, int levels = 7);

const char* corner_path_name(CornerPath p);

struct ChainCheckRow {
    int ell = 0;
    double t = 0.0;
    double dgdt = 0.0;    // d/dt of the order-(2l-1) trace
    double g_next = 0.0;  // order-(2l+1) trace
    double mismatch = 0.0;
};

struct ChainCheckReport {
    std::vector<ChainCheckRow> rows;
    double max_mismatch = 0.0;
};

// Verifies d/dt g_{2l-1}(t) = g_{2l+1}(t) for l = 1..n at the sample times,
// differentiating the trace numerically.
ChainCheckReport trace_chain_check(const HalfLineProblem& problem, int n,
                                   const EvalOptions& opt = {},
                                   std::vector<double> times = {0.2, 0.5, 1.0});

struct DecayRow {
    double x = 0.0;
    double weighted = 0.0;  // x^m |d^n u/dx^n|
    double est_error = 0.0;
};

// Profile of x^m |d^n u/dx^n (x, t)| over the given abscissas; n = 0 goes
// through the image-kernel form whose values stay relatively accurate far out.
std::vector<DecayRow> decay_profile(const HalfLineProblem& problem, int m, int n, double t,
                                    const std::vector<double>& xs,
                                    const EvalOptions& opt = {});

}  // namespace utmheat
