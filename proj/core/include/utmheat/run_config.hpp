#pragma once

#include <string>
#include <vector>

#include "utmheat/problem.hpp"
#include "utmheat/quadrature.hpp"
#include "utmheat/representations.hpp"

namespace utmheat {

struct TraceSpec {
    bool x_to_zero = true;  // false: t -> 0+
    int order = 0;
    double anchor = 1.0;  // the fixed t (x-trace) or fixed x (t-trace)
};

// Parsed and validated run configuration (INI-style sections). Unknown keys
// or sections are errors; every field is range-checked before use.
struct RunConfig {
    HalfLineProblem problem{DataFamily::constant(0.0), DataFamily::constant(0.0), ""};

    QuadratureConfig quad;
    double radius_override = 0.0;  // 0: choose per call from the tail bound

    std::vector<double> xs{0.1, 0.5, 1.0, 2.0, 5.0};
    std::vector<double> ts{0.1, 0.5, 1.0, 2.0};
    std::vector<RepresentationKind> representations{
        RepresentationKind::Contour, RepresentationKind::Ehrenpreis,
        RepresentationKind::GaussKernel, RepresentationKind::SineTransform};
    double horizon = 0.0;  // 0: max(ts) + 1

    std::vector<TraceSpec> traces;
    std::vector<int> corner_orders{0, 1, 2, 3, 4, 5};

    double conv_x = 1.0, conv_t = 1.0;
    int conv_doublings = 4;

    std::string out_path;

    double effective_horizon() const;
    EvalOptions eval_options() const;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

const char* representation_name(RepresentationKind kind);

}  // namespace utmheat
