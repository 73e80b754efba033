#pragma once

#include <cmath>
#include <optional>

#include "utmheat/problem.hpp"
#include "utmheat/quadrature.hpp"
#include "utmheat/transforms.hpp"

namespace utmheat {

enum class RepresentationKind { Contour, Ehrenpreis, GaussKernel, SineTransform };

struct Representation {
    RepresentationKind kind = RepresentationKind::Contour;
    // Ehrenpreis horizon; must exceed every evaluation time.
    std::optional<double> horizon;
};

struct EvalResult {
    double value = 0.0;
    double est_error = 0.0;
    RepresentationKind representation = RepresentationKind::Contour;
    double x = 0.0;
    double t = 0.0;
};

enum class ContourPathPolicy {
    Auto,              // conditional below the x floor or when panel count explodes
    ForceDirect,       // plain Gamma quadrature regardless of cost
    ForceConditional,  // split evaluation regardless of x
};

struct EvalOptions {
    QuadratureConfig quad;
    ContourPathPolicy path = ContourPathPolicy::Auto;
    // Below this x the contour integrals always switch to the split
    // (Gamma_0 + boundary terms + remainder) evaluation; plain quadrature
    // radii explode as x -> 0+.
    double conditional_x_threshold = 0.05;
    // Auto also switches when the seeded panel estimate exceeds this.
    double direct_panel_budget = 4000.0;
    // > 0: fixed contour truncation radius instead of the tail-bound choice.
    double radius_override = 0.0;
};

// The contour representation of u(x, t) for x > 0, t > 0.
EvalResult eval_contour(const HalfLineProblem& problem, double x, double t,
                        const EvalOptions& opt = {});

// Ehrenpreis form: boundary measure taken at horizon T > t.
EvalResult eval_ehrenpreis(const HalfLineProblem& problem, double x, double t, double T,
                           const EvalOptions& opt = {});

// Image-kernel (Gauss-Weierstrass) form.
EvalResult eval_gauss(const HalfLineProblem& problem, double x, double t,
                      const EvalOptions& opt = {});

// Sine-transform form; exactly 0 at x = 0.
EvalResult eval_sine(const HalfLineProblem& problem, double x, double t,
                     const EvalOptions& opt = {});

// d^n u / dx^n via the contour representation, n <= 6.
EvalResult eval_dx(const HalfLineProblem& problem, int n, double x, double t,
                   const EvalOptions& opt = {});

// d^n u / dt^n via the horizon form, 0 < t < T, n <= 3.
EvalResult eval_dt(const HalfLineProblem& problem, int n, double x, double t, double T,
                   const EvalOptions& opt = {});

// The contour representation evaluated literally at x = 0 (generalized
// integrals); equals g0(t)/2.
EvalResult eval_contour_at_x0(const HalfLineProblem& problem, double t,
                              const EvalOptions& opt = {});

// The Ehrenpreis form at x = 0; equals g0(t).
EvalResult eval_ehrenpreis_at_x0(const HalfLineProblem& problem, double t, double T,
                                 const EvalOptions& opt = {});

EvalResult eval_representation(const HalfLineProblem& problem, const Representation& rep,
                               double x, double t, const EvalOptions& opt = {});

// Pre-split conditional decompositions of the two Gamma integrands, exposed
// for the generalized evaluations and their tests.
ConditionalGammaIntegrand initial_term_decomposition(const HalfLineProblem& problem,
                                                     int power, double x, double t,
                                                     int depth);
ConditionalGammaIntegrand boundary_term_decomposition(const HalfLineProblem& problem,
                                                      int power, double x, double t,
                                                      double horizon, int depth);

// Crude upper bound for int_0^T |g0|, used to scale truncation targets.
double g0_abs_bound(const HalfLineProblem& problem, double T);

// Single-pass composite-rule contour evaluation on uniformly spaced panels;
// the node-count knob for refinement studies (no adaptivity, no estimate).
EvalResult eval_contour_fixed(const HalfLineProblem& problem, double x, double t,
                              int subdivisions, int gl_order = 3);

}  // namespace utmheat
