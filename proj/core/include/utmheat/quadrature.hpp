#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace utmheat {

using Complex = std::complex<double>;

struct QuadratureConfig {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    int max_panels = 200000;
    int gl_order = 32;         // Gauss-Legendre nodes per panel
    int nodes_per_unit = 2;    // baseline seed density along contours
    bool adaptive = true;      // false: single pass over the seeded panels
    int ibp_depth = 3;         // integration-by-parts depth for conditional integrals
};

// Geometry of the contour Gamma = rays arg = 3pi/4 and pi/4, traversed from
// inf e^{3 pi i/4} to 0 and then 0 to inf e^{pi i /4}. radius truncates
// |lambda| <= radius; split_radius is the Gamma_0 / Gamma_1 boundary.
// osc_x / chirp are integrand phase-rate hints (e^{i lambda x} and
// e^{+-lambda^2 s} factors) used to seed panels.
struct ContourSpec {
    double radius = 40.0;
    int nodes_per_unit = 2;
    double split_radius = 1.0;
    double osc_x = 0.0;
    double chirp = 0.0;
};

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double est_error = 0.0;
};

using ComplexFn = std::function<Complex(Complex)>;
using RealParamFn = std::function<Complex(double)>;

// Adaptive composite Gauss-Legendre over the seeded edges. Edges must be
// strictly increasing; refinement bisects the worst panel until the combined
// error estimate meets max(abs_tol, rel_tol |value|).
QuadratureResult integrate_edges(const RealParamFn& f, std::vector<double> edges,
                                 const QuadratureConfig& cfg);

// Seed edges for [a, b] given a local phase rate |d phase/dr| = lin + 2 r chirp
// and a density cap; used by the contour and real-line integrators.
std::vector<double> seed_edges(double a, double b, double lin_rate, double chirp_rate,
                               int gl_order, int nodes_per_unit, double decay_rate = 0.0);

// Integral over the oriented contour Gamma truncated at |lambda| = radius.
// Requires integrand decay along the rays; throws NonDecayingIntegrand when
// the samples at the truncation radius are not negligible.
QuadratureResult integrate_gamma(const ComplexFn& f, const ContourSpec& spec,
                                 const QuadratureConfig& cfg);

// Integral over the two Gamma_0 radial segments (|lambda| <= split_radius).
QuadratureResult integrate_gamma0(const ComplexFn& f, const ContourSpec& spec,
                                  const QuadratureConfig& cfg);

// Real-line integral of a Gaussian-damped integrand: truncates where the
// e^{-lambda^2 t_damp} factor is negligible, with a decay probe beyond.
QuadratureResult integrate_real_damped(const ComplexFn& f, double t_damp,
                                       const QuadratureConfig& cfg, double osc_x = 0.0,
                                       int poly_degree = 0);

// Symmetric-truncation limit lim_{A->inf} int_{-A}^{A} f: evaluates the
// partial integrals over A_sequence and extrapolates; est_error reflects the
// sequence spread. Throws NoConvergence if the spread grows.
QuadratureResult integrate_real_symmetric(const ComplexFn& f, const QuadratureConfig& cfg,
                                          std::vector<double> A_sequence = {20, 40, 80, 160});

// Upper bound for |int_{Gamma, |lambda|>R} lambda^d e^{i lambda x} (bounded) d lambda|
// with sup |bounded| = 1, from int_R^inf r^d e^{-x r/sqrt(2)} dr over both rays.
double gamma_tail_bound(double x, double R, int poly_degree);

// Truncation radius R making gamma_tail_bound(x, R, d) <= tol.
double contour_radius_for(double x, int poly_degree, double tol);

// ---- Conditional (generalized) contour integrals ----------------------------

// One Gamma_1 boundary term coeff * lambda^power * e^{i lambda x} * phase with
// phase in {1, e^{-lambda^2 s}, e^{+lambda^2 s}}.
struct GammaBoundaryTerm {
    enum class Phase { None, Damp, Grow };
    Complex coeff{0.0, 0.0};
    int power = -1;
    Phase phase = Phase::None;
    double s = 0.0;
};

// Integrand pre-split for the generalized Gamma integral: the full integrand
// (integrated directly over Gamma_0), boundary terms whose Gamma_1 integrals
// have stable closed-form/deformed evaluations, and the remainder which must
// decay at least like |lambda|^{-remainder_decay} on Gamma_1.
struct ConditionalGammaIntegrand {
    ComplexFn full;
    std::vector<GammaBoundaryTerm> terms;
    ComplexFn remainder;
    double x = 0.0;
    int remainder_decay = 3;
    double chirp = 0.0;  // phase hint for the remainder quadrature
};

QuadratureResult integrate_gamma_conditional(const ConditionalGammaIntegrand& ig,
                                             const ContourSpec& spec,
                                             const QuadratureConfig& cfg);

// ---- Stable Gamma_1 boundary-term primitives --------------------------------
// All three are obtained by deforming Gamma_1 (the |lambda| >= 1 part of the
// contour) onto paths where the integrand decays, so they stay O(cost(1))
// uniformly as x -> 0+ and s -> 0+.

// int_{Gamma_1} lambda^j e^{i lambda x} d lambda. x > 0 for j >= 0; at x = 0
// the generalized (symmetric) value is returned, defined for j <= -1.
Complex gamma1_power_integral(int j, double x, const QuadratureConfig& cfg);

// int_{Gamma_1} lambda^j e^{i lambda x} e^{+lambda^2 s} d lambda, s > 0.
Complex gamma1_power_grow_integral(int j, double x, double s, const QuadratureConfig& cfg);

// int_{Gamma_1} lambda^j e^{i lambda x} e^{-lambda^2 s} d lambda, s > 0.
Complex gamma1_power_damp_integral(int j, double x, double s, const QuadratureConfig& cfg);

// The two lower unit arcs ([0, pi/4] and [3pi/4, pi]) of
// lambda^j e^{i lambda x - lambda^2 s}: the piece that closes the deformation
// of the damped Gamma_1 integral onto the real line.
Complex gamma1_damp_lower_arcs(int j, double x, double s, const QuadratureConfig& cfg);

// int_{|lambda| >= 1, real line} lambda^j e^{i lambda x - lambda^2 s} d lambda, s > 0.
QuadratureResult real_tail_power_integral(int j, double x, double s,
                                          const QuadratureConfig& cfg);

}  // namespace utmheat
