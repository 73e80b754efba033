#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "utmheat/problem.hpp"
#include "utmheat/quadrature.hpp"

namespace utmheat {

// Half-line Fourier transform int_0^inf u0(x) e^{-i lambda x} dx,
// defined for Im lambda <= 0. Closed forms per family (the Gaussian family
// goes through the Faddeeva function).
Complex u0_hat(const HalfLineProblem& problem, Complex lambda);

// u0_hat(-lambda), defined for Im lambda >= 0.
Complex u0_hat_reflected(const HalfLineProblem& problem, Complex lambda);

// Numeric route: boundary terms to the given depth plus adaptive quadrature of
// the deferred derivative transform; cross-validates the closed forms.
Complex u0_hat_numeric(const HalfLineProblem& problem, Complex lambda, int depth,
                       const QuadratureConfig& cfg);

// Sine transform int_0^inf sin(lambda y) u0(y) dy for real lambda.
double u0_sine_transform(const HalfLineProblem& problem, double lambda);

// Boundary transform int_0^t e^{lambda^2 tau} g0(tau) dtau. May overflow for
// Re(lambda^2) t large; internal consumers use the damped/shifted forms.
Complex g0_tilde(const HalfLineProblem& problem, Complex lambda, double t);

// e^{-lambda^2 t} g0_tilde(lambda, t) computed without forming e^{lambda^2 t};
// requires Re(lambda^2) >= 0 so every factor has modulus <= 1.
Complex g0_tilde_damped(const HalfLineProblem& problem, Complex lambda, double t);

// int_0^T e^{lambda^2 (tau - t_damp)} g0(tau) dtau: the Ehrenpreis-form factor
// e^{-lambda^2 t} g0_tilde(lambda, T), stable on the contour where
// |e^{lambda^2 s}| = 1.
Complex g0_tilde_shifted(const HalfLineProblem& problem, Complex lambda, double t_damp,
                         double T);

// sqrt(pi/kappa) e^{-x^2/(4 kappa)}: the Fourier transform of e^{-kappa lambda^2}.
double gauss_fourier_kernel(double kappa, double x);

// (1/2pi) int e^{-eps lambda^2} e^{i lambda x} fhat(lambda) d lambda.
QuadratureResult fourier_invert_regularized(const ComplexFn& fhat, double x, double eps,
                                            const QuadratureConfig& cfg);

// Integration-by-parts expansion of a transform. depth = number of boundary
// terms kept; the remainder then decays like lambda^{-(depth+1)} for the
// initial-data transform and lambda^{-(2 depth + 2)} for the damped boundary
// transform.
struct IbpExpansion {
    enum class Kind { InitialTransform, BoundaryTransformDamped };
    Kind kind = Kind::InitialTransform;
    int depth = 0;
    // InitialTransform: terms_at_zero[n] = u0^{(n)}(0), contribution
    // u0^{(n)}(0)/(i lambda)^{n+1}.
    // BoundaryTransformDamped: pair contribution
    // (-1)^n [terms_at_upper[n] e^{lambda^2 (T - t)} - terms_at_zero[n] e^{-lambda^2 t}]
    //   / lambda^{2n+2}   (T = horizon, t = t_damp; plain damped form has T = t).
    std::vector<double> terms_at_zero;
    std::vector<double> terms_at_upper;
    double t_damp = 0.0;
    double horizon = 0.0;
    ComplexFn remainder;

    Complex terms_value(Complex lambda) const;
    Complex value(Complex lambda) const { return terms_value(lambda) + remainder(lambda); }
};

IbpExpansion u0_hat_expansion(const HalfLineProblem& problem, int depth);
IbpExpansion g0_damped_expansion(const HalfLineProblem& problem, int depth, double t_damp,
                                 double horizon);

}  // namespace utmheat
