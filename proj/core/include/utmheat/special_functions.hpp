#pragma once

#include <complex>

namespace utmheat::special {

// Complementary error function, series for small argument and a Laplace
// continued fraction beyond; validated against tabulated values.
double erfc_real(double x);

// Dawson integral D(x) = exp(-x^2) * int_0^x exp(t^2) dt.
double dawson(double x);

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), for Im z >= 0.
// Bounded on the closed upper half-plane.
std::complex<double> faddeeva_w(std::complex<double> z);

// Sine and cosine integrals Si(x) = int_0^x sin t / t dt,
// Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt, x > 0 for Ci.
double sine_integral(double x);
double cosine_integral(double x);

// G_k(s) = int_1^inf exp(i mu s) mu^{-k} dmu for s > 0, k >= 1.
// G_1 = -Ci(s) + i(pi/2 - Si(s)); higher k by upward recursion.
std::complex<double> oscillatory_power_tail(int k, double s);

// (exp(z) - 1)/z with a series branch near z = 0.
std::complex<double> expm1_over(std::complex<double> z);

}  // namespace utmheat::special
