#pragma once

#include <vector>

namespace utmheat {

struct RichardsonResult {
    double value = 0.0;
    double est_error = 0.0;
    bool converged = false;
};

// Extrapolates samples v_j = v(h0 ratio^{-j}) assuming an asymptotic expansion
// v(h) = v* + c1 h + c2 h^2 + ... . noise[j] bounds the evaluation error of
// v_j; the table stops deepening once increments fall below the amplified
// noise. converged requires the last three diagonal entries to agree within
// est_error.
RichardsonResult richardson_extrapolate(const std::vector<double>& values, double ratio,
                                        const std::vector<double>& noise);

}  // namespace utmheat
