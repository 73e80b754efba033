#include "utmheat/richardson.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace utmheat {

RichardsonResult richardson_extrapolate(const std::vector<double>& values, double ratio,
                                        const std::vector<double>& noise) {
    RichardsonResult out;
    const std::size_t n = values.size();
    if (n == 0) return out;
    double max_noise = 0.0;
    for (double e : noise) max_noise = std::max(max_noise, e);
    if (n == 1) {
        out.value = values[0];
        out.est_error = max_noise;
        return out;
    }

    // Neville table for expansions in integer powers of h.
    std::vector<std::vector<double>> T(n);
    for (std::size_t j = 0; j < n; ++j) {
        T[j].resize(j + 1);
        T[j][0] = values[j];
        double rk = 1.0;
        for (std::size_t k = 1; k <= j; ++k) {
            rk *= ratio;
            T[j][k] = T[j][k - 1] + (T[j][k - 1] - T[j - 1][k - 1]) / (rk - 1.0);
        }
    }
    // Noise amplification along column k.
    std::vector<double> amp(n, 1.0);
    {
        double rk = 1.0;
        for (std::size_t k = 1; k < n; ++k) {
            rk *= ratio;
            amp[k] = amp[k - 1] * (1.0 + 1.0 / (rk - 1.0));
        }
    }

    // Choose the table cell with the smallest settled increment. Sequences
    // converging faster than any tested power (boundary layers) settle in the
    // raw column; smooth power-law sequences settle deep in the table.
    std::size_t best_j = n - 1, best_k = 0;
    double best_score = std::numeric_limits<double>::infinity();
    const std::size_t k_max = n >= 3 ? n - 3 : 0;  // need three entries per column
    for (std::size_t k = 0; k <= k_max; ++k) {
        for (std::size_t j = std::max<std::size_t>(k + 1, 2); j < n; ++j) {
            const double inc = std::abs(T[j][k] - T[j - 1][k]);
            const double score = inc + amp[k] * max_noise;
            if (score < best_score) {
                best_score = score;
                best_j = j;
                best_k = k;
            }
        }
    }
    out.value = T[best_j][best_k];
    out.est_error = std::max(best_score, amp[best_k] * max_noise);
    if (out.est_error == 0.0) out.est_error = 1e-15 * (1.0 + std::abs(out.value));

    // Converged iff the last three entries of the chosen column are settling:
    // the newest increment must be a fraction of the previous one (or sit at
    // the noise floor). Oscillating or stalled sequences stay flagged.
    if (n >= 3) {
        const double d1 = std::abs(T[n - 1][best_k] - T[n - 2][best_k]);
        const double d2 = std::abs(T[n - 2][best_k] - T[n - 3][best_k]);
        out.converged = d1 <= 0.75 * d2 + amp[best_k] * max_noise +
                                  1e-14 * (1.0 + std::abs(out.value));
    }
    return out;
}

}  // namespace utmheat
