#pragma once

#include <string>
#include <vector>

namespace utmheat {

enum class FamilyKind { ExpDecay, Gaussian, PolyExp, Constant, ExpGrow, Poly };

// A named closed-form data family with derivatives of every order up to
// kDerivativeCap. Data enter as families rather than arbitrary callables so
// that transforms and derivatives can be evaluated exactly.
class DataFamily {
  public:
    static constexpr int kDerivativeCap = 16;

    static DataFamily exp_decay(double a, double b);                   // a e^{-b x}
    static DataFamily gaussian(double a, double b);                    // a e^{-b x^2}
    static DataFamily poly_exp(std::vector<double> coeffs, double b);  // p(x) e^{-b x}
    static DataFamily constant(double c);
    static DataFamily exp_grow(double a, double c);                    // a e^{c t}
    static DataFamily poly(std::vector<double> coeffs);                // p(t)

    FamilyKind kind() const { return kind_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    // d^order f / dx^order at x (closed form). Throws UnsupportedOrder /
    // DomainError per the operation contract.
    double eval(int order, double x) const;

    bool is_zero() const;
    // Rapidly decreasing on [0, inf) with all derivatives.
    bool initial_admissible() const;
    // Smooth on [0, inf); every family qualifies.
    bool boundary_admissible() const { return true; }

    // Smallest X with |f| and the first few derivatives below eps beyond X.
    // Unbounded families return a large sentinel.
    double tail_cut(double eps) const;

    // Closed-form int_0^inf |f| for the decaying families.
    double abs_integral() const;

    std::string describe() const;

  private:
    DataFamily() = default;
    FamilyKind kind_ = FamilyKind::Constant;
    double a_ = 0.0, b_ = 0.0, c_ = 0.0;
    std::vector<double> coeffs_;
};

struct HalfLineProblem {
    DataFamily u0;  // initial data, function of x >= 0
    DataFamily g0;  // boundary data, function of t >= 0
    std::string label;
};

// Validated constructor: u0 must be initial-admissible, g0 boundary-admissible.
HalfLineProblem make_problem(DataFamily u0, DataFamily g0, std::string label);

enum class DataSide { Initial, Boundary };

// d^order of the selected datum at the point, via the family's closed form.
double eval_data(const HalfLineProblem& problem, DataSide which, int order, double point);

struct CompatibilityReport {
    // discrepancies[l] = d^{2l} u0/dx^{2l}|_0 - d^l g0/dt^l|_0
    std::vector<double> discrepancies;
    // Largest n with every |discrepancies[l]| <= tol for l <= n; -1 when the
    // l = 0 condition already fails.
    int order = -1;
};

CompatibilityReport check_compatibility(const HalfLineProblem& problem, int max_n,
                                        double tol = 1e-10);

}  // namespace utmheat
