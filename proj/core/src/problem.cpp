#include "utmheat/problem.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "utmheat/errors.hpp"

namespace utmheat {

namespace {

// Coefficients of p' - b p, the derivative action on q(x) e^{-bx}.
std::vector<double> poly_exp_derivative(const std::vector<double>& p, double b) {
    std::vector<double> q(p.size(), 0.0);
    for (std::size_t k = 0; k + 1 < p.size(); ++k) q[k] = (k + 1) * p[k + 1];
    for (std::size_t k = 0; k < p.size(); ++k) q[k] -= b * p[k];
    return q;
}

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

}  // namespace

DataFamily DataFamily::exp_decay(double a, double b) {
    if (b <= 0.0) throw DomainError("exp_decay: requires b > 0");
    DataFamily f;
    f.kind_ = FamilyKind::ExpDecay;
    f.a_ = a;
    f.b_ = b;
    return f;
}

DataFamily DataFamily::gaussian(double a, double b) {
    if (b <= 0.0) throw DomainError("gaussian: requires b > 0");
    DataFamily f;
    f.kind_ = FamilyKind::Gaussian;
    f.a_ = a;
    f.b_ = b;
    return f;
}

DataFamily DataFamily::poly_exp(std::vector<double> coeffs, double b) {
    if (b <= 0.0) throw DomainError("poly_exp: requires b > 0");
    if (coeffs.empty()) coeffs.push_back(0.0);
    DataFamily f;
    f.kind_ = FamilyKind::PolyExp;
    f.b_ = b;
    f.coeffs_ = std::move(coeffs);
    return f;
}

DataFamily DataFamily::constant(double c) {
    DataFamily f;
    f.kind_ = FamilyKind::Constant;
    f.c_ = c;
    return f;
}

DataFamily DataFamily::exp_grow(double a, double c) {
    DataFamily f;
    f.kind_ = FamilyKind::ExpGrow;
    f.a_ = a;
    f.c_ = c;
    return f;
}

DataFamily DataFamily::poly(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    DataFamily f;
    f.kind_ = FamilyKind::Poly;
    f.coeffs_ = std::move(coeffs);
    return f;
}

double DataFamily::eval(int order, double x) const {
    if (order < 0 || order > kDerivativeCap)
        throw UnsupportedOrder("derivative order " + std::to_string(order) +
                               " exceeds cap " + std::to_string(kDerivativeCap));
    if (x < 0.0) throw DomainError("eval: requires point >= 0");
    switch (kind_) {
        case FamilyKind::ExpDecay: {
            double s = 1.0;
            for (int i = 0; i < order; ++i) s *= -b_;
            return a_ * s * std::exp(-b_ * x);
        }
        case FamilyKind::Gaussian: {
            // d^n e^{-b x^2} = (-sqrt(b))^n H_n(sqrt(b) x) e^{-b x^2}
            const double sb = std::sqrt(b_);
            const double y = sb * x;
            double hm = 1.0, h = 2.0 * y;  // H_0, H_1
            if (order == 0) h = 1.0;
            for (int n = 1; n < order; ++n) {
                const double hn = 2.0 * y * h - 2.0 * n * hm;
                hm = h;
                h = hn;
            }
            double s = 1.0;
            for (int i = 0; i < order; ++i) s *= -sb;
            return a_ * s * h * std::exp(-b_ * x * x);
        }
        case FamilyKind::PolyExp: {
            std::vector<double> q = coeffs_;
            for (int i = 0; i < order; ++i) q = poly_exp_derivative(q, b_);
            return horner(q, x) * std::exp(-b_ * x);
        }
        case FamilyKind::Constant:
            return order == 0 ? c_ : 0.0;
        case FamilyKind::ExpGrow: {
            double s = 1.0;
            for (int i = 0; i < order; ++i) s *= c_;
            return a_ * s * std::exp(c_ * x);
        }
        case FamilyKind::Poly: {
            std::vector<double> q = coeffs_;
            for (int i = 0; i < order; ++i) {
                std::vector<double> d(q.size() > 1 ? q.size() - 1 : 1, 0.0);
                for (std::size_t k = 0; k + 1 < q.size(); ++k) d[k] = (k + 1) * q[k + 1];
                q = std::move(d);
            }
            return horner(q, x);
        }
    }
    return 0.0;
}

bool DataFamily::is_zero() const {
    switch (kind_) {
        case FamilyKind::ExpDecay:
        case FamilyKind::Gaussian:
        case FamilyKind::ExpGrow:
            return a_ == 0.0;
        case FamilyKind::Constant:
            return c_ == 0.0;
        case FamilyKind::PolyExp:
        case FamilyKind::Poly:
            for (double c : coeffs_)
                if (c != 0.0) return false;
            return true;
    }
    return false;
}

bool DataFamily::initial_admissible() const {
    switch (kind_) {
        case FamilyKind::ExpDecay:
        case FamilyKind::Gaussian:
        case FamilyKind::PolyExp:
            return true;
        default:
            return is_zero();
    }
}

double DataFamily::tail_cut(double eps) const {
    const double scale = std::max(std::abs(a_) + std::abs(c_) + 1e-30, 1.0);
    const double logratio = std::log(scale / eps);
    switch (kind_) {
        case FamilyKind::ExpDecay:
            return logratio / b_;
        case FamilyKind::Gaussian:
            return std::sqrt(logratio / b_);
        case FamilyKind::PolyExp: {
            double cmax = 0.0;
            for (double c : coeffs_) cmax = std::max(cmax, std::abs(c));
            const double deg = static_cast<double>(coeffs_.size());
            // solve b x - deg ln x = log((cmax+1)/eps) crudely by iteration
            double x = (std::log((cmax + 1.0) / eps)) / b_ + 1.0;
            for (int i = 0; i < 20; ++i)
                x = (std::log((cmax + 1.0) / eps) + deg * std::log(x + 1.0)) / b_;
            return x;
        }
        default:
            return is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
    }
}

double DataFamily::abs_integral() const {
    switch (kind_) {
        case FamilyKind::ExpDecay:
            return std::abs(a_) / b_;
        case FamilyKind::Gaussian:
            return std::abs(a_) * 0.5 * std::sqrt(3.14159265358979323846 / b_);
        case FamilyKind::PolyExp: {
            double s = 0.0, fact = 1.0;
            for (std::size_t k = 0; k < coeffs_.size(); ++k) {
                if (k > 0) fact *= static_cast<double>(k);
                s += std::abs(coeffs_[k]) * fact / std::pow(b_, static_cast<double>(k + 1));
            }
            return s;
        }
        default:
            if (is_zero()) return 0.0;
            throw DomainError("abs_integral: family is not integrable on [0,inf)");
    }
}

std::string DataFamily::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case FamilyKind::ExpDecay: os << "expdecay(" << a_ << "," << b_ << ")"; break;
        case FamilyKind::Gaussian: os << "gaussian(" << a_ << "," << b_ << ")"; break;
        case FamilyKind::PolyExp: {
            os << "polyexp([";
            for (std::size_t i = 0; i < coeffs_.size(); ++i)
                os << (i ? "," : "") << coeffs_[i];
            os << "]," << b_ << ")";
            break;
        }
        case FamilyKind::Constant: os << "constant(" << c_ << ")"; break;
        case FamilyKind::ExpGrow: os << "expgrow(" << a_ << "," << c_ << ")"; break;
        case FamilyKind::Poly: {
            os << "poly([";
            for (std::size_t i = 0; i < coeffs_.size(); ++i)
                os << (i ? "," : "") << coeffs_[i];
            os << "])";
            break;
        }
    }
    return os.str();
}

HalfLineProblem make_problem(DataFamily u0, DataFamily g0, std::string label) {
    if (!u0.initial_admissible())
        throw DomainError("initial data must be rapidly decreasing: " + u0.describe());
    if (!g0.boundary_admissible())
        throw DomainError("boundary data must be smooth on [0,inf): " + g0.describe());
    return HalfLineProblem{std::move(u0), std::move(g0), std::move(label)};
}

double eval_data(const HalfLineProblem& problem, DataSide which, int order, double point) {
    const DataFamily& f = which == DataSide::Initial ? problem.u0 : problem.g0;
    return f.eval(order, point);
}

CompatibilityReport check_compatibility(const HalfLineProblem& problem, int max_n,
                                        double tol) {
    if (max_n < 0) throw DomainError("check_compatibility: max_n must be >= 0");
    if (2 * max_n > DataFamily::kDerivativeCap)
        throw UnsupportedOrder("check_compatibility: 2*max_n exceeds derivative cap");
    CompatibilityReport report;
    report.discrepancies.reserve(max_n + 1);
    for (int l = 0; l <= max_n; ++l) {
        const double d = eval_data(problem, DataSide::Initial, 2 * l, 0.0) -
                         eval_data(problem, DataSide::Boundary, l, 0.0);
        report.discrepancies.push_back(d);
    }
    report.order = -1;
    for (int l = 0; l <= max_n; ++l) {
        if (std::abs(report.discrepancies[l]) > tol) break;
        report.order = l;
    }
    return report;
}

}  // namespace utmheat
