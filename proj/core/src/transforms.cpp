#include "utmheat/transforms.hpp"

#include <cmath>

#include "utmheat/errors.hpp"
#include "utmheat/special_functions.hpp"

namespace utmheat {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;
const Complex kI{0.0, 1.0};

Complex cpow_int(Complex z, int n) {
    if (n < 0) return 1.0 / cpow_int(z, -n);
    Complex r{1.0, 0.0};
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

void require_lower_half(Complex lambda, const char* who) {
    if (lambda.imag() > 1e-12 * (1.0 + std::abs(lambda)))
        throw DomainError(std::string(who) + ": transform defined for Im lambda <= 0");
}

Complex checked_exp(Complex z) {
    if (z.real() > 700.0)
        throw OverflowError("boundary transform: exp(Re lambda^2 t) not representable");
    return std::exp(z);
}

// int_0^T p(tau) e^{z_eff tau} dtau * e^{-z td}, the workhorse behind the
// boundary-transform family closed forms. z = lambda^2, z_eff = z + growth.
Complex shifted_poly_exp(const std::vector<double>& p, double growth, Complex z,
                         double td, double T) {
    const Complex z_eff = z + growth;
    if (std::abs(z_eff) * T < 0.5) {
        // Taylor in z_eff: sum_k z_eff^k / k! * int_0^T p(tau) tau^k dtau
        Complex sum{0.0, 0.0};
        Complex zk{1.0, 0.0};
        double kfact = 1.0;
        for (int k = 0; k < 40; ++k) {
            if (k > 0) {
                zk *= z_eff;
                kfact *= k;
            }
            double moment = 0.0;
            double Tp = std::pow(T, k + 1);
            for (std::size_t m = 0; m < p.size(); ++m) {
                moment += p[m] * Tp / (k + m + 1.0);
                Tp *= T;
            }
            const Complex term = zk / kfact * moment;
            sum += term;
            if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30) && k > 3) break;
        }
        return sum * checked_exp(-z * td);
    }
    // q(tau) = sum_j (-1)^j p^{(j)}(tau) / z_eff^{j+1};
    // integral = e^{z_eff T} q(T) - q(0), then shift by e^{-z td}.
    std::vector<double> d = p;
    const Complex inv = 1.0 / z_eff;
    Complex qT{0.0, 0.0}, q0{0.0, 0.0};
    Complex w = inv;
    double sign = 1.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        double vT = 0.0;
        for (std::size_t i = d.size(); i-- > 0;) vT = vT * T + d[i];
        qT += sign * w * vT;
        q0 += sign * w * d[0];
        // next derivative
        std::vector<double> nd(d.size() > 1 ? d.size() - 1 : 1, 0.0);
        for (std::size_t i = 0; i + 1 < d.size(); ++i) nd[i] = (i + 1) * d[i + 1];
        d = std::move(nd);
        w *= inv;
        sign = -sign;
    }
    return checked_exp(z_eff * T - z * td) * qT - checked_exp(-z * td) * q0;
}

// Numeric shifted transform for the Gaussian boundary family.
Complex shifted_gaussian(double a, double b, Complex z, double td, double T) {
    // stability: max over [0,T] of Re(z)(tau - td) must be representable
    const double w0 = -z.real() * td, wT = z.real() * (T - td);
    if (std::max(w0, wT) > 700.0)
        throw OverflowError("boundary transform: exp overflow for gaussian data");
    auto f = [&](double tau) {
        return a * std::exp(-b * tau * tau) * std::exp(z * (tau - td));
    };
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-12;
    std::vector<double> edges = seed_edges(0.0, T, std::abs(z.imag()), 0.0, cfg.gl_order, 2);
    return integrate_edges(f, std::move(edges), cfg).value;
}

Complex u0_hat_closed(const DataFamily& u0, Complex lambda) {
    switch (u0.kind()) {
        case FamilyKind::ExpDecay:
            return u0.a() / (u0.b() + kI * lambda);
        case FamilyKind::PolyExp: {
            const Complex s = u0.b() + kI * lambda;
            const Complex inv = 1.0 / s;
            Complex sum{0.0, 0.0};
            Complex w = inv;
            double fact = 1.0;
            const auto& c = u0.coeffs();
            for (std::size_t k = 0; k < c.size(); ++k) {
                if (k > 0) fact *= static_cast<double>(k);
                sum += c[k] * fact * w;
                w *= inv;
            }
            return sum;
        }
        case FamilyKind::Gaussian: {
            const double sb = std::sqrt(u0.b());
            return u0.a() * (kSqrtPi / (2.0 * sb)) *
                   special::faddeeva_w(-lambda / (2.0 * sb));
        }
        default:
            if (u0.is_zero()) return {0.0, 0.0};
            throw DomainError("u0_hat: family is not admissible initial data");
    }
}

}  // namespace

Complex u0_hat(const HalfLineProblem& problem, Complex lambda) {
    require_lower_half(lambda, "u0_hat");
    return u0_hat_closed(problem.u0, lambda);
}

Complex u0_hat_reflected(const HalfLineProblem& problem, Complex lambda) {
    if (lambda.imag() < -1e-12 * (1.0 + std::abs(lambda)))
        throw DomainError("u0_hat_reflected: defined for Im lambda >= 0");
    return u0_hat_closed(problem.u0, -lambda);
}

Complex u0_hat_numeric(const HalfLineProblem& problem, Complex lambda, int depth,
                       const QuadratureConfig& cfg) {
    require_lower_half(lambda, "u0_hat_numeric");
    const DataFamily& u0 = problem.u0;
    if (u0.is_zero()) return {0.0, 0.0};
    Complex terms{0.0, 0.0};
    if (depth > 0 && std::abs(lambda) < 1e-8) depth = 0;
    const Complex inv_il = depth > 0 ? 1.0 / (kI * lambda) : Complex{0.0, 0.0};
    Complex w = inv_il;
    for (int n = 0; n < depth; ++n) {
        terms += u0.eval(n, 0.0) * w;
        w *= inv_il;
    }
    double X = u0.tail_cut(1e-18) * 1.2 + 5.0;
    const double decay = -lambda.imag();
    if (decay > 0.0) X = std::min(X, 45.0 / decay + 1.0);
    auto f = [&](double x) {
        return u0.eval(depth, x) * std::exp(-kI * lambda * x);
    };
    std::vector<double> edges =
        seed_edges(0.0, X, std::abs(lambda.real()), 0.0, cfg.gl_order, 2);
    const Complex integral = integrate_edges(f, std::move(edges), cfg).value;
    const Complex prefactor = depth > 0 ? cpow_int(inv_il, depth) : Complex{1.0, 0.0};
    return terms + prefactor * integral;
}

double u0_sine_transform(const HalfLineProblem& problem, double lambda) {
    return u0_hat_reflected(problem, Complex(lambda, 0.0)).imag();
}

namespace {

Complex g0_shifted_impl(const DataFamily& g0, Complex z, double td, double T) {
    switch (g0.kind()) {
        case FamilyKind::Constant:
            return shifted_poly_exp({g0.c()}, 0.0, z, td, T);
        case FamilyKind::ExpGrow:
            return shifted_poly_exp({g0.a()}, g0.c(), z, td, T);
        case FamilyKind::ExpDecay:
            return shifted_poly_exp({g0.a()}, -g0.b(), z, td, T);
        case FamilyKind::Poly:
            return shifted_poly_exp(g0.coeffs(), 0.0, z, td, T);
        case FamilyKind::PolyExp:
            return shifted_poly_exp(g0.coeffs(), -g0.b(), z, td, T);
        case FamilyKind::Gaussian:
            return shifted_gaussian(g0.a(), g0.b(), z, td, T);
    }
    return {0.0, 0.0};
}

}  // namespace

Complex g0_tilde(const HalfLineProblem& problem, Complex lambda, double t) {
    if (t < 0.0) throw DomainError("g0_tilde: requires t >= 0");
    if (t == 0.0) return {0.0, 0.0};
    return g0_shifted_impl(problem.g0, lambda * lambda, 0.0, t);
}

Complex g0_tilde_damped(const HalfLineProblem& problem, Complex lambda, double t) {
    if (t < 0.0) throw DomainError("g0_tilde_damped: requires t >= 0");
    const Complex z = lambda * lambda;
    if (z.real() < -1e-10 * (1.0 + std::abs(z)))
        throw DomainError("g0_tilde_damped: requires Re(lambda^2) >= 0");
    if (t == 0.0) return {0.0, 0.0};
    return g0_shifted_impl(problem.g0, z, t, t);
}

Complex g0_tilde_shifted(const HalfLineProblem& problem, Complex lambda, double t_damp,
                         double T) {
    if (T < 0.0 || t_damp < 0.0) throw DomainError("g0_tilde_shifted: negative time");
    if (T == 0.0) return {0.0, 0.0};
    return g0_shifted_impl(problem.g0, lambda * lambda, t_damp, T);
}

double gauss_fourier_kernel(double kappa, double x) {
    if (kappa <= 0.0) throw DomainError("gauss_fourier_kernel: requires kappa > 0");
    return std::sqrt(kPi / kappa) * std::exp(-x * x / (4.0 * kappa));
}

QuadratureResult fourier_invert_regularized(const ComplexFn& fhat, double x, double eps,
                                            const QuadratureConfig& cfg) {
    if (eps <= 0.0) throw DomainError("fourier_invert_regularized: requires eps > 0");
    auto f = [&](Complex lambda) {
        return std::exp(-eps * lambda * lambda + kI * lambda * x) * fhat(lambda);
    };
    QuadratureResult r = integrate_real_damped(f, eps, cfg, std::abs(x));
    return {r.value / (2.0 * kPi), r.est_error / (2.0 * kPi)};
}

Complex IbpExpansion::terms_value(Complex lambda) const {
    Complex sum{0.0, 0.0};
    if (kind == Kind::InitialTransform) {
        const Complex inv = 1.0 / (kI * lambda);
        Complex w = inv;
        for (int n = 0; n < depth; ++n) {
            sum += terms_at_zero[n] * w;
            w *= inv;
        }
        return sum;
    }
    const Complex z = lambda * lambda;
    const Complex inv2 = 1.0 / z;
    const Complex e_up = std::exp(z * (horizon - t_damp));
    const Complex e_dn = std::exp(-z * t_damp);
    Complex w = inv2;
    double sign = 1.0;
    for (int n = 0; n < depth; ++n) {
        sum += sign * (terms_at_upper[n] * e_up - terms_at_zero[n] * e_dn) * w;
        w *= inv2;
        sign = -sign;
    }
    return sum;
}

IbpExpansion u0_hat_expansion(const HalfLineProblem& problem, int depth) {
    IbpExpansion e;
    e.kind = IbpExpansion::Kind::InitialTransform;
    e.depth = depth;
    for (int n = 0; n < depth; ++n) e.terms_at_zero.push_back(problem.u0.eval(n, 0.0));
    e.remainder = [problem, e](Complex lambda) {
        return u0_hat(problem, lambda) - e.terms_value(lambda);
    };
    return e;
}

IbpExpansion g0_damped_expansion(const HalfLineProblem& problem, int depth, double t_damp,
                                 double horizon) {
    IbpExpansion e;
    e.kind = IbpExpansion::Kind::BoundaryTransformDamped;
    e.depth = depth;
    e.t_damp = t_damp;
    e.horizon = horizon;
    for (int n = 0; n < depth; ++n) {
        e.terms_at_zero.push_back(problem.g0.eval(n, 0.0));
        e.terms_at_upper.push_back(problem.g0.eval(n, horizon));
    }
    e.remainder = [problem, e](Complex lambda) {
        return g0_tilde_shifted(problem, lambda, e.t_damp, e.horizon) -
               e.terms_value(lambda);
    };
    return e;
}

}  // namespace utmheat
