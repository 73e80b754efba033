#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "utmheat/errors.hpp"
#include "utmheat/representations.hpp"
#include "utmheat/special_functions.hpp"

using namespace utmheat;

namespace {
const HalfLineProblem kCaloric =
    make_problem(DataFamily::exp_decay(1, 1), DataFamily::exp_grow(1, 1), "caloric");
const HalfLineProblem kErfc =
    make_problem(DataFamily::exp_decay(0, 1), DataFamily::constant(1), "erfc");
const HalfLineProblem kZero =
    make_problem(DataFamily::exp_decay(0, 1), DataFamily::constant(0), "zero");
const HalfLineProblem kGaussP =
    make_problem(DataFamily::gaussian(1, 1), DataFamily::constant(1), "gauss");

double caloric_u(double x, double t) { return std::exp(t - x); }
double erfc_u(double x, double t) {
    return special::erfc_real(x / (2.0 * std::sqrt(t)));
}
}  // namespace

TEST_CASE("contour representation on oracle problems") {
    CHECK(eval_contour(kCaloric, 1.0, 1.0).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(eval_contour(kZero, 0.7, 0.4).value == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(eval_contour(kErfc, 1.0, 1.0).value ==
          doctest::Approx(special::erfc_real(0.5)).epsilon(1e-9));
    CHECK_THROWS_AS(eval_contour(kCaloric, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(eval_contour(kCaloric, 1.0, 0.0), DomainError);
}

TEST_CASE("ehrenpreis form matches and respects the horizon") {
    for (double x : {0.3, 1.0}) {
        for (double t : {0.4, 1.0}) {
            const double a = eval_contour(kCaloric, x, t).value;
            const double b = eval_ehrenpreis(kCaloric, x, t, 2.0).value;
            CHECK(std::abs(a - b) <= 1e-8);
        }
    }
    CHECK(eval_ehrenpreis(kErfc, 0.5, 0.25, 1.0).value ==
          doctest::Approx(special::erfc_real(0.5)).epsilon(1e-9));
    CHECK(eval_ehrenpreis(kZero, 1.0, 0.5, 1.0).value == doctest::Approx(0.0).scale(1));
    CHECK_THROWS_AS(eval_ehrenpreis(kCaloric, 1.0, 1.0, 1.0), HorizonError);
}

TEST_CASE("gauss-kernel form") {
    CHECK(eval_gauss(kCaloric, 0.5, 0.5).value == doctest::Approx(1.0).epsilon(1e-10));
    // x = 0: image kernels cancel and the boundary term is defined as 0
    CHECK(eval_gauss(kErfc, 0.0, 1.0).value == doctest::Approx(0.0).scale(1));
    CHECK(eval_gauss(kCaloric, 0.0, 1.0).value == doctest::Approx(0.0).scale(1));
    CHECK(eval_gauss(kZero, 1.0, 1.0).value == doctest::Approx(0.0).scale(1));
    CHECK(eval_gauss(kErfc, 1.0, 1.0).value ==
          doctest::Approx(special::erfc_real(0.5)).epsilon(1e-11));
}

TEST_CASE("sine-transform form") {
    CHECK(eval_sine(kCaloric, 1.0, 1.0).value == doctest::Approx(1.0).epsilon(1e-6));
    // exactly zero at x = 0
    CHECK(eval_sine(kCaloric, 0.0, 1.0).value == 0.0);
    // near-boundary limit exhibits g0(t) despite the x = 0 value being 0
    CHECK(eval_sine(kErfc, 0.01, 1.0).value ==
          doctest::Approx(special::erfc_real(0.005)).epsilon(1e-7));
}

TEST_CASE("four-way agreement on a reduced grid") {
    const HalfLineProblem* problems[] = {&kCaloric, &kErfc, &kGaussP};
    for (const HalfLineProblem* p : problems) {
        for (double x : {0.1, 1.0, 5.0}) {
            for (double t : {0.1, 1.0}) {
                const double a = eval_contour(*p, x, t).value;
                const double b = eval_ehrenpreis(*p, x, t, 2.0).value;
                const double c = eval_gauss(*p, x, t).value;
                const double d = eval_sine(*p, x, t).value;
                const double mx = std::max({a, b, c, d});
                const double mn = std::min({a, b, c, d});
                CHECK(mx - mn <= 1e-7);
            }
        }
    }
}

TEST_CASE("x-derivatives") {
    CHECK(eval_dx(kCaloric, 1, 1.0, 1.0).value == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(eval_dx(kCaloric, 2, 1.0, 1.0).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(eval_dx(kZero, 3, 0.5, 0.5).value == doctest::Approx(0.0).scale(1));
    CHECK_THROWS_AS(eval_dx(kCaloric, 7, 1.0, 1.0), UnsupportedOrder);
    // central finite difference of the solution in x
    const double h = 1e-4;
    const double fd = (eval_contour(kCaloric, 1.0 + h, 1.0).value -
                       eval_contour(kCaloric, 1.0 - h, 1.0).value) /
                      (2.0 * h);
    CHECK(std::abs(eval_dx(kCaloric, 1, 1.0, 1.0).value - fd) <= 1e-5);
}

TEST_CASE("t-derivatives") {
    CHECK(eval_dt(kCaloric, 1, 1.0, 0.5, 1.0).value ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-9));
    // n = 0 reduces to the horizon form
    const double a = eval_dt(kCaloric, 0, 1.0, 0.5, 1.0).value;
    const double b = eval_ehrenpreis(kCaloric, 1.0, 0.5, 1.0).value;
    CHECK(std::abs(a - b) <= 1e-10);
    CHECK(eval_dt(kZero, 2, 1.0, 0.5, 1.0).value == doctest::Approx(0.0).scale(1));
    CHECK_THROWS_AS(eval_dt(kCaloric, 1, 1.0, 1.0, 0.5), HorizonError);
    CHECK_THROWS_AS(eval_dt(kCaloric, 4, 1.0, 0.5, 1.0), UnsupportedOrder);
}

TEST_CASE("PDE residual on a reduced grid") {
    const HalfLineProblem* problems[] = {&kCaloric, &kErfc};
    for (const HalfLineProblem* p : problems) {
        for (double x : {0.1, 1.0}) {
            for (double t : {0.5, 1.0}) {
                const double ut = eval_dt(*p, 1, x, t, 2.0).value;
                const double uxx = eval_dx(*p, 2, x, t).value;
                CHECK(std::abs(ut - uxx) <= 1e-6);
            }
        }
    }
}

TEST_CASE("at-x0 evaluations") {
    // half-value for the plain contour form
    CHECK(eval_contour_at_x0(kErfc, 1.0).value == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(eval_contour_at_x0(kCaloric, 0.5).value ==
          doctest::Approx(std::exp(0.5) / 2.0).epsilon(1e-8));
    // full value for the horizon form
    CHECK(eval_ehrenpreis_at_x0(kErfc, 1.0, 2.0).value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(eval_ehrenpreis_at_x0(kCaloric, 0.5, 2.0).value ==
          doctest::Approx(std::exp(0.5)).epsilon(1e-8));
    CHECK(eval_contour_at_x0(kZero, 1.0).value == doctest::Approx(0.0).scale(1));
    CHECK(eval_ehrenpreis_at_x0(kZero, 1.0, 2.0).value == doctest::Approx(0.0).scale(1));
}

TEST_CASE("split evaluation agrees with plain quadrature") {
    EvalOptions direct;
    direct.path = ContourPathPolicy::ForceDirect;
    EvalOptions cond;
    cond.path = ContourPathPolicy::ForceConditional;
    for (int n : {0, 2}) {
        for (double x : {0.1, 0.3}) {
            const double a = eval_dx(kCaloric, n, x, 0.7, direct).value;
            const double b = eval_dx(kCaloric, n, x, 0.7, cond).value;
            CHECK(std::abs(a - b) <= 1e-9);
        }
    }
    const double a = eval_dt(kErfc, 1, 0.2, 0.5, 1.5, direct).value;
    const double b = eval_dt(kErfc, 1, 0.2, 0.5, 1.5, cond).value;
    CHECK(std::abs(a - b) <= 1e-9);
}

TEST_CASE("discarded imaginary part stays within the error estimate") {
    for (double x : {0.1, 1.0}) {
        const EvalResult r = eval_contour(kCaloric, x, 1.0);
        CHECK(r.est_error < 1e-7);  // sane estimate scale
    }
}

TEST_CASE("family matrix: equivalence and residual across data kinds") {
    const HalfLineProblem matrix[] = {
        make_problem(DataFamily::poly_exp({1.0, -0.5, 0.25}, 1.0),
                     DataFamily::constant(0.5), "pe/const"),
        make_problem(DataFamily::exp_decay(1, 0.5), DataFamily::poly({1.0, 0.5, -0.25}),
                     "slow/poly"),
        make_problem(DataFamily::gaussian(-0.7, 2.0), DataFamily::exp_decay(1.0, 1.5),
                     "gauss/expdecay"),
        make_problem(DataFamily::poly_exp({0.0, 1.0}, 1.0), DataFamily::exp_grow(-0.3, 0.8),
                     "xexp/neggrow"),
    };
    for (const HalfLineProblem& p : matrix) {
        for (double x : {0.1, 3.0}) {
            const double t = 0.7;
            const double a = eval_contour(p, x, t).value;
            const double b = eval_ehrenpreis(p, x, t, 2.0).value;
            const double c = eval_gauss(p, x, t).value;
            const double d = eval_sine(p, x, t).value;
            const double mx = std::max({a, b, c, d}), mn = std::min({a, b, c, d});
            CHECK(mx - mn <= 1e-8);
            CHECK(std::abs(eval_dt(p, 1, x, t, 2.0).value - eval_dx(p, 2, x, t).value) <=
                  1e-7);
        }
    }
    // gaussian boundary data exercises the numeric shifted-transform route
    auto pg = make_problem(DataFamily::exp_decay(0.5, 1), DataFamily::gaussian(1.0, 0.5),
                           "expdecay/gauss");
    const double a = eval_contour(pg, 0.7, 0.6).value;
    CHECK(std::abs(a - eval_gauss(pg, 0.7, 0.6).value) <= 1e-8);
    CHECK(std::abs(a - eval_sine(pg, 0.7, 0.6).value) <= 1e-8);
}

TEST_CASE("randomized caloric pairs satisfy the closed-form solution") {
    std::mt19937 rng(20260810);
    std::uniform_real_distribution<double> amp(-2.0, 2.0), rate(0.4, 1.8),
        xs(0.1, 4.0), ts(0.1, 1.5);
    for (int i = 0; i < 12; ++i) {
        const double a = amp(rng), b = rate(rng);
        auto p = make_problem(DataFamily::exp_decay(a, b),
                              DataFamily::exp_grow(a, b * b), "random-caloric");
        const double x = xs(rng), t = ts(rng);
        const double oracle = a * std::exp(b * b * t - b * x);
        CHECK(std::abs(eval_contour(p, x, t).value - oracle) <= 1e-8);
        CHECK(std::abs(eval_gauss(p, x, t).value - oracle) <= 1e-8);
    }
}

TEST_CASE("derivative ladder against the caloric oracle") {
    for (double b : {1.0, 2.0}) {
        auto p = make_problem(DataFamily::exp_decay(1, b), DataFamily::exp_grow(1, b * b),
                              "cal");
        for (int n = 3; n <= 6; ++n) {
            for (double x : {0.1, 1.0}) {
                const double v = eval_dx(p, n, x, 0.8).value;
                const double oracle = std::pow(-b, n) * std::exp(b * b * 0.8 - b * x);
                CHECK(std::abs(v - oracle) <= 1e-7 * std::max(1.0, std::abs(oracle)));
            }
        }
        for (int n = 2; n <= 3; ++n) {
            const double v = eval_dt(p, n, 1.0, 0.5, 1.0).value;
            const double oracle = std::pow(b * b, n) * std::exp(b * b * 0.5 - b);
            CHECK(std::abs(v - oracle) <= 1e-7 * std::max(1.0, std::abs(oracle)));
        }
    }
}

TEST_CASE("rapid decay weighted profile (image form)") {
    for (double t : {0.5, 2.0}) {
        double prev = 1e300;
        for (double x : {5.0, 10.0, 20.0, 40.0}) {
            const double v = std::pow(x, 3) * std::abs(eval_gauss(kCaloric, x, t).value);
            CHECK(v < prev);
            prev = v;
        }
        CHECK(prev < 1e-3);
    }
}
