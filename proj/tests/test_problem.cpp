#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "utmheat/errors.hpp"
#include "utmheat/problem.hpp"

using namespace utmheat;

namespace {

// 4th-order central difference of f's order-(n-1) derivative.
double fd4(const DataFamily& f, int n, double x, double h) {
    auto g = [&](double y) { return f.eval(n - 1, y); };
    return (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("eval_data examples") {
    auto p = make_problem(DataFamily::exp_decay(1, 1), DataFamily::exp_grow(1, 1), "c");
    CHECK(eval_data(p, DataSide::Initial, 0, 0.0) == doctest::Approx(1.0));
    CHECK(eval_data(p, DataSide::Initial, 3, 0.0) == doctest::Approx(-1.0));
    CHECK(eval_data(p, DataSide::Boundary, 2, 0.5) ==
          doctest::Approx(std::exp(0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(eval_data(p, DataSide::Initial, 17, 0.0), UnsupportedOrder);
    CHECK_THROWS_AS(eval_data(p, DataSide::Initial, 0, -0.1), DomainError);
}

TEST_CASE("closed-form derivatives match finite differences") {
    const DataFamily families[] = {
        DataFamily::exp_decay(1.3, 0.7),
        DataFamily::gaussian(0.8, 1.4),
        DataFamily::poly_exp({1.0, -2.0, 0.5}, 1.1),
        DataFamily::exp_grow(1.0, 0.9),
        DataFamily::poly({0.2, 1.0, -0.3, 0.05}),
        DataFamily::constant(2.5),
    };
    for (const DataFamily& f : families) {
        for (int n = 1; n <= 6; ++n) {
            for (int i = 0; i < 20; ++i) {
                const double x = 0.05 + 5.0 * i / 19.0;
                const double exact = f.eval(n, x);
                const double approx = fd4(f, n, x, 1e-3);
                const double scale = std::max(std::abs(exact), 1.0);
                CHECK(std::abs(exact - approx) <= 1e-6 * scale);
            }
        }
    }
}

TEST_CASE("initial families are rapidly decreasing") {
    const DataFamily families[] = {
        DataFamily::exp_decay(1, 1),
        DataFamily::gaussian(1, 1),
        DataFamily::poly_exp({0.0, 1.0, 3.0}, 0.5),
    };
    for (const DataFamily& f : families) {
        CHECK(f.initial_admissible());
        for (int M : {0, 3, 8}) {
            for (int N : {0, 2, 5}) {
                double sup = 0.0;
                for (double x = 0.0; x <= 50.0; x += 0.25)
                    sup = std::max(sup, std::pow(x, M) * std::abs(f.eval(N, x)));
                CHECK(std::isfinite(sup));
                // the weighted profile is decaying at the end of the range
                const double at40 = std::pow(40.0, M) * std::abs(f.eval(N, 40.0));
                const double at50 = std::pow(50.0, M) * std::abs(f.eval(N, 50.0));
                CHECK(at50 < std::max(at40, 1e-300));
            }
        }
    }
    CHECK_FALSE(DataFamily::constant(1.0).initial_admissible());
    CHECK(DataFamily::constant(0.0).initial_admissible());
    CHECK_THROWS_AS(make_problem(DataFamily::exp_grow(1, 1), DataFamily::constant(1), "bad"),
                    DomainError);
}

TEST_CASE("check_compatibility examples") {
    auto caloric = make_problem(DataFamily::exp_decay(1, 1), DataFamily::exp_grow(1, 1), "c");
    CompatibilityReport r = check_compatibility(caloric, 3);
    CHECK(r.order >= 3);
    for (double d : r.discrepancies) CHECK(std::abs(d) <= 1e-10);

    auto mismatch =
        make_problem(DataFamily::exp_decay(0, 1), DataFamily::constant(1), "erfc");
    CompatibilityReport r2 = check_compatibility(mismatch, 0);
    CHECK(r2.discrepancies[0] == doctest::Approx(-1.0));
    CHECK(r2.order == -1);

    auto c2 = make_problem(DataFamily::exp_decay(1, 2), DataFamily::exp_grow(1, 4), "c2");
    CompatibilityReport r3 = check_compatibility(c2, 2);
    CHECK(r3.order >= 2);
}

TEST_CASE("caloric pairs are compatible to every tested order") {
    for (double a : {1.0, -0.5}) {
        for (double b : {0.5, 1.0, 2.0}) {
            auto p = make_problem(DataFamily::exp_decay(a, b),
                                  DataFamily::exp_grow(a, b * b), "caloric");
            for (int n = 0; n <= DataFamily::kDerivativeCap / 2; ++n) {
                CompatibilityReport r = check_compatibility(p, n, 1e-8);
                CHECK(r.order >= n);
            }
        }
    }
}

TEST_CASE("polyexp derivative closed form") {
    // (x^2 e^{-x})' = (2x - x^2) e^{-x}
    auto f = DataFamily::poly_exp({0, 0, 1}, 1.0);
    CHECK(f.eval(1, 2.0) == doctest::Approx((4.0 - 4.0) * std::exp(-2.0)));
    CHECK(f.eval(1, 1.0) == doctest::Approx(std::exp(-1.0)));
}
