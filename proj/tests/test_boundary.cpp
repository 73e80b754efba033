#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "utmheat/boundary.hpp"
#include "utmheat/special_functions.hpp"

using namespace utmheat;

namespace {
const HalfLineProblem kCaloric =
    make_problem(DataFamily::exp_decay(1, 1), DataFamily::exp_grow(1, 1), "caloric");
const HalfLineProblem kCaloric2 =
    make_problem(DataFamily::exp_decay(1, 2), DataFamily::exp_grow(1, 4), "caloric-b2");
const HalfLineProblem kErfc =
    make_problem(DataFamily::exp_decay(0, 1), DataFamily::constant(1), "erfc");
const HalfLineProblem kZero =
    make_problem(DataFamily::exp_decay(0, 1), DataFamily::constant(0), "zero");
}  // namespace

TEST_CASE("x -> 0+ traces recover the boundary data and its derivatives") {
    // g_0(t) = g0(t)
    TraceResult t0 = trace_x_to_0(kCaloric, 0, 1.0);
    CHECK(std::abs(t0.value - std::exp(1.0)) <= 1e-4);
    CHECK(t0.converged);
    CHECK(t0.approximants.size() == 9);
    CHECK(t0.approximants.front().first > t0.approximants.back().first);
    // g_2(t) = g0'(t)
    TraceResult t2 = trace_x_to_0(kCaloric, 2, 1.0);
    CHECK(std::abs(t2.value - std::exp(1.0)) <= 1e-3);
    // zero data
    TraceResult tz = trace_x_to_0(kZero, 1, 0.5);
    CHECK(std::abs(tz.value) <= 1e-10);
}

TEST_CASE("even x-traces equal time derivatives of the boundary data") {
    for (int n : {0, 1, 2}) {
        for (double t : {0.5, 1.0}) {
            TraceResult tr = trace_x_to_0(kCaloric, 2 * n, t);
            const double expect = kCaloric.g0.eval(n, t);
            CHECK(std::abs(tr.value - expect) <= 10.0 * tr.est_error + 1e-9);
        }
    }
    // also for the incompatible problem: g_0 trace equals g0 = 1
    TraceResult tr = trace_x_to_0(kErfc, 0, 1.0);
    CHECK(std::abs(tr.value - 1.0) <= 10.0 * tr.est_error + 1e-6);
}

TEST_CASE("t -> 0+ traces recover the initial data") {
    TraceResult t0 = trace_t_to_0(kCaloric, 0, 1.0);
    CHECK(std::abs(t0.value - std::exp(-1.0)) <= 1e-5);
    CHECK(t0.converged);
    // u_1 = u0''
    TraceResult t1 = trace_t_to_0(kCaloric, 1, 1.0);
    CHECK(std::abs(t1.value - std::exp(-1.0)) <= 1e-3);
    // erfc problem: u0 = 0
    TraceResult tz = trace_t_to_0(kErfc, 0, 1.0);
    CHECK(std::abs(tz.value) <= 1e-5);
    for (int n : {0, 1}) {
        for (double x : {0.5, 2.0}) {
            TraceResult tr = trace_t_to_0(kCaloric, n, x);
            const double expect = kCaloric.u0.eval(2 * n, x);
            CHECK(std::abs(tr.value - expect) <= 10.0 * tr.est_error + 1e-9);
        }
    }
}

TEST_CASE("uniformity proxy: boundary convergence improves monotonically") {
    // max over t of |u(x_j, t) - g0(t)| decreases in j for x_j = 2^{-j}
    double prev = 1e300;
    for (int j = 1; j <= 6; ++j) {
        const double x = std::pow(2.0, -j);
        double worst = 0.0;
        for (double t : {0.2, 0.5, 1.0, 2.0}) {
            worst = std::max(worst,
                             std::abs(eval_contour(kCaloric, x, t).value -
                                      kCaloric.g0.eval(0, t)));
        }
        CHECK(worst < prev);
        prev = worst;
    }
    // symmetric statement in t
    prev = 1e300;
    for (int j = 1; j <= 6; ++j) {
        const double t = std::pow(2.0, -j);
        double worst = 0.0;
        for (double x : {0.5, 1.0, 2.0}) {
            worst = std::max(worst, std::abs(eval_contour(kCaloric, x, t).value -
                                             kCaloric.u0.eval(0, x)));
        }
        CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("corner limits for the compatible problem") {
    for (int k : {0, 1, 2}) {
        CornerReport rep = corner_limit(kCaloric, k);
        REQUIRE(rep.predicted_limit.has_value());
        CHECK(*rep.predicted_limit == doctest::Approx(std::pow(-1.0, k)));
        CHECK(rep.agrees);
        for (const auto& pr : rep.paths)
            CHECK(std::abs(pr.trace.value - *rep.predicted_limit) <= 1e-2);
        CHECK(rep.compat_order >= k / 2);
    }
}

TEST_CASE("corner limits for the incompatible problem split by path") {
    CornerReport rep = corner_limit(kErfc, 0);
    CHECK(rep.compat_order == -1);
    CHECK_FALSE(rep.predicted_limit.has_value());
    double diag = 0.0, parab = 0.0;
    for (const auto& pr : rep.paths) {
        if (pr.path == CornerPath::Diagonal) diag = pr.trace.value;
        if (pr.path == CornerPath::Parabolic) parab = pr.trace.value;
    }
    // diagonal tends to 1, parabolic to erfc(1/2)
    CHECK(std::abs(diag - parab) > 0.3);
    CHECK(std::abs(parab - special::erfc_real(0.5)) <= 1e-2);

    CornerReport zero = corner_limit(kZero, 1);
    for (const auto& pr : zero.paths) CHECK(std::abs(pr.trace.value) <= 1e-8);
}

TEST_CASE("odd-trace derivative chain") {
    ChainCheckReport rep = trace_chain_check(kCaloric, 1);
    CHECK(rep.max_mismatch <= 1e-4);
    ChainCheckReport rep2 = trace_chain_check(kCaloric2, 1, {}, {0.2, 0.5});
    CHECK(rep2.max_mismatch <= 1e-3);
    ChainCheckReport repz = trace_chain_check(kZero, 1, {}, {0.5});
    CHECK(repz.max_mismatch <= 1e-10);
}

TEST_CASE("decay profile rows") {
    auto rows = decay_profile(kCaloric, 3, 0, 1.0, {5.0, 10.0, 20.0});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].weighted == doctest::Approx(125.0 * std::exp(-4.0)).epsilon(1e-8));
    CHECK(rows[0].weighted > rows[1].weighted);
    CHECK(rows[1].weighted > rows[2].weighted);
    auto rowsz = decay_profile(kZero, 2, 0, 1.0, {5.0, 10.0});
    for (const auto& r : rowsz) CHECK(r.weighted == 0.0);
    auto rowse = decay_profile(kErfc, 2, 0, 1.0, {5.0, 10.0, 20.0});
    CHECK(rowse[0].weighted > rowse[1].weighted);
    CHECK(rowse[1].weighted > rowse[2].weighted);
}

TEST_CASE("richardson error estimate bounds the truth on closed-form traces") {
    int covered = 0, total = 0;
    for (double t : {0.4, 0.8, 1.3}) {
        TraceResult tr = trace_x_to_0(kCaloric, 0, t);
        ++total;
        if (std::abs(tr.value - std::exp(t)) <= 10.0 * tr.est_error + 1e-12) ++covered;
        TraceResult t2 = trace_x_to_0(kCaloric, 2, t);
        ++total;
        if (std::abs(t2.value - std::exp(t)) <= 10.0 * t2.est_error + 1e-12) ++covered;
    }
    for (double x : {0.5, 1.0, 2.0}) {
        TraceResult tr = trace_t_to_0(kCaloric, 0, x);
        ++total;
        if (std::abs(tr.value - std::exp(-x)) <= 10.0 * tr.est_error + 1e-12) ++covered;
    }
    CHECK(covered * 10 >= total * 9);  // at least 90 percent coverage
}
