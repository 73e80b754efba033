#include <benchmark/benchmark.h>

#include <cmath>

#include "utmheat/boundary.hpp"
#include "utmheat/representations.hpp"
#include "utmheat/special_functions.hpp"
#include "utmheat/transforms.hpp"

namespace {

using namespace utmheat;

const HalfLineProblem kCaloric =
    make_problem(DataFamily::exp_decay(1, 1), DataFamily::exp_grow(1, 1), "caloric");
const HalfLineProblem kGauss =
    make_problem(DataFamily::gaussian(1, 1), DataFamily::constant(1), "gauss");

void BM_FaddeevaW(benchmark::State& state) {
    const Complex z = std::polar(static_cast<double>(state.range(0)), M_PI / 4);
    for (auto _ : state) benchmark::DoNotOptimize(special::faddeeva_w(z));
}
BENCHMARK(BM_FaddeevaW)->Arg(1)->Arg(4)->Arg(40);

void BM_U0Hat(benchmark::State& state) {
    const HalfLineProblem& p = state.range(0) ? kGauss : kCaloric;
    const Complex lam = std::polar(17.0, M_PI / 4);
    for (auto _ : state) benchmark::DoNotOptimize(u0_hat_reflected(p, lam));
}
BENCHMARK(BM_U0Hat)->Arg(0)->Arg(1);

void BM_BoundaryTransformShifted(benchmark::State& state) {
    const Complex lam = std::polar(23.0, M_PI / 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(g0_tilde_shifted(kCaloric, lam, 1.0, 2.0));
}
BENCHMARK(BM_BoundaryTransformShifted);

void BM_EvalContour(benchmark::State& state) {
    const double x = state.range(0) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(eval_contour(kCaloric, x, 1.0));
}
BENCHMARK(BM_EvalContour)->Arg(1)->Arg(5)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_EvalGaussKernel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(eval_gauss(kCaloric, 1.0, 1.0));
}
BENCHMARK(BM_EvalGaussKernel)->Unit(benchmark::kMicrosecond);

void BM_EvalSine(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(eval_sine(kCaloric, 1.0, 1.0));
}
BENCHMARK(BM_EvalSine)->Unit(benchmark::kMicrosecond);

void BM_SplitContourDerivative(benchmark::State& state) {
    EvalOptions opt;
    opt.path = ContourPathPolicy::ForceConditional;
    for (auto _ : state)
        benchmark::DoNotOptimize(eval_dx(kCaloric, 2, 0.01, 1.0, opt));
}
BENCHMARK(BM_SplitContourDerivative)->Unit(benchmark::kMillisecond);

void BM_TraceX(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(trace_x_to_0(kCaloric, 0, 1.0));
}
BENCHMARK(BM_TraceX)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
