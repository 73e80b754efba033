#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "utmheat/special_functions.hpp"

using namespace utmheat::special;
using std::complex;

namespace {
struct WRef {
    double zr, zi, wr, wi;
};
// mpmath (30 digits): w(z) = exp(-z^2) erfc(-iz)
const WRef kWRefs[] = {
    {0.5, 0.0, 0.7788007830714049, 0.47892517290104347},
    {2.0, 0.0, 0.01831563888873418, 0.3400262170660662},
    {3.0, 0.0, 0.00012340980408667956, 0.2011573170376004},
    {4.0, 0.0, 1.1253517471925912e-07, 0.14595358990015278},
    {6.0, 0.0, 2.3195228302435696e-16, 0.09539620896911076},
    {10.0, 0.0, 3.720075976020836e-44, 0.0567053942328876},
    {25.0, 0.0, 3.6808558548018004e-272, 0.022585680912640474},
    {1.0, 1.0, 0.3047442052569126, 0.20821893820283163},
    {3.0, 0.1, 0.007942680998769991, 0.20074234309867736},
    {4.5, 0.01, 0.00030237707114622953, 0.1287344773851955},
    {2.5, 2.5, 0.11673712504465027, 0.10790858599648141},
    {0.1, 8.0, 0.06997463670894134, 0.0008615230181083474},
    {120.0, 0.0, 0.0, 0.004701743129206852},
    {5.0, 5.0, 0.056965439888176976, 0.055838742775391026},
    {0.7071067811865476, 0.7071067811865476, 0.4155880959078486, 0.23031978755491064},
    {-3.0, 0.5, 0.03712636605469234, -0.19298375530036208},
    {-7.0, 0.2, 0.0023750959382436094, -0.08137740682192361},
};

struct ErfcRef {
    double x, v;
};
const ErfcRef kErfcRefs[] = {
    {0.1, 0.887537083981715},   {0.5, 0.4795001221869535},
    {1.0, 0.15729920705028513}, {1.5, 0.033894853524689274},
    {2.0, 0.004677734981047266},{3.0, 2.209049699858544e-05},
    {5.0, 1.537459794428035e-12},{8.0, 1.1224297172982926e-29},
    {15.0, 7.212994172451207e-100},
};

struct SiCiRef {
    double x, si, ci;
};
const SiCiRef kSiCiRefs[] = {
    {0.125, 0.12489154390467225, -1.5061295845296396},
    {0.5, 0.4931074180430667, -0.1777840788066129},
    {1.0, 0.946083070367183, 0.33740392290096816},
    {2.0, 1.6054129768026948, 0.422980828774865},
    {3.5, 1.833125398665997, -0.03212854851248111},
    {5.0, 1.549931244944674, -0.19002974965664388},
    {10.0, 1.6583475942188741, -0.04545643300445537},
    {20.0, 1.54824170104344, 0.044419820845353314},
};
}  // namespace

TEST_CASE("faddeeva_w against tabulated references") {
    for (const WRef& r : kWRefs) {
        const complex<double> w = faddeeva_w({r.zr, r.zi});
        const double scale = std::abs(complex<double>(r.wr, r.wi));
        CHECK(std::abs(w.real() - r.wr) <= 1e-12 * std::max(scale, 1e-3));
        CHECK(std::abs(w.imag() - r.wi) <= 1e-12 * std::max(scale, 1e-3));
    }
}

TEST_CASE("erfc_real against tabulated values and libm") {
    for (const ErfcRef& r : kErfcRefs) {
        CHECK(erfc_real(r.x) == doctest::Approx(r.v).epsilon(1e-13));
        CHECK(erfc_real(-r.x) == doctest::Approx(2.0 - r.v).epsilon(1e-13));
    }
    for (double x = -3.0; x <= 9.0; x += 0.37)
        CHECK(erfc_real(x) == doctest::Approx(std::erfc(x)).epsilon(5e-14));
}

TEST_CASE("dawson consistency with w on the real axis") {
    // Im w(x) = 2/sqrt(pi) D(x)
    for (double x = 0.1; x < 12.0; x += 0.613) {
        const complex<double> w = faddeeva_w({x, 0.0});
        CHECK(w.imag() == doctest::Approx(2.0 / std::sqrt(M_PI) * dawson(x)).epsilon(1e-13));
    }
}

TEST_CASE("sine and cosine integrals") {
    for (const SiCiRef& r : kSiCiRefs) {
        CHECK(sine_integral(r.x) == doctest::Approx(r.si).epsilon(1e-13));
        CHECK(cosine_integral(r.x) == doctest::Approx(r.ci).epsilon(2e-13));
    }
    CHECK(sine_integral(-1.0) == doctest::Approx(-0.946083070367183));
}

TEST_CASE("oscillatory_power_tail recursion") {
    // G_1(s) = -Ci(s) + i (pi/2 - Si(s))
    const complex<double> g1 = oscillatory_power_tail(1, 0.5);
    CHECK(g1.real() == doctest::Approx(0.1777840788066129).epsilon(1e-12));
    CHECK(g1.imag() == doctest::Approx(M_PI / 2 - 0.4931074180430667).epsilon(1e-12));
    // G_k via direct high-accuracy quadrature for a spot check
    // int_1^inf cos(mu s)/mu^3 dmu at s = 1 by parts twice:
    //   = cos(1)/2 - s/2 int_1^inf sin(mu s)/mu^2 dmu ... just compare against
    // a slowly assembled trapez-free reference using the recursion itself at
    // double depth (consistency):
    const complex<double> g3 = oscillatory_power_tail(3, 1.0);
    // independent: G_3 = (is G_2 + e^{is})/2, G_2 = is G_1 + e^{is}
    const complex<double> i{0.0, 1.0};
    const complex<double> eis = std::exp(i);
    const complex<double> g1b = oscillatory_power_tail(1, 1.0);
    const complex<double> g2 = i * g1b + eis;
    CHECK(std::abs(g3 - (i * g2 + eis) / 2.0) < 1e-14);
}

TEST_CASE("expm1_over small-argument series") {
    CHECK(expm1_over({1e-9, 0.0}).real() == doctest::Approx(1.0 + 0.5e-9));
    CHECK(expm1_over({1.0, 0.0}).real() == doctest::Approx(std::exp(1.0) - 1.0));
    const complex<double> z{0.3, -0.2};
    CHECK(std::abs(expm1_over(z) - (std::exp(z) - 1.0) / z) < 1e-14);
}
