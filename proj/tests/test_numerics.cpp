#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "shadowscatter/errors.hpp"
#include "shadowscatter/numerics.hpp"

using namespace shadowscatter;

TEST_CASE("quadrature wrappers on known integrals") {
    // endpoint singularity
    CHECK(integrate_finite([](double x) { return 1.0 / std::sqrt(x); }, 0, 1) ==
          doctest::Approx(2.0).epsilon(1e-10));
    // exponential tail
    CHECK(integrate_right_tail([](double x) { return std::exp(-x) * x; }, 0) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // gamma density over the log axis
    const double a = 3.7;
    const double lg = std::lgamma(a);
    CHECK(integrate_log_axis([&](double u) {
              return std::exp((a - 1) * std::log(u) - u - lg);
          }) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("2F1 series against reference values") {
    EvalOptions tight;
    tight.rel_tol = 1e-14;
    CHECK(gauss_2f1(1.5, 2.3, 4.1, 0.5, tight) ==
          doctest::Approx(1.712609043701016).epsilon(1e-12));
    CHECK(gauss_2f1(2.0, 3.0, 5.0, -0.8, tight) ==
          doctest::Approx(0.474062737800368).epsilon(1e-12));
    CHECK(gauss_2f1(0.5, 0.5, 1.5, 0.64, tight) ==
          doctest::Approx(1.159119022502015).epsilon(1e-12));
    CHECK(gauss_2f1(4.3, 4.8, 9.6, 0.8, tight) ==
          doctest::Approx(16.15389711443447).epsilon(1e-11));
    // large symmetric parameters of the selection kernels: the negative-x
    // branch must not cancel catastrophically
    CHECK(gauss_2f1(46.5, 45.0, 92.8, -0.8, tight) ==
          doctest::Approx(6.537898697058192e-7).epsilon(1e-10));
    CHECK(gauss_2f1(1.0, 1.0, 2.0, 0.3, tight) ==
          doctest::Approx(-std::log(0.7) / 0.3).epsilon(1e-12));
    CHECK_THROWS_AS((void)gauss_2f1(1, 1, 2, 0.9), SeriesInapplicable);
}

TEST_CASE("log Bessel K: boost region, asymptotic region, half-integer exactness") {
    // K_{1/2}(x) = sqrt(pi/(2x)) e^-x exactly, in both branches
    for (const double x : {1.0, 50.0, 700.0, 2000.0}) {
        const double expect = 0.5 * std::log(M_PI / (2 * x)) - x;
        CHECK(log_bessel_k(0.5, x) == doctest::Approx(expect).epsilon(1e-12));
    }
    // K_{3/2}(x) = sqrt(pi/(2x)) e^-x (1 + 1/x); asymptotic terms are exact here
    for (const double x : {2.0, 800.0}) {
        const double expect = 0.5 * std::log(M_PI / (2 * x)) - x + std::log1p(1.0 / x);
        CHECK(log_bessel_k(1.5, x) == doctest::Approx(expect).epsilon(1e-12));
    }
    // order symmetry
    CHECK(log_bessel_k(-2.3, 1.7) == log_bessel_k(2.3, 1.7));
}

TEST_CASE("product-gamma density and distribution") {
    CHECK(product_gamma_pdf(1.7, 2.2, 1.0) == doctest::Approx(0.2396022968841693).epsilon(1e-10));
    CHECK(product_gamma_pdf(1.0, 1.0, 0.5) == doctest::Approx(0.4782844214521623).epsilon(1e-10));
    CHECK(product_gamma_pdf(2.0, 2.5, 3.0) == doctest::Approx(0.1252044529797316).epsilon(1e-10));
    CHECK(integrate_log_axis([](double u) { return product_gamma_pdf(1.7, 2.2, u); }) ==
          doctest::Approx(1.0).epsilon(1e-8));

    CHECK(product_gamma_cdf(1.7, 2.2, 1.0) == doctest::Approx(0.2387562127111587).epsilon(1e-8));
    CHECK(product_gamma_cdf(2.0, 2.5, 3.0) == doctest::Approx(0.4556014964433244).epsilon(1e-8));
    CHECK(product_gamma_cdf(4.0, 4.0, 16.0) == doctest::Approx(0.6157260103133499).epsilon(1e-8));
    CHECK(product_gamma_cdf(2.0, 2.0, 1e9) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(product_gamma_cdf(2.0, 2.0, 0.0) == 0.0);
}

TEST_CASE("Tricomi U against reference values") {
    CHECK(std::exp(log_tricomi_u(2.5, 0.3, 1.2)) ==
          doctest::Approx(0.04776573576208011).epsilon(1e-9));
    CHECK(std::exp(log_tricomi_u(4.5, -1.0, 0.37)) ==
          doctest::Approx(0.001370147566466191).epsilon(1e-9));
    CHECK(std::exp(log_tricomi_u(3.3, 1.0, 2.0)) ==
          doctest::Approx(0.00830199557794185).epsilon(1e-9));
    CHECK(std::exp(log_tricomi_u(12.5, 0.5, 0.05)) ==
          doctest::Approx(7.925380279301119e-10).epsilon(1e-9));
}

TEST_CASE("dB round trip") {
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(linear_to_db(db_to_linear(-33.7)) == doctest::Approx(-33.7).epsilon(1e-13));
}

TEST_CASE("CdfCurve reproduces a known distribution") {
    const auto expcdf = [](double x) { return x > 0 ? -std::expm1(-x) : 0.0; };
    const auto curve = CdfCurve::build_auto(expcdf, 1.0);
    double worst = 0;
    for (double x = 0.01; x < 12.0; x *= 1.17)
        worst = std::max(worst, std::abs(curve(x) - expcdf(x)));
    CHECK(worst < 1e-6);
    CHECK(curve(0.0) == 0.0);
    CHECK(curve(1e9) == doctest::Approx(1.0).epsilon(1e-6));
}
