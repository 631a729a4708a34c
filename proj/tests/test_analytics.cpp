#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "shadowscatter/analytics.hpp"
#include "shadowscatter/errors.hpp"

using namespace shadowscatter;

namespace {

DoubleShadowParams fig3_params() {
    DoubleShadowParams p;
    p.m1 = 1.5;
    p.m2 = 1.8;
    p.alpha1 = 2.0;
    p.alpha2 = 2.5;
    p.gamma_bar = 1.0;
    return p;
}

SingleShadowParams ss_params() {
    SingleShadowParams p;
    p.m1 = 1.5;
    p.m2 = 1.8;
    p.alpha = 2.5;
    p.gamma_bar = 1.0;
    return p;
}

} // namespace

TEST_CASE("DS density against reference values") {
    const auto p = fig3_params();
    CHECK(pdf_ds(p, 0.1) == doctest::Approx(2.295428002311414).epsilon(1e-8));
    CHECK(pdf_ds(p, 0.5) == doctest::Approx(0.4017102173297536).epsilon(1e-8));
    CHECK(pdf_ds(p, 1.0) == doctest::Approx(0.1354908698808659).epsilon(1e-8));
    CHECK(pdf_ds(p, 2.0) == doctest::Approx(0.03771396781658647).epsilon(1e-8));
    CHECK(pdf_ds(p, 10.0) == doctest::Approx(0.001042126075036011).epsilon(1e-8));

    // degenerate shape pairs and sub-unit m
    DoubleShadowParams q;
    q.m1 = q.m2 = 1.0;
    q.alpha1 = q.alpha2 = 2.0;
    CHECK(pdf_ds(q, 1.0) == doctest::Approx(0.1333333333333333).epsilon(1e-8));
    CHECK(pdf_ds(q, 40.0) == doctest::Approx(7.532864741507502e-5).epsilon(1e-7));

    DoubleShadowParams r;
    r.m1 = 0.8;
    r.m2 = 2.2;
    r.alpha1 = 1.7;
    r.alpha2 = 4.0;
    r.gamma_bar = 3.0;
    CHECK(pdf_ds(r, 2.0) == doctest::Approx(0.06472406457093432).epsilon(1e-8));

    CHECK_THROWS_AS((void)pdf_ds(p, 0.0), DomainError);
}

TEST_CASE("DS density: both routes agree and the series refuses out of range") {
    const auto p = fig3_params();
    EvalOptions series, quad;
    series.method = Method::series;
    quad.method = Method::quadrature;
    for (double g = 0.45; g < 1.8; g *= 1.2) { // w = 2.7 g stays in the series band
        const double a = pdf_ds(p, g, series);
        const double b = pdf_ds(p, g, quad);
        CHECK(a == doctest::Approx(b).epsilon(1e-7));
    }
    CHECK(std::string(pdf_ds_route(p, 1.0)) == "series");
    CHECK(std::string(pdf_ds_route(p, 100.0)) == "quadrature");
    CHECK_THROWS_AS((void)pdf_ds(p, 100.0, series), SeriesInapplicable);
    CHECK_NOTHROW((void)pdf_ds(p, 100.0));
}

TEST_CASE("SS density: reference values and route agreement") {
    const auto p = ss_params();
    CHECK(pdf_ss(p, 0.1) == doctest::Approx(2.042364583190198).epsilon(1e-8));
    CHECK(pdf_ss(p, 1.0) == doctest::Approx(0.1928518359244077).epsilon(1e-8));
    CHECK(pdf_ss(p, 5.0) == doctest::Approx(0.005384311905256739).epsilon(1e-8));

    SingleShadowParams q;
    q.m1 = q.m2 = 1.0;
    q.alpha = 3.0;
    q.gamma_bar = 2.0;
    CHECK(pdf_ss(q, 1.5) == doctest::Approx(0.1096949571589264).epsilon(1e-8));

    EvalOptions quad;
    quad.method = Method::quadrature;
    for (double g : {0.05, 0.7, 4.0, 60.0})
        CHECK(pdf_ss(p, g) == doctest::Approx(pdf_ss(p, g, quad)).epsilon(1e-7));
}

TEST_CASE("normalization and swap symmetry across a parameter grid") {
    std::vector<DoubleShadowParams> grid;
    {
        DoubleShadowParams p = fig3_params();
        grid.push_back(p);
        p.m1 = p.m2 = 1.0;
        p.alpha1 = p.alpha2 = 2.0;
        grid.push_back(p);
        p.m1 = 0.8;
        p.m2 = 2.2;
        p.alpha1 = 1.7;
        p.alpha2 = 4.0;
        p.gamma_bar = 3.0;
        grid.push_back(p);
        p.m1 = 3.0;
        p.m2 = 3.0;
        p.alpha1 = 3.0;
        p.alpha2 = 3.5;
        p.gamma_bar = 0.25;
        grid.push_back(p);
    }
    for (const auto& p : grid) {
        const double norm =
            integrate_log_axis([&](double g) { return pdf_ds(p, g); });
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));

        DoubleShadowParams s = p;
        std::swap(s.m1, s.m2);
        std::swap(s.alpha1, s.alpha2);
        for (double g : {0.3, 2.0})
            CHECK(pdf_ds(s, g) == doctest::Approx(pdf_ds(p, g)).epsilon(1e-12));
    }
    const double norm_ss = integrate_log_axis([&](double g) { return pdf_ss(ss_params(), g); });
    CHECK(norm_ss == doctest::Approx(1.0).epsilon(1e-6));

    SingleShadowParams sswap = ss_params();
    std::swap(sswap.m1, sswap.m2);
    CHECK(pdf_ss(sswap, 0.8) == doctest::Approx(pdf_ss(ss_params(), 0.8)).epsilon(1e-12));
}

TEST_CASE("scale equivariance of the density") {
    const auto p = fig3_params();
    DoubleShadowParams c = p;
    c.gamma_bar *= 7.0;
    for (double g : {0.2, 1.0, 6.0})
        CHECK(pdf_ds(c, 7.0 * g) == doctest::Approx(pdf_ds(p, g) / 7.0).epsilon(1e-9));
}

TEST_CASE("CDF: reference values, monotonicity, pdf consistency") {
    const auto p = fig3_params();
    CHECK(cdf_ds(p, 0.1) == doctest::Approx(0.3691879432048129).epsilon(1e-8));
    CHECK(cdf_ds(p, 0.5) == doctest::Approx(0.7479598563738637).epsilon(1e-8));
    CHECK(cdf_ds(p, 1.0) == doctest::Approx(0.8649743362581533).epsilon(1e-8));
    CHECK(cdf_ds(p, 2.0) == doctest::Approx(0.9371435307969494).epsilon(1e-8));
    CHECK(cdf_ds(p, 10.0) == doctest::Approx(0.9933417055674299).epsilon(1e-8));
    CHECK(cdf_ds(p, 0.0) == 0.0);
    CHECK(cdf_ds(p, 1e8) == doctest::Approx(1.0).epsilon(1e-5));

    const auto s = ss_params();
    CHECK(cdf_ss(s, 0.1) == doctest::Approx(0.2469399141704147).epsilon(1e-8));
    CHECK(cdf_ss(s, 1.0) == doctest::Approx(0.8313402531785483).epsilon(1e-8));
    CHECK(cdf_ss(s, 5.0) == doctest::Approx(0.9859242716830413).epsilon(1e-8));

    // cumulative-quadrature route agrees with the mixture route
    EvalOptions quad;
    quad.method = Method::quadrature;
    for (double g : {0.2, 1.0, 4.0}) {
        CHECK(cdf_ds(p, g, quad) == doctest::Approx(cdf_ds(p, g)).epsilon(1e-7));
        CHECK(cdf_ss(s, g, quad) == doctest::Approx(cdf_ss(s, g)).epsilon(1e-7));
    }

    // monotone in gamma; numerical derivative matches the density
    double prev = 0;
    for (double g = 0.05; g < 30; g *= 1.4) {
        const double F = cdf_ds(p, g);
        CHECK(F >= prev);
        prev = F;
        const double h = 1e-4 * g;
        const double deriv = (cdf_ds(p, g + h) - cdf_ds(p, g - h)) / (2 * h);
        CHECK(deriv == doctest::Approx(pdf_ds(p, g)).epsilon(1e-4));
    }
}

TEST_CASE("outage edge cases and bulk DS/SS ordering") {
    const auto p = fig3_params();
    CHECK(outage(p, 0.0) == 0.0);
    double prev = -1;
    for (double t = 0.01; t < 10; t *= 2) {
        const double v = outage(p, t);
        CHECK(v >= prev);
        prev = v;
    }
    // equal shapes: double shadowing gives the larger outage through the bulk
    DoubleShadowParams d;
    d.m1 = 1.5;
    d.m2 = 1.8;
    d.alpha1 = d.alpha2 = 2.5;
    SingleShadowParams s = ss_params();
    for (double t = 0.02; t < 5; t *= 2.0)
        CHECK(outage(d, t) >= outage(s, t));
}

TEST_CASE("BPSK error probability: reference values and limits") {
    DoubleShadowParams p; // Fig. 1 style: m2 = m1+0.3, a2 = a1+0.3
    p.m1 = 1.5;
    p.m2 = 1.8;
    p.alpha1 = 2.0;
    p.alpha2 = 2.3;
    p.gamma_bar = 1.0;
    CHECK(bep_bpsk(p) == doctest::Approx(0.25007616417).epsilon(1e-7));
    p.gamma_bar = db_to_linear(5);
    CHECK(bep_bpsk(p) == doctest::Approx(0.15810642902).epsilon(1e-7));
    p.gamma_bar = db_to_linear(10);
    CHECK(bep_bpsk(p) == doctest::Approx(0.0810995739289).epsilon(1e-7));
    p.gamma_bar = db_to_linear(15);
    CHECK(bep_bpsk(p) == doctest::Approx(0.0330875067409).epsilon(1e-7));

    SingleShadowParams s;
    s.m1 = 1.5;
    s.m2 = 1.8;
    s.alpha = 2.0;
    s.gamma_bar = 10.0;
    CHECK(bep_bpsk(s) == doctest::Approx(0.0460712908747).epsilon(1e-7));

    // vanishing SNR drives the error rate to 1/2; BEP decreases with SNR
    p.gamma_bar = 1e-9;
    CHECK(bep_bpsk(p) == doctest::Approx(0.5).epsilon(1e-3));
    double prev = 1.0;
    for (double gdb = -5; gdb <= 20; gdb += 5) {
        p.gamma_bar = db_to_linear(gdb);
        const double b = bep_bpsk(p);
        CHECK(b < prev);
        CHECK(b > 0.0);
        CHECK(b <= 0.5);
        prev = b;
    }
}

TEST_CASE("capacity: reference values, shadowing severity ordering, limits") {
    DoubleShadowParams p; // Fig. 2 style: a2 = a1+0.1
    p.m1 = 1.5;
    p.m2 = 1.8;
    p.gamma_bar = 10.0;
    double prev = 1e9, prev_gap = 1e9;
    const double expected[] = {1.99915223412, 1.17843864708, 0.76893706749};
    int i = 0;
    for (double a1 : {2.0, 3.0, 4.0}) {
        p.alpha1 = a1;
        p.alpha2 = a1 + 0.1;
        const double c = capacity(p);
        CHECK(c == doctest::Approx(expected[i++]).epsilon(1e-7));
        const double gap = prev - c;
        CHECK(c < prev);
        CHECK(gap < prev_gap); // decreasing increments
        prev = c;
        prev_gap = gap;
    }

    p.alpha1 = 2.0;
    p.alpha2 = 2.1;
    p.gamma_bar = 1e-8;
    CHECK(capacity(p) < 1e-6);
    CHECK(capacity(p, 1e6) == doctest::Approx(1e6 * capacity(p)).epsilon(1e-9));
    CHECK_THROWS_AS((void)capacity(p, 0.0), DomainError);
}

TEST_CASE("nonnegativity across a wide log grid") {
    const auto p = fig3_params();
    for (double g = 1e-6; g < 1e6; g *= 10) {
        CHECK(pdf_ds(p, g) >= 0.0);
        const double F = cdf_ds(p, g);
        CHECK(F >= 0.0);
        CHECK(F <= 1.0);
    }
}

TEST_CASE("model constants") {
    const auto p = fig3_params();
    const auto c = model_constants(p);
    CHECK(c.s1 > 0.0);
    CHECK(c.s1 == doctest::Approx(std::exp(-std::lgamma(1.5) - std::lgamma(1.8) -
                                           std::lgamma(2.0) - std::lgamma(2.5)))
                      .epsilon(1e-14));
    CHECK(c.gamma_tilde == doctest::Approx(1.5 * 1.8 / 1.0).epsilon(1e-14));

    SingleShadowParams s = ss_params();
    const auto cs = model_constants(s);
    CHECK(cs.s2 > 0.0);
    CHECK(cs.gamma_tilde == doctest::Approx(1.5 * 1.8).epsilon(1e-14));
}

TEST_CASE("tabulated CDF matches the exact one") {
    const auto p = fig3_params();
    const auto curve = cdf_curve(AnyParams{p});
    for (double g : {0.05, 0.3, 1.0, 4.0, 30.0})
        CHECK(curve(g) == doctest::Approx(cdf_ds(p, g)).epsilon(2e-6));
}
