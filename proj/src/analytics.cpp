#include "shadowscatter/analytics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "shadowscatter/errors.hpp"

namespace shadowscatter {

namespace {

// All closed forms below are written for omega = 1; a general omega only
// rescales the SNR axis by omega^2.
double strip_omega(double gamma, double omega) { return gamma / (omega * omega); }

bool series_ok_ds(double w) { return std::abs(1.0 - 1.0 / w) <= kSeriesArgMax; }

// DS density, 2F1 route. With gt = m1 m2 / gbar and w = gt*g:
//   f(g) = prod G(m_i+a_j) * S1 * 2F1~(m1+a2, m2+a2; m1+m2+a1+a2; 1-1/w)
//          * g^(-a2-1) * gt^(-a2)
// assembled in log space; the regularizing 1/G(c) is folded into the prefactor.
double pdf_ds_series(const DoubleShadowParams& p, double g, const EvalOptions& opts) {
    const double gt = p.m1 * p.m2 / p.gamma_bar;
    const double w = gt * g;
    const double c = p.m1 + p.m2 + p.alpha1 + p.alpha2;
    const double f = gauss_2f1(p.m1 + p.alpha2, p.m2 + p.alpha2, c, 1.0 - 1.0 / w, opts);
    const double lpref = std::lgamma(p.m1 + p.alpha2) + std::lgamma(p.m2 + p.alpha2) +
                         std::lgamma(p.m1 + p.alpha1) + std::lgamma(p.m2 + p.alpha1) -
                         std::lgamma(p.m1) - std::lgamma(p.m2) - std::lgamma(p.alpha1) -
                         std::lgamma(p.alpha2) - std::lgamma(c) -
                         (p.alpha2 + 1.0) * std::log(g) - p.alpha2 * std::log(gt);
    return std::exp(lpref) * f;
}

// DS density, mixing route: f(g) = gt * int u g_m(gt g u) g_a(u) du with
// g_x the product-gamma densities of the Nakagami and shadowing factors.
double pdf_ds_quad(const DoubleShadowParams& p, double g, const EvalOptions& opts) {
    const double gt = p.m1 * p.m2 / p.gamma_bar;
    const auto f = [&](double u) {
        return u * product_gamma_pdf(p.m1, p.m2, gt * g * u) *
               product_gamma_pdf(p.alpha1, p.alpha2, u);
    };
    return gt * integrate_log_axis(f, opts);
}

// SS density through the Tricomi function:
//   f(g) = G(a+m1) G(a+m2) S2 gt^m1 g^(m1-1) U(a+m1; m1-m2+1; gt*g).
double pdf_ss_series(const SingleShadowParams& p, double g, const EvalOptions& opts) {
    const double gt = p.m1 * p.m2 / p.gamma_bar;
    const double lpref = std::lgamma(p.alpha + p.m1) + std::lgamma(p.alpha + p.m2) -
                         std::lgamma(p.m1) - std::lgamma(p.m2) - std::lgamma(p.alpha) +
                         p.m1 * std::log(gt) + (p.m1 - 1.0) * std::log(g);
    const double lu = log_tricomi_u(p.alpha + p.m1, p.m1 - p.m2 + 1.0, gt * g, opts);
    return std::exp(lpref + lu);
}

double pdf_ss_quad(const SingleShadowParams& p, double g, const EvalOptions& opts) {
    const double gt = p.m1 * p.m2 / p.gamma_bar;
    const double lga = std::lgamma(p.alpha);
    const auto f = [&](double u) {
        const double gamma_w = std::exp((p.alpha - 1.0) * std::log(u) - u - lga);
        return u * product_gamma_pdf(p.m1, p.m2, gt * g * u) * gamma_w;
    };
    return gt * integrate_log_axis(f, opts);
}

// DS distribution through the beta-prime factorization: the per-hop SNRs
// M_j = N_j^2 I_j are scaled beta-primes, so
//   F(g) = E_T[ I_{w/(w+t)}(m1, a1) ],  T ~ beta-prime(m2, a2),  w = gt*g.
double cdf_ds_mix(const DoubleShadowParams& p, double g, const EvalOptions& opts) {
    const double w = p.m1 * p.m2 * g / p.gamma_bar;
    const double lb = std::lgamma(p.m2) + std::lgamma(p.alpha2) - std::lgamma(p.m2 + p.alpha2);
    const auto f = [&](double t) {
        const double x = w / (w + t);
        const double ib = boost::math::ibeta(p.m1, p.alpha1, x);
        if (ib <= 0.0) return 0.0;
        return ib * std::exp((p.m2 - 1.0) * std::log(t) - (p.m2 + p.alpha2) * std::log1p(t) - lb);
    };
    return std::clamp(integrate_log_axis(f, opts), 0.0, 1.0);
}

// SS distribution: gamma = M1 * N2^2 with M1 the beta-prime hop, so the
// incomplete beta mixes against a Gamma(m2) weight.
double cdf_ss_mix(const SingleShadowParams& p, double g, const EvalOptions& opts) {
    const double th1 = p.gamma_bar / p.m1;
    const double lg = std::lgamma(p.m2);
    const auto f = [&](double x) {
        const double z = p.m2 * g / (x * th1);
        const double ib = boost::math::ibeta(p.m1, p.alpha, z / (1.0 + z));
        if (ib <= 0.0) return 0.0;
        return ib * std::exp((p.m2 - 1.0) * std::log(x) - x - lg);
    };
    return std::clamp(integrate_log_axis(f, opts), 0.0, 1.0);
}

template <class Pdf>
double cdf_cumulative(Pdf&& pdf, double g, const EvalOptions& opts) {
    return std::clamp(integrate_finite(pdf, 0.0, g, opts), 0.0, 1.0);
}

} // namespace

double pdf_ds(const DoubleShadowParams& params, double gamma, const EvalOptions& opts) {
    const auto p = validate(params);
    if (!(gamma > 0.0)) throw DomainError("pdf_ds: gamma must be positive");
    const double o2 = p.omega * p.omega;
    const double g = strip_omega(gamma, p.omega);
    DoubleShadowParams q = p;
    q.omega = 1.0;
    const double w = q.m1 * q.m2 * g / q.gamma_bar;
    double v = 0.0;
    switch (opts.method) {
        case Method::series:
            if (!series_ok_ds(w))
                throw SeriesInapplicable("pdf_ds: 2F1 argument outside series radius; "
                                         "use the quadrature method");
            v = pdf_ds_series(q, g, opts);
            break;
        case Method::quadrature:
            v = pdf_ds_quad(q, g, opts);
            break;
        case Method::auto_eval:
            v = series_ok_ds(w) ? pdf_ds_series(q, g, opts) : pdf_ds_quad(q, g, opts);
            break;
    }
    return v / o2;
}

const char* pdf_ds_route(const DoubleShadowParams& params, double gamma) {
    const auto p = validate(params);
    const double w = p.m1 * p.m2 * strip_omega(gamma, p.omega) / p.gamma_bar;
    return series_ok_ds(w) ? "series" : "quadrature";
}

double pdf_ss(const SingleShadowParams& params, double gamma, const EvalOptions& opts) {
    const auto p = validate(params);
    if (!(gamma > 0.0)) throw DomainError("pdf_ss: gamma must be positive");
    const double o2 = p.omega * p.omega;
    const double g = strip_omega(gamma, p.omega);
    SingleShadowParams q = p;
    q.omega = 1.0;
    const double v = (opts.method == Method::quadrature) ? pdf_ss_quad(q, g, opts)
                                                         : pdf_ss_series(q, g, opts);
    return v / o2;
}

double cdf_ds(const DoubleShadowParams& params, double gamma, const EvalOptions& opts) {
    const auto p = validate(params);
    if (gamma < 0.0) throw DomainError("cdf_ds: gamma must be nonnegative");
    if (gamma == 0.0) return 0.0;
    const double g = strip_omega(gamma, p.omega);
    DoubleShadowParams q = p;
    q.omega = 1.0;
    if (opts.method == Method::quadrature) {
        EvalOptions inner = opts;
        inner.method = Method::auto_eval;
        return cdf_cumulative([&](double t) { return t > 0 ? pdf_ds(q, t, inner) : 0.0; }, g,
                              opts);
    }
    return cdf_ds_mix(q, g, opts);
}

double cdf_ss(const SingleShadowParams& params, double gamma, const EvalOptions& opts) {
    const auto p = validate(params);
    if (gamma < 0.0) throw DomainError("cdf_ss: gamma must be nonnegative");
    if (gamma == 0.0) return 0.0;
    const double g = strip_omega(gamma, p.omega);
    SingleShadowParams q = p;
    q.omega = 1.0;
    if (opts.method == Method::quadrature) {
        EvalOptions inner = opts;
        inner.method = Method::auto_eval;
        return cdf_cumulative([&](double t) { return t > 0 ? pdf_ss(q, t, inner) : 0.0; }, g,
                              opts);
    }
    return cdf_ss_mix(q, g, opts);
}

double outage(const DoubleShadowParams& p, double gamma_t, const EvalOptions& opts) {
    return cdf_ds(p, gamma_t, opts);
}

double outage(const SingleShadowParams& p, double gamma_t, const EvalOptions& opts) {
    return cdf_ss(p, gamma_t, opts);
}

namespace {

template <class Cdf>
double bep_from_cdf(Cdf&& cdf, const EvalOptions& opts) {
    // 1/(2 sqrt(pi)) int F(g) g^(-1/2) e^-g dg  ==  1/sqrt(pi) int F(t^2) e^(-t^2) dt
    const auto f = [&](double t) {
        const double t2 = t * t;
        if (t2 > 700.0) return 0.0; // weight underflows before F matters
        return cdf(t2) * std::exp(-t2);
    };
    const double v = integrate_right_tail(f, 0.0, opts) / std::sqrt(M_PI);
    return std::clamp(v, 0.0, 0.5);
}

template <class Pdf>
double capacity_integral(Pdf&& pdf, double bw, const EvalOptions& opts) {
    const auto f = [&](double g) { return std::log2(1.0 + g) * pdf(g); };
    return bw * integrate_log_axis(f, opts);
}

} // namespace

double bep_bpsk(const DoubleShadowParams& params, const EvalOptions& opts) {
    const auto p = validate(params);
    return bep_from_cdf([&](double g) { return g > 0 ? cdf_ds(p, g, opts) : 0.0; }, opts);
}

double bep_bpsk(const SingleShadowParams& params, const EvalOptions& opts) {
    const auto p = validate(params);
    return bep_from_cdf([&](double g) { return g > 0 ? cdf_ss(p, g, opts) : 0.0; }, opts);
}

double capacity(const DoubleShadowParams& params, double bandwidth_hz, const EvalOptions& opts) {
    const auto p = validate(params);
    if (!(bandwidth_hz > 0.0)) throw DomainError("capacity: bandwidth must be positive");
    EvalOptions inner = opts;
    inner.method = Method::auto_eval;
    return capacity_integral([&](double g) { return pdf_ds(p, g, inner); }, bandwidth_hz, opts);
}

double capacity(const SingleShadowParams& params, double bandwidth_hz, const EvalOptions& opts) {
    const auto p = validate(params);
    if (!(bandwidth_hz > 0.0)) throw DomainError("capacity: bandwidth must be positive");
    EvalOptions inner = opts;
    inner.method = Method::auto_eval;
    return capacity_integral([&](double g) { return pdf_ss(p, g, inner); }, bandwidth_hz, opts);
}

std::vector<SweepRow> sweep_pdf(const AnyParams& p, const std::vector<double>& gammas,
                                const EvalOptions& opts) {
    std::vector<SweepRow> rows;
    rows.reserve(gammas.size());
    for (double g : gammas) {
        SweepRow r;
        r.x = g;
        if (std::holds_alternative<DoubleShadowParams>(p)) {
            const auto& q = std::get<DoubleShadowParams>(p);
            r.value = pdf_ds(q, g, opts);
            r.method = opts.method == Method::auto_eval
                           ? pdf_ds_route(q, g)
                           : (opts.method == Method::series ? "series" : "quadrature");
        } else {
            r.value = pdf_ss(std::get<SingleShadowParams>(p), g, opts);
            r.method = opts.method == Method::quadrature ? "quadrature" : "series";
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<SweepRow> sweep_cdf(const AnyParams& p, const std::vector<double>& gammas,
                                const EvalOptions& opts) {
    std::vector<SweepRow> rows;
    rows.reserve(gammas.size());
    const char* method = opts.method == Method::quadrature ? "quadrature" : "series";
    for (double g : gammas) {
        SweepRow r;
        r.x = g;
        r.value = std::holds_alternative<DoubleShadowParams>(p)
                      ? cdf_ds(std::get<DoubleShadowParams>(p), g, opts)
                      : cdf_ss(std::get<SingleShadowParams>(p), g, opts);
        r.method = method;
        rows.push_back(std::move(r));
    }
    return rows;
}

double nakagami_product_cdf(double m1, double m2, double omega, double x,
                            const EvalOptions& opts) {
    if (!(x > 0.0)) return 0.0;
    return product_gamma_cdf(m1, m2, m1 * m2 * x / (omega * omega), opts);
}

CdfCurve cdf_curve(const AnyParams& p, const EvalOptions& opts) {
    const auto f = [p, opts](double g) {
        return std::holds_alternative<DoubleShadowParams>(p)
                   ? cdf_ds(std::get<DoubleShadowParams>(p), g, opts)
                   : cdf_ss(std::get<SingleShadowParams>(p), g, opts);
    };
    double mean_scale;
    if (std::holds_alternative<DoubleShadowParams>(p)) {
        const auto& q = std::get<DoubleShadowParams>(p);
        mean_scale = q.omega * q.omega * q.gamma_bar / ((q.alpha1 - 1) * (q.alpha2 - 1));
    } else {
        const auto& q = std::get<SingleShadowParams>(p);
        mean_scale = q.omega * q.omega * q.gamma_bar / (q.alpha - 1);
    }
    return CdfCurve::build_auto(f, mean_scale);
}

} // namespace shadowscatter
