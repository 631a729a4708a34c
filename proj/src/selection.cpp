#include "shadowscatter/selection.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "shadowscatter/analytics.hpp"
#include "shadowscatter/errors.hpp"
#include "shadowscatter/rng.hpp"

namespace shadowscatter {

namespace {

constexpr int kMaxSeriesK = 12;
constexpr int kMaxSeriesL = 8;
constexpr double kIntTol = 1e-9;

bool near_int(double x) { return std::abs(x - std::round(x)) < kIntTol; }

const DoubleShadowParams& ds_base(const SelectionParams& sel) {
    if (!std::holds_alternative<DoubleShadowParams>(sel.base))
        throw DomainError("selection: DS operation called with an SS base model");
    return std::get<DoubleShadowParams>(sel.base);
}

const SingleShadowParams& ss_base(const SelectionParams& sel) {
    if (!std::holds_alternative<SingleShadowParams>(sel.base))
        throw DomainError("selection: SS operation called with a DS base model");
    return std::get<SingleShadowParams>(sel.base);
}

// Enumerates compositions of `total` into `parts` nonnegative integers.
template <class Visit>
void visit_compositions(int total, int parts, std::vector<int>& scratch, int idx, Visit&& visit) {
    if (idx == parts - 1) {
        scratch[idx] = total;
        visit(scratch);
        return;
    }
    for (int v = 0; v <= total; ++v) {
        scratch[idx] = v;
        visit_compositions(total - v, parts, scratch, idx + 1, visit);
    }
}

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// log of the multinomial weight i2!/prod(n_k!) * prod_k (1/k!)^n_k
double log_multinomial_part(int i2, const std::vector<int>& n) {
    double lg = std::lgamma(i2 + 1.0);
    for (std::size_t k = 0; k < n.size(); ++k) {
        lg -= std::lgamma(n[k] + 1.0);
        lg -= n[k] * std::lgamma(static_cast<double>(k) + 1.0);
    }
    return lg;
}

// DIG density of I = I1*I2, general shapes (Eq.-level identity
// I = gbar / (G_a1 G_a2)), used by both routes of pdf_imax.
double dig_pdf(double a1, double a2, double gbar, double y) {
    if (!(y > 0.0)) return 0.0;
    return product_gamma_pdf(a1, a2, gbar / y) * gbar / (y * y);
}

double dig_cdf_quad(double a1, double a2, double gbar, double y, const EvalOptions& opts) {
    if (!(y > 0.0)) return 0.0;
    return std::clamp(1.0 - product_gamma_cdf(a1, a2, gbar / y, opts), 0.0, 1.0);
}

} // namespace

SelectionParams validate(SelectionParams sel) {
    if (sel.L < 1) throw DomainError("selection: L must be >= 1");
    if (std::holds_alternative<DoubleShadowParams>(sel.base))
        sel.base = validate(std::get<DoubleShadowParams>(sel.base));
    else
        sel.base = validate(std::get<SingleShadowParams>(sel.base));
    return sel;
}

bool ds_series_applicable(const DoubleShadowParams& p, int L) {
    const double K = 2.0 * p.alpha1;
    return near_int(K) && std::abs(p.alpha2 - p.alpha1 - 0.5) < kIntTol &&
           K <= kMaxSeriesK + kIntTol && L >= 1 && L <= kMaxSeriesL;
}

bool ss_series_applicable(const SingleShadowParams& p, int L) {
    return near_int(p.alpha) && p.alpha <= kMaxSeriesK + kIntTol && L >= 1 && L <= kMaxSeriesL;
}

std::vector<ExpansionTerm> expansion_terms_ds(const DoubleShadowParams& params, int L) {
    const auto p = validate(params);
    if (!ds_series_applicable(p, L))
        throw SeriesInapplicable(
            "DS series requires 2*alpha1 integer <= 12, alpha2 = alpha1 + 1/2 and L <= 8");
    const int K = static_cast<int>(std::round(2.0 * p.alpha1));
    std::vector<ExpansionTerm> terms;
    std::vector<int> scratch(K);
    for (int i1 = 0; i1 < L; ++i1) {
        for (int i2 = 0; i2 <= i1; ++i2) {
            const double lb = log_binomial(L - 1, i1) + log_binomial(i1, i2);
            const double sign = ((i1 + i2) % 2 == 0) ? 1.0 : -1.0;
            visit_compositions(i2, K, scratch, 0, [&](const std::vector<int>& n) {
                ExpansionTerm t;
                t.i1 = i1;
                t.i2 = i2;
                t.n_vec = n;
                t.power = 0;
                for (std::size_t k = 0; k < n.size(); ++k)
                    t.power += static_cast<int>(k) * n[k];
                t.coef = sign * std::exp(lb + log_multinomial_part(i2, n));
                t.q = p.alpha1 + p.alpha2 + t.power;
                terms.push_back(std::move(t));
            });
        }
    }
    return terms;
}

std::vector<ExpansionTerm> expansion_terms_ss(const SingleShadowParams& params, int L) {
    const auto p = validate(params);
    if (!ss_series_applicable(p, L))
        throw SeriesInapplicable("SS series requires integer alpha <= 12 and L <= 8");
    const int A = static_cast<int>(std::round(p.alpha));
    std::vector<ExpansionTerm> terms;
    std::vector<int> scratch(A);
    visit_compositions(L - 1, A, scratch, 0, [&](const std::vector<int>& n) {
        ExpansionTerm t;
        t.n_vec = n;
        t.power = 0;
        for (std::size_t k = 0; k < n.size(); ++k) t.power += static_cast<int>(k) * n[k];
        t.coef = std::exp(log_multinomial_part(L - 1, n));
        t.q = p.alpha + t.power;
        terms.push_back(std::move(t));
    });
    return terms;
}

// ---------------------------------------------------------------------------
// I_max density

double pdf_imax_ds(const SelectionParams& sel_in, double y, const EvalOptions& opts) {
    const auto sel = validate(sel_in);
    const auto& p = ds_base(sel);
    if (!(y > 0.0)) throw DomainError("pdf_imax_ds: y must be positive");
    const bool series_ok = ds_series_applicable(p, sel.L);
    const bool use_series =
        opts.method == Method::series || (opts.method == Method::auto_eval && series_ok);
    if (opts.method == Method::series && !series_ok)
        throw SeriesInapplicable("pdf_imax_ds series route not applicable at these parameters");

    const double fI = dig_pdf(p.alpha1, p.alpha2, p.gamma_bar, y);
    if (use_series) {
        const auto terms = expansion_terms_ds(p, sel.L);
        const double v = 2.0 * std::sqrt(p.gamma_bar / y);
        const double lv = std::log(v);
        double s = 0.0;
        for (const auto& t : terms) s += t.coef * std::exp(t.power * lv - t.i2 * v);
        return sel.L * fI * std::max(s, 0.0);
    }
    const double F = dig_cdf_quad(p.alpha1, p.alpha2, p.gamma_bar, y, opts);
    return sel.L * fI * std::pow(F, sel.L - 1);
}

double pdf_imax_ss(const SelectionParams& sel_in, double y, const EvalOptions& opts) {
    const auto sel = validate(sel_in);
    const auto& p = ss_base(sel);
    if (!(y > 0.0)) throw DomainError("pdf_imax_ss: y must be positive");
    const bool series_ok = ss_series_applicable(p, sel.L);
    const bool use_series =
        opts.method == Method::series || (opts.method == Method::auto_eval && series_ok);
    if (opts.method == Method::series && !series_ok)
        throw SeriesInapplicable("pdf_imax_ss series route not applicable at these parameters");

    const double u = p.gamma_bar / y;
    const double lfI =
        p.alpha * std::log(p.gamma_bar) - std::lgamma(p.alpha) - (p.alpha + 1.0) * std::log(y) - u;
    const double fI = std::exp(lfI);
    if (use_series) {
        const auto terms = expansion_terms_ss(p, sel.L);
        const double lu = std::log(u);
        double s = 0.0;
        for (const auto& t : terms) s += t.coef * std::exp(t.power * lu);
        return sel.L * fI * std::exp(-(sel.L - 1) * u) * s;
    }
    const double F = boost::math::gamma_q(p.alpha, u);
    return sel.L * fI * std::pow(F, sel.L - 1);
}

// ---------------------------------------------------------------------------
// Output SNR statistics

namespace {

struct DsKernel {
    double weight;
    DoubleShadowParams params;
};

// Signed kernel mixture implementing the term-by-term reduction of the
// output-SNR series: component (i1,i2,n) is the DS distribution with shapes
// ((K+P)/2, (K+P+1)/2) and scale gbar*(i2+1)^2.
std::vector<DsKernel> ds_output_kernels(const DoubleShadowParams& p, int L) {
    const int K = static_cast<int>(std::round(2.0 * p.alpha1));
    const auto terms = expansion_terms_ds(p, L);
    std::vector<DsKernel> kernels;
    kernels.reserve(terms.size());
    const double lgK = std::lgamma(static_cast<double>(K));
    for (const auto& t : terms) {
        const int qh = K + t.power;
        DsKernel k;
        k.weight = L * t.coef *
                   std::exp(std::lgamma(static_cast<double>(qh)) - lgK -
                            qh * std::log1p(static_cast<double>(t.i2)));
        k.params = p;
        k.params.alpha1 = 0.5 * qh;
        k.params.alpha2 = 0.5 * qh + 0.5;
        k.params.gamma_bar = p.gamma_bar * (t.i2 + 1.0) * (t.i2 + 1.0);
        kernels.push_back(std::move(k));
    }
    return kernels;
}

struct SsKernel {
    double weight;
    SingleShadowParams params;
};

std::vector<SsKernel> ss_output_kernels(const SingleShadowParams& p, int L) {
    const auto terms = expansion_terms_ss(p, L);
    std::vector<SsKernel> kernels;
    kernels.reserve(terms.size());
    const double lga = std::lgamma(p.alpha);
    for (const auto& t : terms) {
        const double pe = p.alpha + t.power;
        SsKernel k;
        k.weight = L * t.coef * std::exp(std::lgamma(pe) - lga - pe * std::log(L));
        k.params = p;
        k.params.alpha = pe;
        k.params.gamma_bar = p.gamma_bar * L;
        kernels.push_back(std::move(k));
    }
    return kernels;
}

// Quadrature composition F_out(g) = int F_N(g/y) f_Imax(y) dy and the
// corresponding density mixing, driven by the I_max quadrature route.
template <class FImax>
double compose_cdf(const FImax& f_imax, double m1, double m2, double omega, double g,
                   const EvalOptions& opts) {
    const auto f = [&](double y) {
        const double fi = f_imax(y);
        return fi > 0.0 ? fi * nakagami_product_cdf(m1, m2, omega, g / y, opts) : 0.0;
    };
    return std::clamp(integrate_log_axis(f, opts), 0.0, 1.0);
}

template <class FImax>
double compose_pdf(const FImax& f_imax, double m1, double m2, double omega, double g,
                   const EvalOptions& opts) {
    const double o2 = omega * omega;
    const double gtn = m1 * m2 / o2;
    const auto f = [&](double y) {
        const double fi = f_imax(y);
        if (fi <= 0.0) return 0.0;
        return fi / y * gtn * product_gamma_pdf(m1, m2, gtn * g / y);
    };
    return integrate_log_axis(f, opts);
}

} // namespace

double pdf_out_ds(const SelectionParams& sel_in, double gamma, const EvalOptions& opts) {
    const auto sel = validate(sel_in);
    const auto& p = ds_base(sel);
    if (!(gamma > 0.0)) throw DomainError("pdf_out_ds: gamma must be positive");
    const bool series_ok = ds_series_applicable(p, sel.L);
    if (opts.method == Method::series && !series_ok)
        throw SeriesInapplicable("pdf_out_ds series route not applicable at these parameters");
    if (opts.method == Method::quadrature || !series_ok) {
        EvalOptions inner = opts;
        inner.method = Method::quadrature;
        const auto fi = [&](double y) { return pdf_imax_ds(sel, y, inner); };
        return compose_pdf(fi, p.m1, p.m2, p.omega, gamma, opts);
    }
    EvalOptions inner = opts;
    inner.method = Method::auto_eval;
    double s = 0.0;
    for (const auto& k : ds_output_kernels(p, sel.L))
        s += k.weight * pdf_ds(k.params, gamma, inner);
    return std::max(s, 0.0);
}

double cdf_out_ds(const SelectionParams& sel_in, double gamma, const EvalOptions& opts) {
    const auto sel = validate(sel_in);
    const auto& p = ds_base(sel);
    if (gamma < 0.0) throw DomainError("cdf_out_ds: gamma must be nonnegative");
    if (gamma == 0.0) return 0.0;
    const bool series_ok = ds_series_applicable(p, sel.L);
    if (opts.method == Method::series && !series_ok)
        throw SeriesInapplicable("cdf_out_ds series route not applicable at these parameters");
    if (opts.method == Method::quadrature || !series_ok) {
        EvalOptions inner = opts;
        inner.method = Method::quadrature;
        const auto fi = [&](double y) { return pdf_imax_ds(sel, y, inner); };
        return compose_cdf(fi, p.m1, p.m2, p.omega, gamma, opts);
    }
    EvalOptions inner = opts;
    inner.method = Method::auto_eval;
    double s = 0.0;
    for (const auto& k : ds_output_kernels(p, sel.L))
        s += k.weight * cdf_ds(k.params, gamma, inner);
    return std::clamp(s, 0.0, 1.0);
}

double pdf_out_ss(const SelectionParams& sel_in, double gamma, const EvalOptions& opts) {
    const auto sel = validate(sel_in);
    const auto& p = ss_base(sel);
    if (!(gamma > 0.0)) throw DomainError("pdf_out_ss: gamma must be positive");
    const bool series_ok = ss_series_applicable(p, sel.L);
    if (opts.method == Method::series && !series_ok)
        throw SeriesInapplicable("pdf_out_ss series route not applicable at these parameters");
    if (opts.method == Method::quadrature || !series_ok) {
        EvalOptions inner = opts;
        inner.method = Method::quadrature;
        const auto fi = [&](double y) { return pdf_imax_ss(sel, y, inner); };
        return compose_pdf(fi, p.m1, p.m2, p.omega, gamma, opts);
    }
    EvalOptions inner = opts;
    inner.method = Method::auto_eval;
    double s = 0.0;
    for (const auto& k : ss_output_kernels(p, sel.L))
        s += k.weight * pdf_ss(k.params, gamma, inner);
    return std::max(s, 0.0);
}

double cdf_out_ss(const SelectionParams& sel_in, double gamma, const EvalOptions& opts) {
    const auto sel = validate(sel_in);
    const auto& p = ss_base(sel);
    if (gamma < 0.0) throw DomainError("cdf_out_ss: gamma must be nonnegative");
    if (gamma == 0.0) return 0.0;
    const bool series_ok = ss_series_applicable(p, sel.L);
    if (opts.method == Method::series && !series_ok)
        throw SeriesInapplicable("cdf_out_ss series route not applicable at these parameters");
    if (opts.method == Method::quadrature || !series_ok) {
        EvalOptions inner = opts;
        inner.method = Method::quadrature;
        const auto fi = [&](double y) { return pdf_imax_ss(sel, y, inner); };
        return compose_cdf(fi, p.m1, p.m2, p.omega, gamma, opts);
    }
    EvalOptions inner = opts;
    inner.method = Method::auto_eval;
    double s = 0.0;
    for (const auto& k : ss_output_kernels(p, sel.L))
        s += k.weight * cdf_ss(k.params, gamma, inner);
    return std::clamp(s, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Average output SNR

double asnr_ds(const SelectionParams& sel_in) {
    const auto sel = validate(sel_in);
    const auto& p = ds_base(sel);
    const auto terms = expansion_terms_ds(p, sel.L);
    const int K = static_cast<int>(std::round(2.0 * p.alpha1));
    const double lgK = std::lgamma(static_cast<double>(K));
    double s = 0.0;
    for (const auto& t : terms) {
        const double arg = K + t.power - 2.0; // the paper's q - 5/2 per term
        if (arg <= 0.0)
            throw ClosedFormPole("asnr_ds: gamma argument q-5/2 <= 0; use the quadrature route");
        s += t.coef * std::exp(std::lgamma(arg) - arg * std::log1p(static_cast<double>(t.i2)));
    }
    return p.omega * p.omega * 4.0 * p.gamma_bar * sel.L * std::exp(-lgK) * s;
}

double asnr_ss(const SelectionParams& sel_in) {
    const auto sel = validate(sel_in);
    const auto& p = ss_base(sel);
    const auto terms = expansion_terms_ss(p, sel.L);
    double s = 0.0;
    for (const auto& t : terms) {
        const double arg = t.q - 1.0;
        if (arg <= 0.0)
            throw ClosedFormPole("asnr_ss: gamma argument p-1 <= 0; use the quadrature route");
        s += t.coef * std::exp(std::lgamma(arg) - arg * std::log(static_cast<double>(sel.L)));
    }
    return p.omega * p.omega * p.gamma_bar * sel.L * std::exp(-std::lgamma(p.alpha)) * s;
}

double asnr_ds_quadrature(const SelectionParams& sel_in, const EvalOptions& opts) {
    const auto sel = validate(sel_in);
    const auto& p = ds_base(sel);
    EvalOptions inner = opts;
    inner.method = Method::quadrature;
    const auto f = [&](double y) { return y * pdf_imax_ds(sel, y, inner); };
    return p.omega * p.omega * integrate_log_axis(f, opts);
}

double asnr_ss_quadrature(const SelectionParams& sel_in, const EvalOptions& opts) {
    const auto sel = validate(sel_in);
    const auto& p = ss_base(sel);
    EvalOptions inner = opts;
    inner.method = Method::quadrature;
    const auto f = [&](double y) { return y * pdf_imax_ss(sel, y, inner); };
    return p.omega * p.omega * integrate_log_axis(f, opts);
}

// ---------------------------------------------------------------------------
// Monte Carlo simulator

SampleBatch simulate_selection(const SelectionParams& sel_in, std::size_t n_trials,
                               std::uint64_t seed, SelectionPolicy policy, std::uint32_t stream,
                               int threads) {
    const auto sel = validate(sel_in);
    if (n_trials < 1) throw DomainError("simulate_selection: n_trials must be >= 1");
    const int L = sel.L;
    const bool is_ds = std::holds_alternative<DoubleShadowParams>(sel.base);

    double m1, m2, omega, gbar, a1 = 0, a2 = 0, a = 0;
    if (is_ds) {
        const auto& p = std::get<DoubleShadowParams>(sel.base);
        m1 = p.m1; m2 = p.m2; omega = p.omega; gbar = p.gamma_bar;
        a1 = p.alpha1; a2 = p.alpha2;
    } else {
        const auto& p = std::get<SingleShadowParams>(sel.base);
        m1 = p.m1; m2 = p.m2; omega = p.omega; gbar = p.gamma_bar;
        a = p.alpha;
    }
    const double nak_scale = omega * omega / (m1 * m2);

    SampleBatch b;
    b.values.resize(n_trials);
    b.seed = seed;
    b.stream_id = stream;
    b.count = n_trials;
    for_each_sample_block(n_trials, threads, [&](std::size_t blk, std::size_t off,
                                                 std::size_t cnt) {
        Philox rng(seed, batch_stream(stream, blk));
        std::vector<double> N(L), I(L);
        for (std::size_t i = 0; i < cnt; ++i) {
            for (int l = 0; l < L; ++l) {
                N[l] = rng.gamma(m1) * rng.gamma(m2) * nak_scale;
                I[l] = is_ds ? gbar / (rng.gamma(a1) * rng.gamma(a2)) : gbar / rng.gamma(a);
            }
            int k = 0;
            if (L > 1) {
                switch (policy) {
                    case SelectionPolicy::shadow_max:
                        k = static_cast<int>(std::max_element(I.begin(), I.end()) - I.begin());
                        break;
                    case SelectionPolicy::snr_max: {
                        double best = -1.0;
                        for (int l = 0; l < L; ++l)
                            if (N[l] * I[l] > best) { best = N[l] * I[l]; k = l; }
                        break;
                    }
                    case SelectionPolicy::random_pick:
                        k = std::min(static_cast<int>(rng.uniform01() * L), L - 1);
                        break;
                }
            }
            b.values[off + i] = N[k] * I[k];
        }
    });
    return b;
}

} // namespace shadowscatter
