#include "shadowscatter/fitgof.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "shadowscatter/analytics.hpp"
#include "shadowscatter/errors.hpp"

namespace shadowscatter {

EmpiricalSample EmpiricalSample::from(std::vector<double> values, std::vector<double> weights) {
    if (values.empty()) throw DomainError("empirical sample must be nonempty");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("empirical sample values must be positive and finite");
    if (!weights.empty()) {
        if (weights.size() != values.size())
            throw DomainError("weights must match values in length");
        for (double w : weights)
            if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("weights must be nonnegative");
    }
    return EmpiricalSample{std::move(values), std::move(weights)};
}

namespace {

// ------------------------- Nelder-Mead ------------------------------------

struct NmResult {
    std::vector<double> x;
    double f = 0;
    int iterations = 0;
    bool converged = false;
};

template <class F>
NmResult nelder_mead(const F& fn, std::vector<double> x0, double step, int max_iter) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> xs(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) xs[i + 1][i] += step;
    std::vector<double> fs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fs[i] = fn(xs[i]);

    NmResult res;
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    int it = 0;
    for (; it < max_iter; ++it) {
        std::vector<std::size_t> order(n + 1);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return fs[a] < fs[b]; });
        const std::size_t best = order[0], worst = order[n], second = order[n - 1];
        if (std::abs(fs[worst] - fs[best]) < 1e-14 * (1.0 + std::abs(fs[best]))) {
            res.converged = true;
            break;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0;
            for (std::size_t i = 0; i <= n; ++i)
                if (i != worst) s += xs[i][j];
            centroid[j] = s / n;
        }
        for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + (centroid[j] - xs[worst][j]);
        const double fr = fn(xr);
        if (fr < fs[order[0]]) {
            for (std::size_t j = 0; j < n; ++j)
                xe[j] = centroid[j] + 2.0 * (centroid[j] - xs[worst][j]);
            const double fe = fn(xe);
            xs[worst] = fe < fr ? xe : xr;
            fs[worst] = std::min(fe, fr);
        } else if (fr < fs[second]) {
            xs[worst] = xr;
            fs[worst] = fr;
        } else {
            for (std::size_t j = 0; j < n; ++j)
                xc[j] = centroid[j] + 0.5 * (xs[worst][j] - centroid[j]);
            const double fc = fn(xc);
            if (fc < fs[worst]) {
                xs[worst] = xc;
                fs[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        xs[i][j] = xs[best][j] + 0.5 * (xs[i][j] - xs[best][j]);
                    fs[i] = fn(xs[i]);
                }
            }
        }
    }
    const auto ib = std::min_element(fs.begin(), fs.end()) - fs.begin();
    res.x = xs[static_cast<std::size_t>(ib)];
    res.f = fs[static_cast<std::size_t>(ib)];
    res.iterations = it;
    return res;
}

// ------------------------- moment machinery --------------------------------

// Matched orders bracket zero: positive orders carry the shadowing-shape
// signal (the model moment has a pole at k = alpha), negative orders carry
// the multipath signal (pole at k = -m). The base set stays low so the
// empirical moments keep finite variance under the heavy inverse-gamma
// tails; that is what keeps the fit usable at alpha as small as 2. When a
// first pass shows room, pole-adjacent orders are added - they are what
// separates the two shadow shapes from the scale.
std::vector<double> base_fit_orders() { return {-0.4, -0.2, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2}; }

// Orders are admitted while the corresponding moment estimator keeps finite
// variance (|2k| below the relevant tail/pole index of the first-pass fit).
std::vector<double> extended_fit_orders(double m_min, double alpha_min) {
    std::vector<double> k;
    for (const double neg : {-1.0, -0.7, -0.4, -0.2})
        if (2.0 * -neg < 0.95 * m_min || neg >= -0.41) k.push_back(neg);
    for (const double pos : {0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.1})
        if (2.0 * pos < 0.95 * alpha_min || pos <= 1.21) k.push_back(pos);
    return k;
}

// Empirical log-moments plus least-squares weights 1/se^2, the standard
// error taken from the sample itself so that heavy-tailed (noisy) orders
// contribute only as much as they are worth.
void empirical_log_moments(const EmpiricalSample& s, const std::vector<double>& orders,
                           std::vector<double>& log_mu, std::vector<double>& weight) {
    std::vector<double> logs(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i) logs[i] = std::log(s.values[i]);
    const bool weighted = !s.weights.empty();
    const double wsum = weighted ? std::accumulate(s.weights.begin(), s.weights.end(), 0.0)
                                 : static_cast<double>(s.values.size());
    log_mu.clear();
    weight.clear();
    for (double k : orders) {
        double acc = 0, acc2 = 0;
        for (std::size_t i = 0; i < logs.size(); ++i) {
            const double v = std::exp(k * logs[i]);
            const double w = weighted ? s.weights[i] : 1.0;
            acc += w * v;
            acc2 += w * v * v;
        }
        const double mu = acc / wsum;
        if (!std::isfinite(mu) || !(mu > 0.0))
            throw MomentOutOfRange("empirical moment of order " + std::to_string(k) +
                                   " is not finite");
        log_mu.push_back(std::log(mu));
        const double var = std::max(acc2 / wsum - mu * mu, 0.0);
        const double se_rel2 = var / (mu * mu * wsum); // relative se^2 of mu
        weight.push_back(1.0 / (se_rel2 + 1e-7));      // floor ~ systematic error
    }
}

// log E[g^k] with omega = 1; +inf-like penalty outside the existence region
// (alpha_j > k on the shadow side, m_j > -k on the multipath side).
double model_log_moment(double m1, double m2, double gbar, const std::vector<double>& alphas,
                        double k) {
    if (m1 + k <= 0.01 || m2 + k <= 0.01) return 1e6 * (1.0 - k - std::min(m1, m2));
    double lg = std::lgamma(m1 + k) - std::lgamma(m1) + std::lgamma(m2 + k) - std::lgamma(m2) -
                k * std::log(m1 * m2) + k * std::log(gbar);
    for (double a : alphas) {
        if (a <= k + 0.01) return 1e6 * (1.0 + k - a);
        lg += std::lgamma(a - k) - std::lgamma(a);
    }
    return lg;
}

struct ThetaMap {
    // x = (ln m1, ln m2, ln(a1-1)[, ln(a2-1)], ln gbar)
    bool dig;
    double m1(const std::vector<double>& x) const { return std::exp(x[0]); }
    double m2(const std::vector<double>& x) const { return std::exp(x[1]); }
    double a1(const std::vector<double>& x) const { return 1.0 + std::exp(x[2]); }
    double a2(const std::vector<double>& x) const {
        return dig ? 1.0 + std::exp(x[3]) : 0.0;
    }
    double gbar(const std::vector<double>& x) const { return std::exp(x[dig ? 4 : 3]); }
};

} // namespace

namespace {

NmResult solve_moment_ls(const EmpiricalSample& sample, bool dig,
                         const std::vector<double>& orders,
                         const std::vector<std::vector<double>>& extra_starts) {
    std::vector<double> target, wts;
    empirical_log_moments(sample, orders, target, wts);
    const double wmax = *std::max_element(wts.begin(), wts.end());
    for (double& w : wts) w /= wmax;
    const ThetaMap map{dig};

    const auto objective = [&](const std::vector<double>& x) {
        const double m1 = map.m1(x), m2 = map.m2(x), gb = map.gbar(x);
        if (!(m1 > 1e-3) || !(m2 > 1e-3) || m1 > 1e3 || m2 > 1e3 || !(gb > 0) || gb > 1e12)
            return 1e9;
        std::vector<double> alphas;
        if (dig)
            alphas = {map.a1(x), map.a2(x)};
        else
            alphas = {map.a1(x)};
        double s = 0;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            const double r = model_log_moment(m1, m2, gb, alphas, orders[i]) - target[i];
            s += wts[i] * r * r;
        }
        return std::isfinite(s) ? s : 1e9;
    };

    double mean = 1.0; // the order-1.0 empirical moment seeds the scale
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (std::abs(orders[i] - 1.0) < 1e-12) mean = std::exp(target[i]);

    std::vector<std::vector<double>> starts = extra_starts;
    for (const double m0 : {1.2, 2.4}) {
        for (const double a0 : {2.2, 3.2, 4.4}) {
            const double gb0 = dig ? mean * (a0 - 1) * (a0 - 1) : mean * (a0 - 1);
            if (dig)
                starts.push_back({std::log(m0), std::log(m0), std::log(a0 - 1),
                                  std::log(a0 - 1), std::log(gb0)});
            else
                starts.push_back({std::log(m0), std::log(m0), std::log(a0 - 1), std::log(gb0)});
        }
    }

    NmResult best;
    best.f = std::numeric_limits<double>::infinity();
    for (const auto& x0 : starts) {
        auto r = nelder_mead(objective, x0, 0.4, 4000);
        auto r2 = nelder_mead(objective, r.x, 0.05, 2000); // polish
        r2.iterations += r.iterations;
        r2.converged = r2.converged || r.converged;
        if (r2.f < best.f) best = r2;
    }
    return best;
}

} // namespace

FitResult fit_moments(const EmpiricalSample& sample, ModelTag tag) {
    const bool dig = tag == ModelTag::dig;
    const ThetaMap map{dig};

    auto orders = base_fit_orders();
    auto best = solve_moment_ls(sample, dig, orders, {});
    if (std::isfinite(best.f) && best.f < 1e9) {
        // second pass with pole-adjacent orders where the first fit shows
        // the tails support them
        const double m_min = std::min(map.m1(best.x), map.m2(best.x));
        const double a_min = dig ? std::min(map.a1(best.x), map.a2(best.x)) : map.a1(best.x);
        const auto ext = extended_fit_orders(m_min, a_min);
        if (ext.size() != orders.size()) {
            orders = ext;
            auto refined = solve_moment_ls(sample, dig, orders, {best.x});
            refined.iterations += best.iterations;
            best = refined;
        }
    }
    if (!std::isfinite(best.f) || best.f >= 1e9) throw FitDiverged("moment fit diverged");

    // recompute the matched targets for the residual report
    std::vector<double> target, wts_unused;
    empirical_log_moments(sample, orders, target, wts_unused);

    FitResult out;
    out.tag = tag;
    out.iterations = best.iterations;
    out.orders = orders;
    std::vector<double> alphas;
    if (dig) {
        DoubleShadowParams p;
        p.m1 = map.m1(best.x);
        p.m2 = map.m2(best.x);
        p.alpha1 = map.a1(best.x);
        p.alpha2 = map.a2(best.x);
        p.gamma_bar = map.gbar(best.x);
        p.omega = 1.0;
        out.params = validate(p);
        alphas = {p.alpha1, p.alpha2};
    } else {
        SingleShadowParams p;
        p.m1 = map.m1(best.x);
        p.m2 = map.m2(best.x);
        p.alpha = map.a1(best.x);
        p.gamma_bar = map.gbar(best.x);
        p.omega = 1.0;
        out.params = validate(p);
        alphas = {p.alpha};
    }
    out.residuals.resize(orders.size());
    double rms = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        out.residuals[i] = model_log_moment(map.m1(best.x), map.m2(best.x), map.gbar(best.x),
                                            alphas, orders[i]) -
                           target[i];
        rms += out.residuals[i] * out.residuals[i];
    }
    rms = std::sqrt(rms / static_cast<double>(orders.size()));
    out.converged = best.converged && rms < 0.05;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> sorted_values(const EmpiricalSample& s) {
    std::vector<double> v = s.values;
    std::sort(v.begin(), v.end());
    return v;
}

Fn cdf_of(const AnyParams& params, const EvalOptions& opts) {
    return [params, opts](double g) {
        if (!(g > 0.0)) return 0.0;
        return std::holds_alternative<DoubleShadowParams>(params)
                   ? cdf_ds(std::get<DoubleShadowParams>(params), g, opts)
                   : cdf_ss(std::get<SingleShadowParams>(params), g, opts);
    };
}

} // namespace

double kl_divergence(const EmpiricalSample& sample, const Fn& model_cdf, int bins) {
    if (bins < 2) throw BinningError("need at least 2 bins");
    const auto v = sorted_values(sample);
    const std::size_t n = v.size();
    if (n < static_cast<std::size_t>(bins)) throw BinningError("sample smaller than bin count");

    // quantile edges; duplicates (ties) collapse
    std::vector<double> edges;
    edges.push_back(0.0);
    for (int i = 1; i < bins; ++i) {
        const double e = v[static_cast<std::size_t>(static_cast<double>(i) * n / bins)];
        if (e > edges.back()) edges.push_back(e);
    }
    if (edges.size() < 2) throw BinningError("degenerate sample: all bins collapsed");

    // both vectors accumulate as successive CDF differences so that a model
    // CDF agreeing with the ECDF at every edge gives exactly zero divergence
    const std::size_t nb = edges.size(); // last bin is (edges.back(), inf)
    std::vector<double> p(nb, 0.0), q(nb, 0.0);
    double prev_p = 0.0;
    for (std::size_t b = 1; b < nb; ++b) {
        const auto hi = std::upper_bound(v.begin(), v.end(), edges[b]) - v.begin();
        const double Fp = static_cast<double>(hi) / static_cast<double>(n);
        p[b - 1] = Fp - prev_p;
        prev_p = Fp;
    }
    p[nb - 1] = 1.0 - prev_p;

    double prev = 0.0;
    for (std::size_t b = 1; b < nb; ++b) {
        const double F = std::clamp(model_cdf(edges[b]), prev, 1.0);
        q[b - 1] = F - prev;
        prev = F;
    }
    q[nb - 1] = 1.0 - prev;

    constexpr double eps = 1e-12;
    double d = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
        const double pb = std::max(p[b], eps), qb = std::max(q[b], eps);
        d += 0.5 * (p[b] * std::log(pb / qb) + q[b] * std::log(qb / pb));
    }
    return std::max(d, 0.0);
}

double kl_divergence(const EmpiricalSample& sample, const AnyParams& params, int bins) {
    return kl_divergence(sample, cdf_of(params, EvalOptions{}), bins);
}

namespace {

double ks_critical(double confidence) {
    if (!(confidence > 0.0) || !(confidence < 1.0))
        throw DomainError("confidence must lie in (0,1)");
    return std::sqrt(-0.5 * std::log((1.0 - confidence) / 2.0));
}

double ks_statistic(const std::vector<double>& sorted, const std::vector<double>& w,
                    const Fn& cdf) {
    const std::size_t n = sorted.size();
    double d = 0.0;
    if (w.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            const double F = cdf(sorted[i]);
            d = std::max(d, std::max(F - static_cast<double>(i) / n,
                                     static_cast<double>(i + 1) / n - F));
        }
    } else {
        double acc = 0.0;
        const double tot = std::accumulate(w.begin(), w.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double F = cdf(sorted[i]);
            d = std::max(d, std::max(F - acc / tot, (acc + w[i]) / tot - F));
            acc += w[i];
        }
    }
    return d;
}

} // namespace

GofReport ks_test(const EmpiricalSample& sample, const Fn& model_cdf, double confidence) {
    if (sample.values.size() < 30)
        throw DomainError("ks_test requires at least 30 observations");
    std::vector<std::size_t> order(sample.values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return sample.values[a] < sample.values[b]; });
    std::vector<double> sv(order.size()), sw;
    for (std::size_t i = 0; i < order.size(); ++i) sv[i] = sample.values[order[i]];
    if (!sample.weights.empty()) {
        sw.resize(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) sw[i] = sample.weights[order[i]];
    }
    GofReport r;
    r.n = sv.size();
    r.ks = ks_statistic(sv, sw, model_cdf);
    r.ks_critical = ks_critical(confidence) / std::sqrt(static_cast<double>(r.n));
    r.ks_pass = r.ks < r.ks_critical;
    r.ks_rate = r.ks_pass ? 1.0 : 0.0;
    return r;
}

GofReport ks_test(const EmpiricalSample& sample, const AnyParams& params, double confidence) {
    // tabulated CDF: the exact one would be re-evaluated n times
    const CdfCurve curve = cdf_curve(params);
    return ks_test(
        sample, [&curve](double g) { return curve(g); }, confidence);
}

GofCandidate make_candidate(const std::string& name, const AnyParams& params,
                            const EvalOptions& opts) {
    auto curve = std::make_shared<CdfCurve>(cdf_curve(params, opts));
    return GofCandidate{name, [curve](double g) { return (*curve)(g); }};
}

std::vector<std::pair<std::string, GofReport>> gof_table(const EmpiricalSample& sample,
                                                         const std::vector<GofCandidate>& cands,
                                                         int bins, int segments,
                                                         double confidence) {
    if (cands.empty()) throw DomainError("gof_table needs at least one candidate");
    if (segments < 1) throw DomainError("segments must be >= 1");
    std::vector<std::pair<std::string, GofReport>> rows;
    for (const auto& c : cands) {
        GofReport r = ks_test(sample, c.cdf, confidence);
        if (segments > 1) {
            const std::size_t seg = sample.values.size() / segments;
            if (seg < 30) throw DomainError("segments too fine for K-S (need >= 30 points each)");
            int pass = 0;
            for (int s = 0; s < segments; ++s) {
                EmpiricalSample chunk;
                chunk.values.assign(sample.values.begin() + s * seg,
                                    sample.values.begin() + (s + 1) * seg);
                pass += ks_test(chunk, c.cdf, confidence).ks_pass ? 1 : 0;
            }
            r.ks_rate = static_cast<double>(pass) / segments;
        }
        r.kl = kl_divergence(sample, c.cdf, bins);
        r.bins = bins;
        rows.emplace_back(c.name, r);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.second.kl < b.second.kl; });
    return rows;
}

} // namespace shadowscatter
