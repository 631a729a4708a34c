#include "shadowscatter/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "shadowscatter/errors.hpp"

namespace shadowscatter {

namespace {

int levels_for(int max_nodes) {
    // tanh-sinh roughly doubles the node count per refinement level.
    int lv = 6;
    while ((1 << lv) < max_nodes && lv < 15) ++lv;
    return lv;
}

void check_quad(double value, double err, double l1, const EvalOptions& opts, const char* what) {
    const double tol = std::max(opts.abs_tol, opts.rel_tol * std::max(std::abs(value), 1e-3 * l1));
    if (!std::isfinite(value) || err > 1e3 * tol)
        throw EvalError(std::string(what) + ": quadrature error estimate " + std::to_string(err) +
                        " exceeds budgeted tolerance");
}

} // namespace

double integrate_finite(const Fn& f, double a, double b, const EvalOptions& opts) {
    if (!(b > a)) return 0.0;
    boost::math::quadrature::tanh_sinh<double> quad(levels_for(opts.max_quad_nodes));
    double err = 0, l1 = 0;
    const double v = quad.integrate(f, a, b, opts.rel_tol, &err, &l1);
    check_quad(v, err, l1, opts, "integrate_finite");
    return v;
}

double integrate_right_tail(const Fn& f, double a, const EvalOptions& opts) {
    boost::math::quadrature::exp_sinh<double> quad(levels_for(opts.max_quad_nodes));
    double err = 0, l1 = 0;
    const double v = quad.integrate(f, a, std::numeric_limits<double>::infinity(), opts.rel_tol,
                                    &err, &l1);
    check_quad(v, err, l1, opts, "integrate_right_tail");
    return v;
}

double integrate_log_axis(const Fn& f, const EvalOptions& opts) {
    boost::math::quadrature::sinh_sinh<double> quad(levels_for(opts.max_quad_nodes));
    const auto g = [&f](double y) {
        const double u = std::exp(y);
        if (!(u > 0.0) || !std::isfinite(u)) return 0.0; // exp under/overflow
        const double v = f(u) * u;
        return std::isfinite(v) ? v : 0.0;
    };
    double err = 0, l1 = 0;
    const double v = quad.integrate(g, opts.rel_tol, &err, &l1);
    check_quad(v, err, l1, opts, "integrate_log_axis");
    return v;
}

double gauss_2f1(double a, double b, double c, double x, const EvalOptions& opts) {
    if (!(c > 0.0)) throw EvalError("2F1: c must be positive");
    const double ax = std::abs(x);
    if (ax > kSeriesArgMax + 1e-12)
        throw SeriesInapplicable("2F1 series argument |x|=" + std::to_string(ax) +
                                 " outside series radius " + std::to_string(kSeriesArgMax));
    if (x < 0.0) {
        // Pfaff transformation: with c > b the transformed series has only
        // positive terms, which sidesteps the catastrophic cancellation the
        // alternating series suffers at large (a, b).
        if (c - b > 0.0)
            return std::pow(1.0 - x, -a) * gauss_2f1(a, c - b, c, x / (x - 1.0), opts);
    }
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 20000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
        // once the term ratio drops below 1 the tail is geometrically bounded
        const double r = std::abs((a + n + 1) * (b + n + 1) / ((c + n + 1) * (n + 2.0)) * x);
        if (n > 2 && r < 1.0 &&
            std::abs(term) * r / (1.0 - r) <= opts.rel_tol * std::abs(sum) + opts.abs_tol)
            return sum;
    }
    throw EvalError("2F1 series did not converge");
}

double log_bessel_k(double nu, double x) {
    nu = std::abs(nu);
    if (!(x > 0.0)) throw EvalError("log_bessel_k: x must be positive");
    if (x < 680.0) {
        const double k = boost::math::cyl_bessel_k(nu, x);
        if (k > 0.0 && std::isfinite(k)) return std::log(k);
    }
    // K_nu(x) ~ sqrt(pi/(2x)) e^-x [1 + a1/x + a2/x^2 + ...], a_k from 4nu^2
    const double mu = 4.0 * nu * nu;
    const double a1 = (mu - 1.0) / 8.0;
    const double a2 = (mu - 1.0) * (mu - 9.0) / 128.0;
    const double a3 = (mu - 1.0) * (mu - 9.0) * (mu - 25.0) / 3072.0;
    const double corr = 1.0 + a1 / x + a2 / (x * x) + a3 / (x * x * x);
    return 0.5 * std::log(M_PI / (2.0 * x)) - x + std::log(std::max(corr, 1e-300));
}

double product_gamma_pdf(double a, double b, double u) {
    if (!(u > 0.0)) return 0.0;
    const double lf = M_LN2 + (0.5 * (a + b) - 1.0) * std::log(u) +
                      log_bessel_k(a - b, 2.0 * std::sqrt(u)) - std::lgamma(a) - std::lgamma(b);
    return std::exp(lf);
}

double product_gamma_cdf(double a, double b, double x, const EvalOptions& opts) {
    if (!(x > 0.0)) return 0.0;
    // P(G_a G_b <= x) = E_t[ P(a, x/t) ], t ~ Gamma(b); evaluated in log space.
    const double lgb = std::lgamma(b);
    const auto f = [&](double t) {
        const double w = boost::math::gamma_p(a, x / t);
        return w <= 0.0 ? 0.0 : w * std::exp((b - 1.0) * std::log(t) - t - lgb);
    };
    const double v = integrate_log_axis(f, opts);
    return std::clamp(v, 0.0, 1.0);
}

double log_tricomi_u(double a, double b, double z, const EvalOptions& opts) {
    if (!(a > 0.0) || !(z > 0.0)) throw EvalError("tricomi_u requires a>0, z>0");
    // U(a;b;z) = 1/G(a) * int_0^inf e^(-z t) t^(a-1) (1+t)^(b-a-1) dt.
    // The integrand is normalized by its peak so that extreme parameters
    // (tiny z, large a) cannot underflow the whole integral.
    const double lga = std::lgamma(a);
    const auto lh = [&](double t) {
        return -z * t + (a - 1.0) * std::log(t) + (b - a - 1.0) * std::log1p(t) - lga;
    };
    // stationary point of lh solves z t^2 + (z - (b-2)) t - (a-1) = 0;
    // the integration axis is rescaled so the peak sits at order one, which
    // keeps the double-exponential nodes on the mass even for extreme z
    const double q = (b - 2.0) - z;
    const double disc = std::sqrt(q * q + 4.0 * z * std::max(a - 1.0, 0.25));
    double tstar = 2.0 * std::max(a - 1.0, 0.25) / (disc - q);
    if (!(tstar > 0.0) || !std::isfinite(tstar)) tstar = 1.0;
    const double lmax = lh(tstar);
    const auto f = [&](double s) { return std::exp(lh(tstar * s) - lmax); };
    const double integral = integrate_log_axis(f, opts);
    if (!(integral > 0.0)) throw EvalError("tricomi_u integral underflowed");
    return lmax + std::log(tstar) + std::log(integral);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double x) { return 10.0 * std::log10(x); }

CdfCurve CdfCurve::build(const Fn& cdf, double x_lo, double x_hi, int n) {
    if (!(x_lo > 0.0) || !(x_hi > x_lo) || n < 8) throw EvalError("CdfCurve: bad range");
    CdfCurve c;
    c.lx_.resize(n);
    c.y_.resize(n);
    const double l0 = std::log(x_lo), l1 = std::log(x_hi);
    for (int i = 0; i < n; ++i) {
        c.lx_[i] = l0 + (l1 - l0) * i / (n - 1);
        c.y_[i] = std::clamp(cdf(std::exp(c.lx_[i])), 0.0, 1.0);
    }
    // enforce monotonicity against quadrature jitter
    for (int i = 1; i < n; ++i) c.y_[i] = std::max(c.y_[i], c.y_[i - 1]);

    // Fritsch-Carlson slopes
    c.d_.assign(n, 0.0);
    std::vector<double> h(n - 1), s(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        h[i] = c.lx_[i + 1] - c.lx_[i];
        s[i] = (c.y_[i + 1] - c.y_[i]) / h[i];
    }
    c.d_[0] = s[0];
    c.d_[n - 1] = s[n - 2];
    for (int i = 1; i < n - 1; ++i) {
        if (s[i - 1] * s[i] <= 0.0)
            c.d_[i] = 0.0;
        else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            c.d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
        }
    }
    return c;
}

CdfCurve CdfCurve::build_auto(const Fn& cdf, double x_guess, double tail_eps, int n) {
    double lo = x_guess, hi = x_guess;
    for (int i = 0; i < 2400 && cdf(lo) > tail_eps; ++i) lo *= 0.5;
    for (int i = 0; i < 2400 && cdf(hi) < 1.0 - tail_eps; ++i) hi *= 2.0;
    return build(cdf, lo, hi, n);
}

double CdfCurve::operator()(double x) const {
    if (!(x > 0.0)) return 0.0;
    const double lx = std::log(x);
    if (lx <= lx_.front()) return y_.front() * 1.0; // below table: clamp to first value
    if (lx >= lx_.back()) return y_.back();
    const auto it = std::upper_bound(lx_.begin(), lx_.end(), lx);
    const std::size_t i = static_cast<std::size_t>(it - lx_.begin()) - 1;
    const double h = lx_[i + 1] - lx_[i];
    const double t = (lx - lx_[i]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    const double v = h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
    return std::clamp(v, 0.0, 1.0);
}

} // namespace shadowscatter
