#pragma once

#include <functional>
#include <vector>

namespace shadowscatter {

enum class Method { auto_eval, series, quadrature };

struct EvalOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_quad_nodes = 1 << 15; // quadrature budget (node cap per integral)
    Method method = Method::auto_eval;
};

/// Argument threshold for the hypergeometric series route. The 2F1 argument
/// 1 - 1/(gamma_tilde*gamma) approaches 1 for large gamma and -inf for small
/// gamma; beyond this radius the direct series is abandoned in favor of the
/// mixing-quadrature route.
inline constexpr double kSeriesArgMax = 0.8;

using Fn = std::function<double(double)>;

/// tanh-sinh on [a,b]; tolerates integrable endpoint singularities.
double integrate_finite(const Fn& f, double a, double b, const EvalOptions& opts = {});

/// exp-sinh on [a,inf); integrand should decay exponentially.
double integrate_right_tail(const Fn& f, double a, const EvalOptions& opts = {});

/// Integral over (0,inf) evaluated in log space (u = e^y, sinh-sinh in y).
/// Suited to integrands with algebraic behavior at 0 and algebraic or
/// exponential tails; endpoint log singularities disappear under the map.
double integrate_log_axis(const Fn& f, const EvalOptions& opts = {});

/// Gauss hypergeometric 2F1(a,b;c;x) by direct series; requires c > 0 and
/// |x| <= kSeriesArgMax. Throws SeriesInapplicable outside that disc and
/// EvalError if the series fails to meet tolerance.
double gauss_2f1(double a, double b, double c, double x, const EvalOptions& opts = {});

/// log of the Tricomi confluent function U(a;b;z) for a > 0, z > 0, computed
/// from the Laplace integral representation (peak-normalized, so large
/// parameters stay in range).
double log_tricomi_u(double a, double b, double z, const EvalOptions& opts = {});

/// ln K_nu(x): boost for moderate x, large-argument asymptotic beyond the
/// underflow point of the unscaled Bessel function.
double log_bessel_k(double nu, double x);

/// Density / CDF of the product of independent Gamma(a,1) and Gamma(b,1).
/// The density is 2 u^((a+b)/2-1) K_{a-b}(2 sqrt(u)) / (G(a) G(b)).
double product_gamma_pdf(double a, double b, double u);
double product_gamma_cdf(double a, double b, double x, const EvalOptions& opts = {});

double db_to_linear(double db);
double linear_to_db(double x);

/// Monotone cubic (Fritsch-Carlson) interpolant of a CDF on a log-spaced
/// grid, for K-S statistics and ECDF comparisons where the exact CDF would
/// be evaluated millions of times. Values are clamped to [0,1] and to {0,1}
/// outside the tabulated range.
class CdfCurve {
public:
    /// Tabulates cdf on n log-spaced points spanning [x_lo, x_hi].
    static CdfCurve build(const Fn& cdf, double x_lo, double x_hi, int n = 1024);

    /// Expands the range outward from an initial bracket until the CDF mass
    /// outside is below tail_eps, then tabulates.
    static CdfCurve build_auto(const Fn& cdf, double x_guess, double tail_eps = 1e-7,
                               int n = 1024);

    double operator()(double x) const;

private:
    std::vector<double> lx_, y_, d_; // log-abscissa, values, derivatives
};

} // namespace shadowscatter
