#pragma once

#include <string>
#include <vector>

#include "shadowscatter/numerics.hpp"
#include "shadowscatter/params.hpp"

namespace shadowscatter {

// Composite-SNR densities and distributions.
//
// Two evaluation routes are kept per function and cross-checked in the test
// suite:
//   series     - the hypergeometric reductions of the closed forms: a
//                regularized 2F1 for the DS density (argument 1 - 1/(gt*g),
//                used while it stays within kSeriesArgMax) and a Tricomi U
//                for the SS density; the CDFs use the definitional mixture
//                of an incomplete beta against a beta-prime / gamma weight.
//   quadrature - direct 1-D mixing of the double-Nakagami density against
//                the shadowing density (PDFs), or cumulative integration of
//                the density (CDFs).
// Method::auto_eval picks series where applicable, quadrature otherwise.

double pdf_ds(const DoubleShadowParams& p, double gamma, const EvalOptions& opts = {});
double pdf_ss(const SingleShadowParams& p, double gamma, const EvalOptions& opts = {});
double cdf_ds(const DoubleShadowParams& p, double gamma, const EvalOptions& opts = {});
double cdf_ss(const SingleShadowParams& p, double gamma, const EvalOptions& opts = {});

/// Route auto_eval would take for pdf_ds at this argument ("series" or
/// "quadrature"); used for the method column in sweep output.
const char* pdf_ds_route(const DoubleShadowParams& p, double gamma);

/// Outage probability P(SNR <= gamma_t) for either model.
double outage(const DoubleShadowParams& p, double gamma_t, const EvalOptions& opts = {});
double outage(const SingleShadowParams& p, double gamma_t, const EvalOptions& opts = {});

/// BPSK bit error probability by the CDF method:
///   P = 1/(2 sqrt(pi)) * int_0^inf F(g) g^(-1/2) e^-g dg,
/// the weight being d/dg of -Q(sqrt(2g)). Evaluated as
/// 1/sqrt(pi) * int F(t^2) e^(-t^2) dt. Result lies in (0, 1/2].
double bep_bpsk(const DoubleShadowParams& p, const EvalOptions& opts = {});
double bep_bpsk(const SingleShadowParams& p, const EvalOptions& opts = {});

/// Ergodic capacity BW * E[log2(1 + SNR)] in bit/s (bits/s/Hz at bandwidth 1).
double capacity(const DoubleShadowParams& p, double bandwidth_hz = 1.0,
                const EvalOptions& opts = {});
double capacity(const SingleShadowParams& p, double bandwidth_hz = 1.0,
                const EvalOptions& opts = {});

struct SweepRow {
    double x = 0;
    double value = 0;
    std::string method;
};

std::vector<SweepRow> sweep_pdf(const AnyParams& p, const std::vector<double>& gammas,
                                const EvalOptions& opts = {});
std::vector<SweepRow> sweep_cdf(const AnyParams& p, const std::vector<double>& gammas,
                                const EvalOptions& opts = {});

/// CDF of the double-Nakagami-squared factor N = N1^2 N2^2 (used by the
/// selection combiner statistics).
double nakagami_product_cdf(double m1, double m2, double omega, double x,
                            const EvalOptions& opts = {});

/// Tabulated CDF for hot loops (K-S statistics, ECDF comparisons).
CdfCurve cdf_curve(const AnyParams& p, const EvalOptions& opts = {});

} // namespace shadowscatter
