#pragma once

#include <cstdint>
#include <vector>

#include "shadowscatter/numerics.hpp"
#include "shadowscatter/params.hpp"
#include "shadowscatter/sampling.hpp"

namespace shadowscatter {

/// Shadowing-based combiner over L links: the receiver tracks only the slow
/// shadowing variables I_i and connects to argmax I_i, so the output SNR is
/// N_k * I_max with N_k the multipath factor of the chosen link (independent
/// of the choice).
struct SelectionParams {
    AnyParams base;
    int L = 1;
};

SelectionParams validate(SelectionParams sel);

// --- Finite series for the max-shadowing statistics ------------------------
//
// For the DS model write v = 2 sqrt(gbar/y) and K = 2*alpha1. When K is an
// integer and alpha2 = alpha1 + 1/2, the gamma duplication identity collapses
// the DIG distribution: v is exactly Gamma(K) distributed, so
//   F_I(y) = Q(K, v) = e^-v * sum_{k<K} v^k/k!
// and I_max corresponds to the minimum of L such gamma variates. Expanding
//   F_I^(L-1) = [1 - (1 - e^-v S(v))]^(L-1),   S(v) = sum_{k<K} v^k/k!,
// with two binomials and the multinomial theorem gives the series
//   F_I^(L-1) = sum_{i1=0}^{L-1} sum_{i2=0}^{i1} C(L-1,i1) C(i1,i2)
//               (-1)^(i1+i2) e^(-i2 v) sum_{|n|=i2} i2!/prod(n_k!)
//               prod_k (1/k!)^n_k * v^P,        P = sum_k k*n_k,
// the multinomial running over n = (n_0..n_{K-1}). Both validity conditions
// are enforced: the half-step offset between the shadow shapes is what makes
// the finite form exist at all (without it the product-gamma CDF has
// logarithmic terms and no finite exponential-polynomial expansion).
//
// Each (i1,i2,n) component conditions v on a Gamma(K+P, i2+1) law, which maps
// back to a DIG distribution with shapes ((K+P)/2, (K+P+1)/2) and scale
// gbar*(i2+1)^2. The output-SNR series therefore evaluates as a signed
// mixture of the same DS kernels used by the single-link analytics, with
// weights w = L * coef * G(K+P) / (G(K) (i2+1)^(K+P)) summing to one.
//
// The SS model is the same construction one level down: u = gbar/I_max is the
// minimum of L Gamma(alpha) variates (alpha integer), a single multinomial
// over (n_0..n_{alpha-1}) with |n| = L-1, component kernels SS(alpha+P,
// gbar*L).

struct ExpansionTerm {
    int i1 = 0;             // outer binomial index (DS; 0 for SS terms)
    int i2 = 0;             // inner binomial index / exponential rate - 1
    std::vector<int> n_vec; // multinomial exponents n_0..n_{K-1}
    double coef = 0;        // signed coefficient incl. binomials and multinomial
    int power = 0;          // P = sum k*n_k
    double q = 0;           // alpha1+alpha2+P (DS) or alpha+P (SS)
};

/// True when the DS finite-series route applies: 2*alpha1 integer,
/// alpha2 - alpha1 = 1/2, 2*alpha1 <= 12 and L <= 8.
bool ds_series_applicable(const DoubleShadowParams& p, int L);

/// True when the SS series applies: alpha integer <= 12 and L <= 8.
bool ss_series_applicable(const SingleShadowParams& p, int L);

/// Term enumerations; throw SeriesInapplicable outside the validity region.
std::vector<ExpansionTerm> expansion_terms_ds(const DoubleShadowParams& p, int L);
std::vector<ExpansionTerm> expansion_terms_ss(const SingleShadowParams& p, int L);

/// Density of I_max = max_i I_i. Series route per the expansion above;
/// quadrature route is the order-statistics identity L f_I F_I^(L-1) with
/// F_I integrated numerically from the density.
double pdf_imax_ds(const SelectionParams& sel, double y, const EvalOptions& opts = {});
double pdf_imax_ss(const SelectionParams& sel, double y, const EvalOptions& opts = {});

/// Output-SNR density / distribution of the combiner.
double pdf_out_ds(const SelectionParams& sel, double gamma, const EvalOptions& opts = {});
double cdf_out_ds(const SelectionParams& sel, double gamma, const EvalOptions& opts = {});
double pdf_out_ss(const SelectionParams& sel, double gamma, const EvalOptions& opts = {});
double cdf_out_ss(const SelectionParams& sel, double gamma, const EvalOptions& opts = {});

/// Average output SNR, closed form. Independent of m1, m2. Throws
/// ClosedFormPole if a term's gamma argument is nonpositive (cannot happen
/// for alpha1 > 1, kept as a guard) and SeriesInapplicable outside the series
/// region; asnr_*_quadrature integrates y * pdf_imax instead (the multipath
/// factor contributes E[N] = omega^2 by independence).
double asnr_ds(const SelectionParams& sel);
double asnr_ss(const SelectionParams& sel);
double asnr_ds_quadrature(const SelectionParams& sel, const EvalOptions& opts = {});
double asnr_ss_quadrature(const SelectionParams& sel, const EvalOptions& opts = {});

enum class SelectionPolicy { shadow_max, snr_max, random_pick };

/// Monte Carlo oracle: per trial draws L independent (N_i, I_i) pairs and
/// applies the policy. shadow_max selects argmax I_i and outputs N_k I_k;
/// snr_max outputs max_i N_i I_i; random_pick a uniformly chosen link.
/// With L = 1 every policy consumes identical randomness and returns
/// identical batches.
SampleBatch simulate_selection(const SelectionParams& sel, std::size_t n_trials,
                               std::uint64_t seed, SelectionPolicy policy,
                               std::uint32_t stream = 0, int threads = 1);

} // namespace shadowscatter
