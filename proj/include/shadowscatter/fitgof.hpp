#pragma once

#include <string>
#include <vector>

#include "shadowscatter/numerics.hpp"
#include "shadowscatter/params.hpp"

namespace shadowscatter {

/// Positive, finite observations (linear power/SNR), optionally weighted.
struct EmpiricalSample {
    std::vector<double> values;
    std::vector<double> weights; // empty = unweighted

    static EmpiricalSample from(std::vector<double> values, std::vector<double> weights = {});
};

enum class ModelTag { dig, sig };

struct FitResult {
    AnyParams params;
    ModelTag tag = ModelTag::dig;
    bool converged = false;
    std::vector<double> residuals; // log-moment mismatch per matched order
    std::vector<double> orders;
    int iterations = 0;
};

/// Method-of-moments fit. Matches model log-moments of fractional orders
/// k in {0.2,...,1.2} to the empirical ones by bounded least squares
/// (low orders keep the estimators finite-variance under the heavy
/// inverse-gamma tails). omega is pinned to 1; gamma_bar carries the scale.
FitResult fit_moments(const EmpiricalSample& sample, ModelTag tag);

/// Symmetrized K-L divergence between the sample and a model CDF over
/// equal-probability (quantile) bins; bin probabilities are floored at 1e-12.
double kl_divergence(const EmpiricalSample& sample, const Fn& model_cdf, int bins = 100);
double kl_divergence(const EmpiricalSample& sample, const AnyParams& params, int bins = 100);

struct GofReport {
    double kl = -1.0;        // symmetrized K-L (negative = not computed)
    double ks = 0.0;         // sup |F_e - F_t|
    bool ks_pass = false;    // ks < c(confidence)/sqrt(n)
    double ks_rate = 0.0;    // pass fraction when evaluated per segment
    double ks_critical = 0.0;
    int bins = 0;
    std::size_t n = 0;
};

/// One-sample Kolmogorov-Smirnov test against a model CDF. The critical
/// value uses the asymptotic inverse c(q) = sqrt(-ln((1-q)/2)/2), which gives
/// the usual 1.358 at 95%. With fitted parameters this is not strictly
/// distribution-free; the naive critical value is reported regardless.
GofReport ks_test(const EmpiricalSample& sample, const Fn& model_cdf, double confidence = 0.95);
GofReport ks_test(const EmpiricalSample& sample, const AnyParams& params,
                  double confidence = 0.95);

/// A named distribution entered into the comparison table; external models
/// participate through their CDF callable alone.
struct GofCandidate {
    std::string name;
    Fn cdf;
};

GofCandidate make_candidate(const std::string& name, const AnyParams& params,
                            const EvalOptions& opts = {});

/// Ranked goodness-of-fit table: K-L and K-S per candidate, sorted by K-L
/// ascending (best fit first). `segments > 1` splits the sample into that
/// many contiguous chunks and reports the K-S pass rate across them.
std::vector<std::pair<std::string, GofReport>> gof_table(const EmpiricalSample& sample,
                                                         const std::vector<GofCandidate>& cands,
                                                         int bins = 100, int segments = 1,
                                                         double confidence = 0.95);

} // namespace shadowscatter
