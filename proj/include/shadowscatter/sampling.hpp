#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "shadowscatter/params.hpp"

namespace shadowscatter {

/// A batch of i.i.d. draws plus the RNG coordinates that produced it.
/// Regenerating with the same (params, seed, stream_id, count) reproduces the
/// values bit for bit, independent of thread count: the batch is cut into
/// fixed blocks of kSampleBlock draws and block b runs on Philox stream
/// (stream_id << 32) | b. stream_id must therefore fit in 32 bits.
struct SampleBatch {
    std::vector<double> values;
    std::uint64_t seed = 0;
    std::uint32_t stream_id = 0;
    std::size_t count = 0;
};

inline constexpr std::size_t kSampleBlock = std::size_t{1} << 20;

/// Squared Nakagami-m envelope draws, i.e. Gamma(m, omega/m); mean omega.
SampleBatch sample_nakagami_sq(double m, double omega, std::size_t n, std::uint64_t seed,
                               std::uint32_t stream = 0, int threads = 1);

/// Inverse-gamma draws with shape alpha and scale gamma_bar, realized as
/// gamma_bar over a Gamma(alpha,1) draw; mean gamma_bar/(alpha-1).
SampleBatch sample_inverse_gamma(double alpha, double gamma_bar, std::size_t n,
                                 std::uint64_t seed, std::uint32_t stream = 0, int threads = 1);

/// Composite DS SNR draws N1^2 I1 N2^2 I2 (four independent factors per value).
SampleBatch sample_ds(const DoubleShadowParams& p, std::size_t n, std::uint64_t seed,
                      std::uint32_t stream = 0, int threads = 1);

/// Composite SS SNR draws (N1 N2)^2 I (three independent factors per value).
SampleBatch sample_ss(const SingleShadowParams& p, std::size_t n, std::uint64_t seed,
                      std::uint32_t stream = 0, int threads = 1);

/// k-th moment of the DS composite SNR, fractional orders allowed:
///   E[g^k] = prod_j G(m_j+k)/(G(m_j) m_j^k) * omega^(2k) * gbar^k
///                 * prod_j G(alpha_j-k)/G(alpha_j),  valid for alpha_j > k.
/// Throws MomentDivergence when any alpha_j <= k (heavy tail).
double moment_ds(const DoubleShadowParams& p, double k);
double moment_ss(const SingleShadowParams& p, double k);

/// Applies fill(block_index, offset, count) over the fixed kSampleBlock
/// decomposition of n, optionally threaded. The block grid is what makes
/// batch contents independent of the thread count.
void for_each_sample_block(std::size_t n, int threads,
                           const std::function<void(std::size_t, std::size_t, std::size_t)>& fill);

/// Philox stream id used by block `block` of a batch on user stream `stream`.
std::uint64_t batch_stream(std::uint32_t stream, std::size_t block);

/// CSV: '#'-prefixed metadata lines, then a `snr_linear` header, one value
/// per line. JSON: envelope {model, params, seed, stream, count, values}.
void write_batch_csv(const SampleBatch& b, std::ostream& os, const std::string& model,
                     const AnyParams& params);
void write_batch_json(const SampleBatch& b, std::ostream& os, const std::string& model,
                      const AnyParams& params);

/// Reads one numeric column from a CSV, skipping '#' comments and a header row.
std::vector<double> read_value_column(std::istream& is);

} // namespace shadowscatter
