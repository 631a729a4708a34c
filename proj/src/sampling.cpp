#include "shadowscatter/sampling.hpp"

#include <atomic>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "shadowscatter/errors.hpp"
#include "shadowscatter/rng.hpp"

namespace shadowscatter {

void for_each_sample_block(std::size_t n, int threads,
                           const std::function<void(std::size_t, std::size_t, std::size_t)>& fill) {
    const std::size_t nblocks = (n + kSampleBlock - 1) / kSampleBlock;
    if (threads <= 1 || nblocks <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) {
            const std::size_t off = b * kSampleBlock;
            fill(b, off, std::min(kSampleBlock, n - off));
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            const std::size_t off = b * kSampleBlock;
            fill(b, off, std::min(kSampleBlock, n - off));
        }
    };
    std::vector<std::thread> pool;
    const int t = std::min<int>(threads, static_cast<int>(nblocks));
    pool.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

std::uint64_t batch_stream(std::uint32_t stream, std::size_t block) {
    return (static_cast<std::uint64_t>(stream) << 32) | static_cast<std::uint64_t>(block);
}

namespace {

template <class Draw>
SampleBatch make_batch(std::size_t n, std::uint64_t seed, std::uint32_t stream, int threads,
                       Draw&& draw) {
    SampleBatch b;
    b.values.resize(n);
    b.seed = seed;
    b.stream_id = stream;
    b.count = n;
    for_each_sample_block(n, threads, [&](std::size_t blk, std::size_t off, std::size_t cnt) {
        Philox rng(seed, batch_stream(stream, blk));
        for (std::size_t i = 0; i < cnt; ++i) b.values[off + i] = draw(rng);
    });
    return b;
}

} // namespace

SampleBatch sample_nakagami_sq(double m, double omega, std::size_t n, std::uint64_t seed,
                               std::uint32_t stream, int threads) {
    if (!(m > 0.0) || !(omega > 0.0)) throw DomainError("nakagami: need m>0, omega>0");
    const double scale = omega / m;
    return make_batch(n, seed, stream, threads,
                      [&](Philox& rng) { return rng.gamma(m) * scale; });
}

SampleBatch sample_inverse_gamma(double alpha, double gamma_bar, std::size_t n,
                                 std::uint64_t seed, std::uint32_t stream, int threads) {
    if (!(alpha > 1.0)) throw DomainError("inverse-gamma: alpha must exceed 1");
    if (!(gamma_bar > 0.0)) throw DomainError("inverse-gamma: gamma_bar must be positive");
    return make_batch(n, seed, stream, threads,
                      [&](Philox& rng) { return gamma_bar / rng.gamma(alpha); });
}

SampleBatch sample_ds(const DoubleShadowParams& params, std::size_t n, std::uint64_t seed,
                      std::uint32_t stream, int threads) {
    const auto p = validate(params);
    const double nak_scale = p.omega * p.omega / (p.m1 * p.m2);
    return make_batch(n, seed, stream, threads, [&](Philox& rng) {
        const double nak = rng.gamma(p.m1) * rng.gamma(p.m2) * nak_scale;
        const double shadow = p.gamma_bar / (rng.gamma(p.alpha1) * rng.gamma(p.alpha2));
        return nak * shadow;
    });
}

SampleBatch sample_ss(const SingleShadowParams& params, std::size_t n, std::uint64_t seed,
                      std::uint32_t stream, int threads) {
    const auto p = validate(params);
    const double nak_scale = p.omega * p.omega / (p.m1 * p.m2);
    return make_batch(n, seed, stream, threads, [&](Philox& rng) {
        const double nak = rng.gamma(p.m1) * rng.gamma(p.m2) * nak_scale;
        return nak * p.gamma_bar / rng.gamma(p.alpha);
    });
}

namespace {

double log_moment_common(double m1, double m2, double omega, double k) {
    return std::lgamma(m1 + k) - std::lgamma(m1) + std::lgamma(m2 + k) - std::lgamma(m2) -
           k * std::log(m1 * m2) + 2.0 * k * std::log(omega);
}

} // namespace

double moment_ds(const DoubleShadowParams& params, double k) {
    const auto p = validate(params);
    if (!(k > 0.0)) throw DomainError("moment order must be positive");
    if (p.alpha1 <= k || p.alpha2 <= k)
        throw MomentDivergence("moment of order " + std::to_string(k) +
                               " diverges: requires alpha1, alpha2 > k");
    const double lg = log_moment_common(p.m1, p.m2, p.omega, k) + k * std::log(p.gamma_bar) +
                      std::lgamma(p.alpha1 - k) - std::lgamma(p.alpha1) +
                      std::lgamma(p.alpha2 - k) - std::lgamma(p.alpha2);
    return std::exp(lg);
}

double moment_ss(const SingleShadowParams& params, double k) {
    const auto p = validate(params);
    if (!(k > 0.0)) throw DomainError("moment order must be positive");
    if (p.alpha <= k)
        throw MomentDivergence("moment of order " + std::to_string(k) +
                               " diverges: requires alpha > k");
    const double lg = log_moment_common(p.m1, p.m2, p.omega, k) + k * std::log(p.gamma_bar) +
                      std::lgamma(p.alpha - k) - std::lgamma(p.alpha);
    return std::exp(lg);
}

namespace {

nlohmann::json params_to_json(const AnyParams& params) {
    nlohmann::json j;
    if (std::holds_alternative<DoubleShadowParams>(params)) {
        const auto& p = std::get<DoubleShadowParams>(params);
        j = {{"m1", p.m1},         {"m2", p.m2},         {"omega", p.omega},
             {"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"gamma_bar", p.gamma_bar}};
    } else {
        const auto& p = std::get<SingleShadowParams>(params);
        j = {{"m1", p.m1},
             {"m2", p.m2},
             {"omega", p.omega},
             {"alpha", p.alpha},
             {"gamma_bar", p.gamma_bar}};
    }
    return j;
}

} // namespace

void write_batch_csv(const SampleBatch& b, std::ostream& os, const std::string& model,
                     const AnyParams& params) {
    os << "# model: " << model << "\n";
    os << "# params: " << params_to_json(params).dump() << "\n";
    os << "# seed: " << b.seed << "\n# stream: " << b.stream_id << "\n# count: " << b.count
       << "\n";
    os << "snr_linear\n";
    os.precision(17);
    for (double v : b.values) os << v << "\n";
}

void write_batch_json(const SampleBatch& b, std::ostream& os, const std::string& model,
                      const AnyParams& params) {
    nlohmann::json j;
    j["model"] = model;
    j["params"] = params_to_json(params);
    j["seed"] = b.seed;
    j["stream"] = b.stream_id;
    j["count"] = b.count;
    j["values"] = b.values;
    os << j.dump(2) << "\n";
}

std::vector<double> read_value_column(std::istream& is) {
    std::vector<double> out;
    std::string line;
    bool header_seen = false;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        // first non-comment, non-numeric row is the header
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str()) {
            if (!header_seen) {
                header_seen = true;
                continue;
            }
            throw ParseError("unparseable row at line " + std::to_string(lineno) + ": " + line);
        }
        out.push_back(v);
    }
    return out;
}

} // namespace shadowscatter
