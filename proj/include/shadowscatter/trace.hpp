#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "shadowscatter/params.hpp"

namespace shadowscatter {

enum class PowerUnit { dB, linear };

/// A time-indexed received-power series with spatial sampling metadata.
struct PowerTrace {
    std::vector<double> samples;
    PowerUnit unit = PowerUnit::linear;
    double sample_spacing_m = 0.0;
    double wavelength_m = 0.0;
};

PowerTrace validate(PowerTrace t);

PowerTrace to_linear(const PowerTrace& t);
PowerTrace to_db(const PowerTrace& t);

/// Loads a trace from CSV. Metadata comes from '#' header lines
/// (`# unit: dB`, `# sample_spacing_m: ...`, `# wavelength_m: ...`) or, when
/// present, a JSON sidecar `<path>.json` with keys {unit, sample_spacing_m,
/// wavelength_m}, which takes precedence. Throws UnitError when no unit is
/// declared, ParseError on malformed content.
PowerTrace load_trace(const std::string& path);
void save_trace(const PowerTrace& t, const std::string& path, bool sidecar = false);

/// Splits into L contiguous equal-length segments (remainder truncated),
/// each treated as one simultaneous virtual-UAV link.
std::vector<PowerTrace> split_virtual_uavs(const PowerTrace& t, int L);

enum class ReplayPolicy { shadow_window, coherence_time, per_sample };

struct StrategyConfig {
    ReplayPolicy policy = ReplayPolicy::shadow_window;
    int window_samples = 242; // stationarity region (40 lambda in the campaign)
    int ct_samples = 170;     // coherence-time cadence (0.7 lambda)
    int L = 1;
    bool instantaneous = false; // CT policy: decide on the cadence-start sample
                                // instead of the block mean
};

struct ReplayResult {
    std::vector<double> selected_power; // same unit as the inputs
    std::vector<int> selected_index;
    std::int64_t comparisons = 0; // decisions * (L-1)
    std::int64_t switches = 0;    // index changes along the series
    PowerUnit unit = PowerUnit::linear;
};

/// Replays a selection strategy over L equal-length traces. Decisions are
/// made every cadence samples on the linear-domain mean of the decided
/// window [t, t+cadence) and apply to that whole window, including a final
/// partial one. per_sample decides every sample on instantaneous values.
ReplayResult replay(const std::vector<PowerTrace>& traces, const StrategyConfig& cfg);

double mean_db(const ReplayResult& r);
double p10_db(const ReplayResult& r);

/// Aligned ECDF curves on a common dB grid, one column per result, with
/// per-strategy mean and 10th-percentile power in '#' metadata lines.
std::string ecdf_compare(const std::vector<ReplayResult>& results,
                         const std::vector<std::string>& labels, int grid_points = 201);

std::string replay_summary_json(const ReplayResult& r);

/// Synthetic trace from the DS model: block-constant shadowing redrawn every
/// shadow_block samples, per-sample double-Nakagami multipath. Used to
/// exercise the replay pipeline end to end without measurement data.
PowerTrace synth_trace(const DoubleShadowParams& p, std::size_t n, std::size_t shadow_block,
                       std::uint64_t seed, std::uint32_t stream = 0,
                       double sample_spacing_m = 0.0015, double wavelength_m = 0.15);

} // namespace shadowscatter
