#include "shadowscatter/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shadowscatter/errors.hpp"
#include "shadowscatter/numerics.hpp"
#include "shadowscatter/rng.hpp"
#include "shadowscatter/sampling.hpp"

namespace shadowscatter {

PowerTrace validate(PowerTrace t) {
    if (t.samples.empty()) throw DomainError("trace must be nonempty");
    if (!(t.sample_spacing_m > 0.0)) throw DomainError("sample spacing must be positive");
    if (!(t.wavelength_m > 0.0)) throw DomainError("wavelength must be positive");
    for (double s : t.samples)
        if (!std::isfinite(s)) throw DomainError("trace samples must be finite");
    if (t.unit == PowerUnit::linear)
        for (double s : t.samples)
            if (s < 0.0) throw DomainError("linear power samples must be nonnegative");
    return t;
}

PowerTrace to_linear(const PowerTrace& t) {
    if (t.unit == PowerUnit::linear) return t;
    PowerTrace out = t;
    out.unit = PowerUnit::linear;
    for (double& s : out.samples) s = db_to_linear(s);
    return out;
}

PowerTrace to_db(const PowerTrace& t) {
    if (t.unit == PowerUnit::dB) return t;
    PowerTrace out = t;
    out.unit = PowerUnit::dB;
    for (double& s : out.samples) s = linear_to_db(s);
    return out;
}

namespace {

PowerUnit parse_unit(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "db") return PowerUnit::dB;
    if (s == "linear") return PowerUnit::linear;
    throw UnitError("unknown power unit '" + s + "' (expected dB or linear)");
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

} // namespace

PowerTrace load_trace(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open trace file " + path);

    PowerTrace t;
    bool unit_set = false;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            const std::string key = trim(line.substr(1, colon - 1));
            const std::string val = trim(line.substr(colon + 1));
            if (key == "unit") {
                t.unit = parse_unit(val);
                unit_set = true;
            } else if (key == "sample_spacing_m") {
                t.sample_spacing_m = std::atof(val.c_str());
            } else if (key == "wavelength_m") {
                t.wavelength_m = std::atof(val.c_str());
            }
            continue;
        }
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str()) {
            if (!header_seen && trim(line) == "power") {
                header_seen = true;
                continue;
            }
            throw ParseError(path + ": unparseable row at line " + std::to_string(lineno));
        }
        t.samples.push_back(v);
    }

    const std::string sidecar = path + ".json";
    if (std::filesystem::exists(sidecar)) {
        std::ifstream js(sidecar);
        nlohmann::json j;
        try {
            js >> j;
        } catch (const std::exception& e) {
            throw ParseError(sidecar + ": " + e.what());
        }
        if (j.contains("unit")) {
            t.unit = parse_unit(j["unit"].get<std::string>());
            unit_set = true;
        }
        if (j.contains("sample_spacing_m")) t.sample_spacing_m = j["sample_spacing_m"];
        if (j.contains("wavelength_m")) t.wavelength_m = j["wavelength_m"];
    }

    if (!unit_set) throw UnitError(path + ": power unit not declared in header or sidecar");
    return validate(std::move(t));
}

void save_trace(const PowerTrace& t, const std::string& path, bool sidecar) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write trace file " + path);
    os.precision(17);
    if (!sidecar) {
        os << "# unit: " << (t.unit == PowerUnit::dB ? "dB" : "linear") << "\n";
        os << "# sample_spacing_m: " << t.sample_spacing_m << "\n";
        os << "# wavelength_m: " << t.wavelength_m << "\n";
    }
    os << "power\n";
    for (double s : t.samples) os << s << "\n";
    if (sidecar) {
        nlohmann::json j{{"unit", t.unit == PowerUnit::dB ? "dB" : "linear"},
                         {"sample_spacing_m", t.sample_spacing_m},
                         {"wavelength_m", t.wavelength_m}};
        std::ofstream js(path + ".json");
        if (!js) throw IoError("cannot write sidecar for " + path);
        js << j.dump(2) << "\n";
    }
}

std::vector<PowerTrace> split_virtual_uavs(const PowerTrace& trace, int L) {
    const auto t = validate(trace);
    if (L < 1) throw DomainError("L must be >= 1");
    const std::size_t seg = t.samples.size() / static_cast<std::size_t>(L);
    if (seg == 0)
        throw InsufficientLength("trace of length " + std::to_string(t.samples.size()) +
                                 " cannot be split into " + std::to_string(L) + " segments");
    std::vector<PowerTrace> out;
    out.reserve(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i) {
        PowerTrace s = t;
        s.samples.assign(t.samples.begin() + static_cast<long>(i * seg),
                         t.samples.begin() + static_cast<long>((i + 1) * seg));
        out.push_back(std::move(s));
    }
    return out;
}

ReplayResult replay(const std::vector<PowerTrace>& traces, const StrategyConfig& cfg) {
    if (traces.empty()) throw LengthMismatch("no traces given");
    if (cfg.L != static_cast<int>(traces.size()))
        throw LengthMismatch("cfg.L=" + std::to_string(cfg.L) + " but " +
                             std::to_string(traces.size()) + " traces given");
    const std::size_t n = traces[0].samples.size();
    const PowerUnit unit = traces[0].unit;
    for (const auto& t : traces) {
        if (t.samples.size() != n) throw LengthMismatch("traces must have equal length");
        if (t.unit != unit) throw UnitError("traces must share one power unit");
    }
    if (cfg.window_samples < 1 || cfg.ct_samples < 1)
        throw DomainError("window/ct cadence must be >= 1");

    const int L = cfg.L;
    // decisions always compare linear-domain values
    std::vector<std::vector<double>> lin(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i) lin[static_cast<std::size_t>(i)] = to_linear(traces[static_cast<std::size_t>(i)]).samples;

    const std::size_t cadence =
        cfg.policy == ReplayPolicy::per_sample
            ? 1
            : static_cast<std::size_t>(cfg.policy == ReplayPolicy::shadow_window
                                           ? cfg.window_samples
                                           : cfg.ct_samples);

    ReplayResult r;
    r.unit = unit;
    r.selected_power.resize(n);
    r.selected_index.resize(n);

    std::int64_t decisions = 0;
    for (std::size_t t0 = 0; t0 < n; t0 += cadence) {
        const std::size_t t1 = std::min(n, t0 + cadence);
        int best = 0;
        if (L > 1) {
            double best_v = -1.0;
            for (int i = 0; i < L; ++i) {
                double v;
                if (cfg.policy != ReplayPolicy::per_sample && cfg.instantaneous &&
                    cfg.policy == ReplayPolicy::coherence_time) {
                    v = lin[static_cast<std::size_t>(i)][t0];
                } else {
                    double acc = 0;
                    for (std::size_t t = t0; t < t1; ++t) acc += lin[static_cast<std::size_t>(i)][t];
                    v = acc / static_cast<double>(t1 - t0);
                }
                if (v > best_v) {
                    best_v = v;
                    best = i;
                }
            }
        }
        ++decisions;
        for (std::size_t t = t0; t < t1; ++t) {
            r.selected_index[t] = best;
            r.selected_power[t] = traces[static_cast<std::size_t>(best)].samples[t];
        }
    }
    r.comparisons = decisions * (L - 1);
    for (std::size_t t = 1; t < n; ++t)
        if (r.selected_index[t] != r.selected_index[t - 1]) ++r.switches;
    return r;
}

namespace {

std::vector<double> as_db(const ReplayResult& r) {
    std::vector<double> v = r.selected_power;
    if (r.unit == PowerUnit::linear)
        for (double& x : v) x = linear_to_db(x);
    return v;
}

} // namespace

double mean_db(const ReplayResult& r) {
    // mean in linear power, reported in dB
    double acc = 0;
    for (double x : r.selected_power)
        acc += r.unit == PowerUnit::linear ? x : db_to_linear(x);
    return linear_to_db(acc / static_cast<double>(r.selected_power.size()));
}

double p10_db(const ReplayResult& r) {
    std::vector<double> v = as_db(r);
    std::sort(v.begin(), v.end());
    return v[static_cast<std::size_t>(0.10 * static_cast<double>(v.size()))];
}

std::string ecdf_compare(const std::vector<ReplayResult>& results,
                         const std::vector<std::string>& labels, int grid_points) {
    if (results.empty()) throw LengthMismatch("ecdf_compare: no results");
    if (results.size() != labels.size())
        throw LengthMismatch("ecdf_compare: labels must match results");
    std::vector<std::vector<double>> curves;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : results) {
        auto v = as_db(r);
        std::sort(v.begin(), v.end());
        lo = std::min(lo, v.front());
        hi = std::max(hi, v.back());
        curves.push_back(std::move(v));
    }
    std::ostringstream os;
    os.precision(10);
    for (std::size_t i = 0; i < results.size(); ++i)
        os << "# " << labels[i] << ": mean_db=" << mean_db(results[i])
           << " p10_db=" << p10_db(results[i]) << " comparisons=" << results[i].comparisons
           << " switches=" << results[i].switches << "\n";
    os << "power_db";
    for (const auto& l : labels) os << ",ecdf_" << l;
    os << "\n";
    for (int g = 0; g < grid_points; ++g) {
        const double x = lo + (hi - lo) * g / (grid_points - 1);
        os << x;
        for (const auto& c : curves) {
            const auto it = std::upper_bound(c.begin(), c.end(), x);
            os << "," << static_cast<double>(it - c.begin()) / static_cast<double>(c.size());
        }
        os << "\n";
    }
    return os.str();
}

std::string replay_summary_json(const ReplayResult& r) {
    nlohmann::json j{{"comparisons", r.comparisons},
                     {"switches", r.switches},
                     {"mean_db", mean_db(r)},
                     {"p10_db", p10_db(r)},
                     {"samples", r.selected_power.size()}};
    return j.dump(2);
}

PowerTrace synth_trace(const DoubleShadowParams& params, std::size_t n, std::size_t shadow_block,
                       std::uint64_t seed, std::uint32_t stream, double sample_spacing_m,
                       double wavelength_m) {
    const auto p = validate(params);
    if (n == 0) throw DomainError("synth_trace: n must be positive");
    if (shadow_block == 0) throw DomainError("synth_trace: shadow_block must be positive");
    PowerTrace t;
    t.unit = PowerUnit::linear;
    t.sample_spacing_m = sample_spacing_m;
    t.wavelength_m = wavelength_m;
    t.samples.resize(n);
    Philox rng(seed, batch_stream(stream, 0));
    const double nak_scale = p.omega * p.omega / (p.m1 * p.m2);
    double shadow = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % shadow_block == 0)
            shadow = p.gamma_bar / (rng.gamma(p.alpha1) * rng.gamma(p.alpha2));
        t.samples[i] = rng.gamma(p.m1) * rng.gamma(p.m2) * nak_scale * shadow;
    }
    return t;
}

} // namespace shadowscatter
