#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shadowscatter/analytics.hpp"
#include "shadowscatter/errors.hpp"
#include "shadowscatter/fitgof.hpp"
#include "shadowscatter/sampling.hpp"
#include "shadowscatter/selection.hpp"
#include "shadowscatter/trace.hpp"

namespace ss = shadowscatter;

namespace {

constexpr const char* kVersion = "shadowscatter 0.1.0";
constexpr std::uint64_t kDefaultSeed = 20200413;

std::uint64_t env_seed() {
    if (const char* s = std::getenv("SHADOWSCATTER_SEED")) return std::strtoull(s, nullptr, 10);
    return kDefaultSeed;
}

struct ModelFlags {
    std::string model = "ds";
    double m1 = 1.0, m2 = 1.0, omega = 1.0;
    double a1 = 2.0, a2 = 2.5, alpha = 2.0;
    double gbar = -1.0, gbar_db = std::numeric_limits<double>::quiet_NaN();

    void add_to(CLI::App* cmd, bool with_model = true) {
        if (with_model)
            cmd->add_option("--model", model, "channel model: ds or ss")
                ->check(CLI::IsMember({"ds", "ss"}));
        cmd->add_option("--m1", m1, "Nakagami shape, region 1");
        cmd->add_option("--m2", m2, "Nakagami shape, region 2");
        cmd->add_option("--omega", omega, "mean-square envelope value (linear)");
        cmd->add_option("--a1", a1, "inverse-gamma shape, region 1 (DS)");
        cmd->add_option("--a2", a2, "inverse-gamma shape, region 2 (DS)");
        cmd->add_option("--alpha", alpha, "inverse-gamma shape (SS)");
        cmd->add_option("--gbar", gbar, "average SNR scale, linear");
        cmd->add_option("--gbar-db", gbar_db, "average SNR scale, dB");
    }

    double gamma_bar() const {
        if (!std::isnan(gbar_db)) return ss::db_to_linear(gbar_db);
        if (gbar > 0.0) return gbar;
        return 1.0;
    }

    ss::AnyParams params() const {
        if (model == "ds")
            return ss::validate(
                ss::DoubleShadowParams{m1, m2, omega, a1, a2, gamma_bar()});
        return ss::validate(ss::SingleShadowParams{m1, m2, omega, alpha, gamma_bar()});
    }

    ss::AnyParams params_with_gbar(double gb) const {
        if (model == "ds") return ss::validate(ss::DoubleShadowParams{m1, m2, omega, a1, a2, gb});
        return ss::validate(ss::SingleShadowParams{m1, m2, omega, alpha, gb});
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"model", model}, {"m1", m1},       {"m2", m2},
                         {"omega", omega}, {"gamma_bar", gamma_bar()}};
        if (model == "ds") {
            j["alpha1"] = a1;
            j["alpha2"] = a2;
        } else {
            j["alpha"] = alpha;
        }
        return j;
    }
};

struct OutputFlags {
    std::string path;
    std::string format = "csv";

    void add_to(CLI::App* cmd) {
        cmd->add_option("--out", path, "output file (default: stdout)");
        cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    }

    std::unique_ptr<std::ostream> open_or_stdout(std::unique_ptr<std::ofstream>& holder) const {
        if (path.empty()) return nullptr;
        holder = std::make_unique<std::ofstream>(path);
        if (!*holder) throw ss::IoError("cannot open output file " + path);
        return nullptr;
    }
};

std::ostream& out_stream(const OutputFlags& of, std::unique_ptr<std::ofstream>& holder) {
    if (of.path.empty()) return std::cout;
    holder = std::make_unique<std::ofstream>(of.path);
    if (!*holder) throw ss::IoError("cannot open output file " + of.path);
    return *holder;
}

std::vector<double> db_grid(double from_db, double to_db, int steps) {
    if (steps < 1) throw ss::DomainError("sweep needs at least one step");
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        g[static_cast<std::size_t>(i)] =
            steps == 1 ? from_db : from_db + (to_db - from_db) * i / (steps - 1);
    return g;
}

void csv_header(std::ostream& os, const std::string& cmdline, const nlohmann::json& params,
                std::uint64_t seed) {
    os << "# tool: " << kVersion << "\n";
    os << "# cmd: " << cmdline << "\n";
    os << "# params: " << params.dump() << "\n";
    os << "# seed: " << seed << "\n";
}

ss::Method parse_method(const std::string& m) {
    if (m == "series") return ss::Method::series;
    if (m == "quadrature") return ss::Method::quadrature;
    return ss::Method::auto_eval;
}

int run(int argc, char** argv) {
    CLI::App app{"shadowed double-scattering channel toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global --seed/--threads may follow the subcommand

    std::uint64_t seed = env_seed();
    int threads = 1;
    app.add_option("--seed", seed, "RNG seed (env SHADOWSCATTER_SEED overrides the default)");
    app.add_option("--threads", threads, "worker threads for Monte Carlo paths");

    std::ostringstream cmdline;
    for (int i = 1; i < argc; ++i) cmdline << (i > 1 ? " " : "") << argv[i];

    // ----------------------------------------------------------- sample ----
    auto* sample = app.add_subcommand("sample", "draw composite-SNR batches");
    ModelFlags s_model;
    OutputFlags s_out;
    std::size_t s_n = 1000;
    std::uint32_t s_stream = 0;
    s_model.add_to(sample);
    s_out.add_to(sample);
    sample->add_option("--n", s_n, "number of draws");
    sample->add_option("--stream", s_stream, "RNG stream id (32-bit)");
    sample->callback([&] {
        const auto params = s_model.params();
        ss::SampleBatch batch;
        if (s_model.model == "ds")
            batch = ss::sample_ds(std::get<ss::DoubleShadowParams>(params), s_n, seed, s_stream,
                                  threads);
        else
            batch = ss::sample_ss(std::get<ss::SingleShadowParams>(params), s_n, seed, s_stream,
                                  threads);
        std::unique_ptr<std::ofstream> holder;
        auto& os = out_stream(s_out, holder);
        if (s_out.format == "csv")
            ss::write_batch_csv(batch, os, s_model.model, params);
        else
            ss::write_batch_json(batch, os, s_model.model, params);
    });

    // ------------------------------------------------------------- eval ----
    auto* eval = app.add_subcommand("eval", "evaluate pdf/cdf/op/bep/capacity");
    ModelFlags e_model;
    OutputFlags e_out;
    std::string e_metric = "cdf", e_method = "auto";
    double e_from = -10, e_to = 20;
    int e_steps = 31;
    double e_bw = 1.0;
    eval->add_option("--metric", e_metric, "pdf|cdf|op|bep|capacity")
        ->check(CLI::IsMember({"pdf", "cdf", "op", "bep", "capacity"}));
    e_model.add_to(eval);
    e_out.add_to(eval);
    eval->add_option("--method", e_method, "auto|series|quadrature")
        ->check(CLI::IsMember({"auto", "series", "quadrature"}));
    eval->add_option("--from-db", e_from, "sweep start (dB)");
    eval->add_option("--to-db", e_to, "sweep end (dB)");
    eval->add_option("--steps", e_steps, "sweep points");
    eval->add_option("--bandwidth", e_bw, "bandwidth in Hz (capacity)");
    eval->callback([&] {
        ss::EvalOptions opts;
        opts.method = parse_method(e_method);
        const auto grid = db_grid(e_from, e_to, e_steps);
        std::unique_ptr<std::ofstream> holder;
        auto& os = out_stream(e_out, holder);
        os.precision(12);

        nlohmann::json rows = nlohmann::json::array();
        std::string xcol, vcol;
        if (e_metric == "pdf" || e_metric == "cdf" || e_metric == "op") {
            xcol = e_metric == "op" ? "threshold_db" : "gamma_db";
            vcol = e_metric == "pdf" ? "pdf_per_linear_snr"
                                     : (e_metric == "op" ? "outage_prob" : "cdf");
            const auto params = e_model.params();
            std::vector<double> xs;
            for (double xdb : grid) xs.push_back(ss::db_to_linear(xdb));
            const auto sweep = e_metric == "pdf" ? ss::sweep_pdf(params, xs, opts)
                                                 : ss::sweep_cdf(params, xs, opts);
            for (std::size_t i = 0; i < sweep.size(); ++i)
                rows.push_back({grid[i], sweep[i].value, sweep[i].method});
        } else {
            xcol = "gamma_bar_db";
            vcol = e_metric == "bep" ? "bep" : "capacity_bit_per_s";
            for (double gdb : grid) {
                const auto params = e_model.params_with_gbar(ss::db_to_linear(gdb));
                double v;
                if (e_metric == "bep")
                    v = std::holds_alternative<ss::DoubleShadowParams>(params)
                            ? ss::bep_bpsk(std::get<ss::DoubleShadowParams>(params), opts)
                            : ss::bep_bpsk(std::get<ss::SingleShadowParams>(params), opts);
                else
                    v = std::holds_alternative<ss::DoubleShadowParams>(params)
                            ? ss::capacity(std::get<ss::DoubleShadowParams>(params), e_bw, opts)
                            : ss::capacity(std::get<ss::SingleShadowParams>(params), e_bw, opts);
                rows.push_back({gdb, v, "quadrature"});
            }
        }
        if (e_out.format == "csv") {
            csv_header(os, cmdline.str(), e_model.to_json(), seed);
            os << xcol << "," << vcol << ",method\n";
            for (const auto& r : rows)
                os << r[0].get<double>() << "," << r[1].get<double>() << ","
                   << r[2].get<std::string>() << "\n";
        } else {
            nlohmann::json j{{"columns", {xcol, vcol, "method"}},
                             {"params", e_model.to_json()},
                             {"rows", rows}};
            os << j.dump(2) << "\n";
        }
    });

    // ----------------------------------------------------------- select ----
    auto* select = app.add_subcommand("select", "UAV-selection statistics");
    ModelFlags c_model;
    OutputFlags c_out;
    std::string c_mode = "analytic", c_metric = "op", c_method = "auto", c_policy = "shadow_max";
    std::vector<int> c_L{1, 2, 3, 5};
    double c_from = -10, c_to = 10;
    int c_steps = 21;
    std::size_t c_trials = 100000;
    select->add_option("--mode", c_mode, "analytic|simulate")
        ->check(CLI::IsMember({"analytic", "simulate"}));
    select->add_option("--metric", c_metric, "op|asnr")->check(CLI::IsMember({"op", "asnr"}));
    c_model.add_to(select);
    c_out.add_to(select);
    select->add_option("--L", c_L, "UAV counts, comma separated")->delimiter(',');
    select->add_option("--method", c_method, "auto|series|quadrature")
        ->check(CLI::IsMember({"auto", "series", "quadrature"}));
    select->add_option("--policy", c_policy, "simulate policy")
        ->check(CLI::IsMember({"shadow_max", "snr_max", "random"}));
    select->add_option("--from-db", c_from, "sweep start (dB)");
    select->add_option("--to-db", c_to, "sweep end (dB)");
    select->add_option("--steps", c_steps, "sweep points");
    select->add_option("--trials", c_trials, "Monte Carlo trials per point");
    select->callback([&] {
        ss::EvalOptions opts;
        opts.method = parse_method(c_method);
        const auto grid = db_grid(c_from, c_to, c_steps);
        const bool is_ds = c_model.model == "ds";
        const auto policy = c_policy == "shadow_max"
                                ? ss::SelectionPolicy::shadow_max
                                : (c_policy == "snr_max" ? ss::SelectionPolicy::snr_max
                                                         : ss::SelectionPolicy::random_pick);

        std::vector<std::vector<double>> cols(c_L.size());
        const std::string xcol = c_metric == "op" ? "threshold_db" : "gamma_bar_db";
        for (std::size_t li = 0; li < c_L.size(); ++li) {
            const int L = c_L[li];
            if (c_metric == "op") {
                ss::SelectionParams sel{c_model.params(), L};
                std::vector<double> ecdf_sorted;
                if (c_mode == "simulate") {
                    auto batch = ss::simulate_selection(sel, c_trials, seed, policy,
                                                        static_cast<std::uint32_t>(li), threads);
                    ecdf_sorted = std::move(batch.values);
                    std::sort(ecdf_sorted.begin(), ecdf_sorted.end());
                }
                for (double xdb : grid) {
                    const double x = ss::db_to_linear(xdb);
                    double v;
                    if (c_mode == "analytic")
                        v = is_ds ? ss::cdf_out_ds(sel, x, opts) : ss::cdf_out_ss(sel, x, opts);
                    else
                        v = static_cast<double>(std::upper_bound(ecdf_sorted.begin(),
                                                                 ecdf_sorted.end(), x) -
                                                ecdf_sorted.begin()) /
                            static_cast<double>(ecdf_sorted.size());
                    cols[li].push_back(v);
                }
            } else {
                for (double gdb : grid) {
                    ss::SelectionParams sel{c_model.params_with_gbar(ss::db_to_linear(gdb)), L};
                    double v;
                    if (c_mode == "simulate") {
                        auto batch = ss::simulate_selection(sel, c_trials, seed, policy,
                                                            static_cast<std::uint32_t>(li),
                                                            threads);
                        double acc = 0;
                        for (double t : batch.values) acc += t;
                        v = acc / static_cast<double>(batch.values.size());
                    } else if (opts.method == ss::Method::quadrature) {
                        v = is_ds ? ss::asnr_ds_quadrature(sel, opts)
                                  : ss::asnr_ss_quadrature(sel, opts);
                    } else if (opts.method == ss::Method::auto_eval) {
                        const bool ok =
                            is_ds ? ss::ds_series_applicable(
                                        std::get<ss::DoubleShadowParams>(sel.base), L)
                                  : ss::ss_series_applicable(
                                        std::get<ss::SingleShadowParams>(sel.base), L);
                        v = ok ? (is_ds ? ss::asnr_ds(sel) : ss::asnr_ss(sel))
                               : (is_ds ? ss::asnr_ds_quadrature(sel, opts)
                                        : ss::asnr_ss_quadrature(sel, opts));
                    } else {
                        v = is_ds ? ss::asnr_ds(sel) : ss::asnr_ss(sel);
                    }
                    cols[li].push_back(ss::linear_to_db(v));
                }
            }
        }

        std::unique_ptr<std::ofstream> holder;
        auto& os = out_stream(c_out, holder);
        os.precision(12);
        const std::string vprefix = c_metric == "op" ? "op_L" : "asnr_db_L";
        if (c_out.format == "csv") {
            csv_header(os, cmdline.str(), c_model.to_json(), seed);
            os << xcol;
            for (int L : c_L) os << "," << vprefix << L;
            os << "\n";
            for (std::size_t i = 0; i < grid.size(); ++i) {
                os << grid[i];
                for (auto& col : cols) os << "," << col[i];
                os << "\n";
            }
        } else {
            nlohmann::json cols_j = nlohmann::json::array();
            cols_j.push_back(xcol);
            for (int L : c_L) cols_j.push_back(vprefix + std::to_string(L));
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                nlohmann::json row = nlohmann::json::array();
                row.push_back(grid[i]);
                for (auto& col : cols) row.push_back(col[i]);
                rows.push_back(row);
            }
            os << nlohmann::json{{"columns", cols_j},
                                 {"params", c_model.to_json()},
                                 {"rows", rows}}
                      .dump(2)
               << "\n";
        }
    });

    // -------------------------------------------------------------- fit ----
    auto* fit = app.add_subcommand("fit", "method-of-moments parameter fit");
    std::string f_input, f_model = "dig";
    OutputFlags f_out;
    fit->add_option("--input", f_input, "sample CSV (snr_linear column)")->required();
    fit->add_option("--model", f_model, "dig|sig")->check(CLI::IsMember({"dig", "sig"}));
    f_out.add_to(fit);
    fit->callback([&] {
        std::ifstream is(f_input);
        if (!is) throw ss::IoError("cannot open " + f_input);
        auto sample = ss::EmpiricalSample::from(ss::read_value_column(is));
        const auto tag = f_model == "dig" ? ss::ModelTag::dig : ss::ModelTag::sig;
        const auto fr = ss::fit_moments(sample, tag);

        nlohmann::json pj;
        if (fr.tag == ss::ModelTag::dig) {
            const auto& p = std::get<ss::DoubleShadowParams>(fr.params);
            pj = {{"m1", p.m1},         {"m2", p.m2},         {"omega", p.omega},
                  {"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"gamma_bar", p.gamma_bar}};
        } else {
            const auto& p = std::get<ss::SingleShadowParams>(fr.params);
            pj = {{"m1", p.m1},
                  {"m2", p.m2},
                  {"omega", p.omega},
                  {"alpha", p.alpha},
                  {"gamma_bar", p.gamma_bar}};
        }
        std::size_t h = 0;
        for (double v : sample.values)
            h = h * 1000003u + std::hash<double>{}(v);
        nlohmann::json j{{"model", f_model},
                         {"params", pj},
                         {"converged", fr.converged},
                         {"residuals", fr.residuals},
                         {"orders", fr.orders},
                         {"iterations", fr.iterations},
                         {"n", sample.values.size()},
                         {"sample_hash", h}};
        std::unique_ptr<std::ofstream> holder;
        out_stream(f_out, holder) << j.dump(2) << "\n";
    });

    // -------------------------------------------------------------- gof ----
    auto* gof = app.add_subcommand("gof", "goodness-of-fit table (K-L, K-S)");
    std::string g_input;
    std::vector<std::string> g_cands{"dig", "sig"};
    OutputFlags g_out;
    int g_bins = 100, g_segments = 1;
    double g_conf = 0.95;
    gof->add_option("--input", g_input, "sample CSV (snr_linear column)")->required();
    gof->add_option("--candidates", g_cands, "models to fit and rank")->delimiter(',');
    gof->add_option("--bins", g_bins, "K-L histogram bins");
    gof->add_option("--segments", g_segments, "K-S pass-rate segments");
    gof->add_option("--confidence", g_conf, "K-S confidence level");
    g_out.add_to(gof);
    gof->callback([&] {
        std::ifstream is(g_input);
        if (!is) throw ss::IoError("cannot open " + g_input);
        auto sample = ss::EmpiricalSample::from(ss::read_value_column(is));
        std::vector<ss::GofCandidate> cands;
        for (const auto& name : g_cands) {
            const auto tag = name == "dig" ? ss::ModelTag::dig : ss::ModelTag::sig;
            const auto fr = ss::fit_moments(sample, tag);
            cands.push_back(ss::make_candidate(name, fr.params));
        }
        const auto table = ss::gof_table(sample, cands, g_bins, g_segments, g_conf);
        std::unique_ptr<std::ofstream> holder;
        auto& os = out_stream(g_out, holder);
        if (g_out.format == "csv") {
            csv_header(os, cmdline.str(), nlohmann::json::object(), seed);
            os << "model,kl,ks,ks_pass_rate,ks_critical\n";
            for (const auto& [name, r] : table)
                os << name << "," << r.kl << "," << r.ks << "," << r.ks_rate << ","
                   << r.ks_critical << "\n";
        } else {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& [name, r] : table)
                rows.push_back({{"model", name},
                                {"kl", r.kl},
                                {"ks", r.ks},
                                {"ks_pass", r.ks_pass},
                                {"ks_pass_rate", r.ks_rate},
                                {"ks_critical", r.ks_critical},
                                {"bins", r.bins},
                                {"n", r.n}});
            os << rows.dump(2) << "\n";
        }
    });

    // ------------------------------------------------------------ trace ----
    auto* trace = app.add_subcommand("trace", "trace replay and synthesis");
    trace->require_subcommand(1);

    auto* replay_cmd = trace->add_subcommand("replay", "replay selection strategies");
    std::string t_input, t_policy = "shadow_window", t_summary, t_ecdf;
    int t_L = 3, t_window = 242, t_ct = 170;
    bool t_instant = false, t_no_split = false;
    replay_cmd->add_option("--input", t_input, "trace CSV")->required();
    replay_cmd->add_option("--L", t_L, "number of virtual UAVs");
    replay_cmd->add_option("--policy", t_policy, "shadow_window|coherence_time|per_sample")
        ->check(CLI::IsMember({"shadow_window", "coherence_time", "per_sample"}));
    replay_cmd->add_option("--window", t_window, "shadow window length, samples");
    replay_cmd->add_option("--ct", t_ct, "coherence-time cadence, samples");
    replay_cmd->add_flag("--instantaneous", t_instant,
                         "CT policy decides on the cadence-start sample");
    replay_cmd->add_flag("--no-split", t_no_split,
                         "input is already one virtual UAV (requires --L 1)");
    replay_cmd->add_option("--summary-out", t_summary, "ReplayResult summary JSON path");
    replay_cmd->add_option("--ecdf-out", t_ecdf, "ECDF comparison CSV path");
    replay_cmd->callback([&] {
        const auto t = ss::load_trace(t_input);
        std::vector<ss::PowerTrace> uavs =
            t_no_split ? std::vector<ss::PowerTrace>{t} : ss::split_virtual_uavs(t, t_L);
        ss::StrategyConfig cfg;
        cfg.L = static_cast<int>(uavs.size());
        cfg.window_samples = t_window;
        cfg.ct_samples = t_ct;
        cfg.instantaneous = t_instant;
        cfg.policy = t_policy == "shadow_window"
                         ? ss::ReplayPolicy::shadow_window
                         : (t_policy == "coherence_time" ? ss::ReplayPolicy::coherence_time
                                                         : ss::ReplayPolicy::per_sample);
        const auto r = ss::replay(uavs, cfg);
        const std::string summary = ss::replay_summary_json(r);
        if (t_summary.empty()) {
            std::cout << summary << "\n";
        } else {
            std::ofstream os(t_summary);
            if (!os) throw ss::IoError("cannot write " + t_summary);
            os << summary << "\n";
        }
        if (!t_ecdf.empty()) {
            std::ofstream os(t_ecdf);
            if (!os) throw ss::IoError("cannot write " + t_ecdf);
            // one column per strategy and per virtual UAV (identity replays)
            std::vector<ss::ReplayResult> results{r};
            std::vector<std::string> labels{t_policy};
            ss::StrategyConfig id;
            id.L = 1;
            for (std::size_t i = 0; i < uavs.size(); ++i) {
                results.push_back(ss::replay({uavs[i]}, id));
                labels.push_back("uav" + std::to_string(i + 1));
            }
            os << ss::ecdf_compare(results, labels);
        }
    });

    auto* synth_cmd = trace->add_subcommand("synth", "generate a synthetic DS trace");
    ModelFlags y_model;
    std::string y_out;
    std::size_t y_n = 100000, y_block = 242;
    double y_spacing = 0.0015, y_wavelength = 0.15;
    bool y_sidecar = false;
    y_model.add_to(synth_cmd, false);
    synth_cmd->add_option("--n", y_n, "trace length, samples");
    synth_cmd->add_option("--shadow-block", y_block, "shadowing redraw period, samples");
    synth_cmd->add_option("--spacing", y_spacing, "sample spacing, m");
    synth_cmd->add_option("--wavelength", y_wavelength, "carrier wavelength, m");
    synth_cmd->add_flag("--sidecar", y_sidecar, "write metadata to a JSON sidecar");
    synth_cmd->add_option("--out", y_out, "output trace CSV")->required();
    synth_cmd->callback([&] {
        const auto p =
            std::get<ss::DoubleShadowParams>(y_model.params_with_gbar(y_model.gamma_bar()));
        const auto t = ss::synth_trace(p, y_n, y_block, seed, 0, y_spacing, y_wavelength);
        ss::save_trace(t, y_out, y_sidecar);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ss::errc::usage);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ss::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ss::errc::generic);
    }
}
