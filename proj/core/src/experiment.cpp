// SPDX-License-Identifier: Apache-2.0
#include "irsce/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "irsce/channel_model.hpp"
#include "irsce/errors.hpp"
#include "irsce/ls_estimator.hpp"
#include "irsce/mse_analysis.hpp"
#include "irsce/pilot_protocol.hpp"
#include "irsce/rng.hpp"

namespace irsce {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::uint64_t scenario_seed_id(Scenario s) {
    switch (s) {
        case Scenario::SnrSweep:
            return 1;
        case Scenario::BitsSweep:
            return 2;
        case Scenario::LossFactor:
            return 3;
        case Scenario::Custom:
            return 4;
    }
    throw std::logic_error("bad Scenario");
}

std::uint64_t scheme_seed_id(TrainingScheme s) {
    switch (s) {
        case TrainingScheme::Dft:
            return 1;
        case TrainingScheme::Hadamard:
            return 2;
        case TrainingScheme::RandomPhase:
            return 3;
    }
    throw std::logic_error("bad TrainingScheme");
}

// Stream purposes within one trial. Separate streams per purpose let tests
// replay e.g. identical noise against different channel draws.
enum : std::uint64_t { kPurposeChannels = 0, kPurposeDesign = 1, kPurposeNoise = 2, kPurposePilots = 3 };

RngStream trial_stream(const ExperimentSpec& spec, TrainingScheme scheme, int m, int bits,
                       double snr_db, long trial, std::uint64_t purpose) {
    // The path is built from the grid point's own parameters, not its
    // position in the sweep, so a single row can be reproduced in isolation.
    return RngStream::derive(spec.seed,
                             {scenario_seed_id(spec.scenario), scheme_seed_id(scheme),
                              static_cast<std::uint64_t>(m),
                              static_cast<std::uint64_t>(bits + 2),
                              std::bit_cast<std::uint64_t>(snr_db),
                              static_cast<std::uint64_t>(trial), purpose});
}

struct GridPointContext {
    SystemConfig config;
    TrainingScheme scheme;
    int bits = kInfiniteBits;
    double snr_db = 0.0;
    // Shared deterministic designs (unused for the random-phase scheme).
    TrainingMatrix design;      // as applied: quantized when bits >= 1
    TrainingMatrix design_ref;  // unquantized reference
};

double frob2(const CMatrix& a) { return a.squaredNorm(); }

/// One Monte Carlo trial. `analytic` receives the per-draw cascaded MSE
/// components for random designs (left untouched for deterministic ones).
TrialEnergies run_trial(const ExperimentSpec& spec, const GridPointContext& ctx, long trial,
                        std::array<double, 2>* analytic) {
    const int m = ctx.config.m;
    const double p1 = ctx.config.p_u1;
    const double p2 = ctx.config.p_u2;
    const double sigma2 = ctx.config.noise_power;

    RngStream ch_rng = trial_stream(spec, ctx.scheme, m, ctx.bits, ctx.snr_db, trial, kPurposeChannels);
    RngStream pilot_rng = trial_stream(spec, ctx.scheme, m, ctx.bits, ctx.snr_db, trial, kPurposePilots);
    RngStream noise_rng = trial_stream(spec, ctx.scheme, m, ctx.bits, ctx.snr_db, trial, kPurposeNoise);

    const ChannelSet channels = draw_channels(ctx.config, ch_rng);
    const PilotSequences pilots = default_pilots(m, pilot_rng);

    const TrainingMatrix* design = &ctx.design;
    const TrainingMatrix* design_ref = &ctx.design_ref;
    TrainingMatrix drawn, drawn_quant;
    if (ctx.scheme == TrainingScheme::RandomPhase) {
        RngStream q_rng = trial_stream(spec, ctx.scheme, m, ctx.bits, ctx.snr_db, trial, kPurposeDesign);
        drawn = random_phase_matrix(m, q_rng);
        design_ref = &drawn;
        if (ctx.bits >= 1) {
            drawn_quant = quantize(drawn, ctx.bits);
            design = &drawn_quant;
        } else {
            design = &drawn;
        }
    }

    TrialEnergies out;
    try {
        if (analytic != nullptr) {
            // Evaluated before estimation: a design whose Gram is singular to
            // working precision is excluded outright, matching how the random
            // benchmark reports its exclusion rate.
            (*analytic)[0] = analytic_cascaded(design->entries, pilots.x_u1, p1, ctx.config.k, m, sigma2);
            (*analytic)[1] = analytic_cascaded(design->entries, pilots.x_u2, p2, ctx.config.k, m, sigma2);
        }

        RngStream noise_rng_ref = noise_rng;  // identical noise for the reference run
        const PilotFrame frame = synthesize_frame(channels, *design, pilots, p1, p2, sigma2, noise_rng);
        const EstimateSet est = estimate_all(frame, *design, pilots, p1, p2);
        out.e1 = frob2(est.h_u1r_hat - channels.h_u1r);
        out.e2 = frob2(est.h_u2r_hat - channels.h_u2r);
        out.e3 = frob2(est.h_u1ir_hat - channels.h_u1ir);
        out.e4 = frob2(est.h_u2ir_hat - channels.h_u2ir);

        if (ctx.bits >= 1) {
            const PilotFrame frame_ref =
                synthesize_frame(channels, *design_ref, pilots, p1, p2, sigma2, noise_rng_ref);
            const EstimateSet est_ref = estimate_all(frame_ref, *design_ref, pilots, p1, p2);
            out.e3_ref = frob2(est_ref.h_u1ir_hat - channels.h_u1ir);
            out.e4_ref = frob2(est_ref.h_u2ir_hat - channels.h_u2ir);
        } else {
            out.e3_ref = out.e3;
            out.e4_ref = out.e4;
        }
    } catch (const SingularGramError&) {
        out.excluded = true;
    } catch (const SingularDesignError&) {
        out.excluded = true;
    }
    return out;
}

}  // namespace

std::string to_string(Scenario scenario) {
    switch (scenario) {
        case Scenario::SnrSweep:
            return "snr_sweep";
        case Scenario::BitsSweep:
            return "bits_sweep";
        case Scenario::LossFactor:
            return "loss_factor";
        case Scenario::Custom:
            return "custom";
    }
    throw std::logic_error("bad Scenario");
}

void ExperimentSpec::validate() const {
    if (schemes.empty()) throw std::invalid_argument("experiment: empty scheme grid");
    if (m_grid.empty()) throw std::invalid_argument("experiment: empty m grid");
    if (bits_grid.empty()) throw std::invalid_argument("experiment: empty bits grid");
    if (snr_grid_db.empty()) throw std::invalid_argument("experiment: empty snr grid");
    if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (k < 1) throw std::invalid_argument("experiment: k must be >= 1");
    for (int m : m_grid) {
        if (m < 1) throw std::invalid_argument("experiment: m must be >= 1");
    }
    for (int b : bits_grid) {
        if (b != kInfiniteBits && b < 1) {
            throw std::invalid_argument("experiment: bits entries must be >= 1 or inf");
        }
    }
    for (double s : snr_grid_db) {
        if (!std::isfinite(s)) throw std::invalid_argument("experiment: non-finite snr");
    }
}

ExperimentSpec default_spec(Scenario scenario) {
    ExperimentSpec spec;
    spec.scenario = scenario;
    switch (scenario) {
        case Scenario::SnrSweep:
            spec.schemes = {TrainingScheme::Dft, TrainingScheme::Hadamard,
                            TrainingScheme::RandomPhase};
            spec.m_grid = {128};
            spec.bits_grid = {kInfiniteBits};
            spec.snr_grid_db = {-10, -5, 0, 5, 10, 15, 20, 25, 30};
            break;
        case Scenario::BitsSweep:
            spec.schemes = {TrainingScheme::Dft, TrainingScheme::Hadamard};
            spec.m_grid = {128};
            spec.bits_grid = {1, 2, 3, 4, 5, 6, 7, kInfiniteBits};
            spec.snr_grid_db = {0, 15, 30};
            break;
        case Scenario::LossFactor:
            spec.schemes = {TrainingScheme::Dft};
            spec.m_grid = {16, 64, 128};
            spec.bits_grid = {1, 2, 3, 4, 5, 6, 7};
            spec.snr_grid_db = {10};
            break;
        case Scenario::Custom:
            break;
    }
    return spec;
}

int worker_count() {
    if (const char* env = std::getenv("IRSCE_WORKERS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n >= 1 && n <= 4096) {
            return static_cast<int>(n);
        }
        std::cerr << "warning: ignoring invalid IRSCE_WORKERS='" << env << "'\n";
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

GridPointResult run_grid_point(const ExperimentSpec& spec, TrainingScheme scheme, int m,
                               int bits, double snr_db) {
    GridPointContext ctx;
    ctx.config = spec.base;
    ctx.config.m = m;
    ctx.config.n_p = m;
    ctx.config.k = spec.k;
    ctx.config.seed = spec.seed;
    const double power = snr_to_power(snr_db, ctx.config.noise_power);
    ctx.config.p_u1 = power;
    ctx.config.p_u2 = power;
    ctx.config.validate();
    ctx.scheme = scheme;
    ctx.bits = bits;
    ctx.snr_db = snr_db;

    SweepRow row;
    row.scenario = to_string(spec.scenario);
    row.scheme = to_string(scheme);
    row.m = m;
    row.k = spec.k;
    row.snr_db = snr_db;
    row.bits = bits;
    row.trials = spec.trials;
    row.seed = spec.seed;
    row.k_correction = spec.k_correction;
    row.beta_approx = bits >= 1 ? loss_factor_approx(bits) : 1.0;

    const bool random_design = scheme == TrainingScheme::RandomPhase;
    if (!random_design) {
        ctx.design_ref = scheme == TrainingScheme::Dft ? dft_matrix(m) : hadamard_matrix(m);
        ctx.design = bits >= 1 ? quantize(ctx.design_ref, bits) : ctx.design_ref;
        if (bits >= 1) {
            try {
                row.beta_exact = loss_factor_exact(ctx.design_ref, bits);
            } catch (const SingularGramError&) {
                row.beta_exact = kNan;
            }
        }
    }

    // Per-trial slots: every trial writes its own entry, and the reduction
    // below walks them in trial order, so results are independent of how the
    // trials were distributed over threads.
    std::vector<TrialEnergies> slots(static_cast<std::size_t>(spec.trials));
    std::vector<std::array<double, 2>> analytic_slots;
    if (random_design) {
        analytic_slots.assign(static_cast<std::size_t>(spec.trials), {kNan, kNan});
    }

    const int workers = static_cast<int>(std::min<long>(worker_count(), spec.trials));
    std::atomic<long> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto work = [&]() {
        try {
            for (;;) {
                const long t = next.fetch_add(1, std::memory_order_relaxed);
                if (t >= spec.trials) break;
                std::array<double, 2>* analytic =
                    random_design ? &analytic_slots[static_cast<std::size_t>(t)] : nullptr;
                slots[static_cast<std::size_t>(t)] = run_trial(spec, ctx, t, analytic);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0, s3_ref = 0.0, s4_ref = 0.0;
    double a_casc = 0.0;
    long included = 0;
    for (long t = 0; t < spec.trials; ++t) {
        const TrialEnergies& e = slots[static_cast<std::size_t>(t)];
        if (e.excluded) continue;
        ++included;
        s1 += e.e1;
        s2 += e.e2;
        s3 += e.e3;
        s4 += e.e4;
        s3_ref += e.e3_ref;
        s4_ref += e.e4_ref;
        if (random_design) {
            const auto& a = analytic_slots[static_cast<std::size_t>(t)];
            a_casc += a[0] + a[1];
        }
    }
    row.excluded_trials = spec.trials - included;

    const double direct_analytic =
        analytic_direct(power, m, ctx.config.noise_power, spec.k, spec.k_correction) * 2.0;
    if (included == 0) {
        row.eps1_empirical = row.eps2_empirical = row.eps3_empirical = row.eps4_empirical = kNan;
        row.sum_mse_empirical = kNan;
        row.beta_sim = kNan;
    } else {
        const double norm = 1.0 / (4.0 * static_cast<double>(m) * static_cast<double>(included));
        row.eps1_empirical = s1 * norm;
        row.eps2_empirical = s2 * norm;
        row.eps3_empirical = s3 * norm;
        row.eps4_empirical = s4 * norm;
        row.sum_mse_empirical =
            row.eps1_empirical + row.eps2_empirical + row.eps3_empirical + row.eps4_empirical;
        row.beta_sim = bits >= 1 ? (s3 + s4) / (s3_ref + s4_ref) : 1.0;
    }
    if (random_design) {
        row.beta_exact = kNan;  // no single design to report
        row.sum_mse_analytic =
            included == 0 ? kNan : a_casc / static_cast<double>(included) + direct_analytic;
    } else {
        const double cascaded_min = 2.0 * static_cast<double>(spec.k) * ctx.config.noise_power /
                                    (16.0 * power * static_cast<double>(m));
        row.sum_mse_analytic = row.beta_exact * cascaded_min + direct_analytic;
    }

    GridPointResult result;
    result.row = std::move(row);
    result.trials = std::move(slots);
    return result;
}

namespace {

std::vector<SweepRow> run_sweep(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<SweepRow> rows;
    for (TrainingScheme scheme : spec.schemes) {
        for (int m : spec.m_grid) {
            for (int bits : spec.bits_grid) {
                for (double snr : spec.snr_grid_db) {
                    rows.push_back(run_grid_point(spec, scheme, m, bits, snr).row);
                }
            }
        }
    }
    return rows;
}

}  // namespace

std::vector<SweepRow> run_snr_sweep(const ExperimentSpec& spec) { return run_sweep(spec); }

std::vector<SweepRow> run_bits_sweep(const ExperimentSpec& spec) { return run_sweep(spec); }

std::vector<SweepRow> run_loss_factor(const ExperimentSpec& spec) {
    ExperimentSpec fixed = spec;
    fixed.schemes = {TrainingScheme::Dft};
    return run_sweep(fixed);
}

namespace {

std::string format_double(double v) {
    if (!std::isfinite(v)) return "singular";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

}  // namespace

std::string csv_header() {
    return "scenario,scheme,m,k,snr_db,bits,trials,sum_mse_empirical,sum_mse_analytic,"
           "eps1_empirical,eps2_empirical,eps3_empirical,eps4_empirical,beta_exact,"
           "beta_approx,excluded_trials,seed,beta_sim,k_correction";
}

std::string csv_row(const SweepRow& row) {
    std::string out;
    out += row.scenario;
    out += ',';
    out += row.scheme;
    out += ',';
    out += std::to_string(row.m);
    out += ',';
    out += std::to_string(row.k);
    out += ',';
    out += format_double(row.snr_db);
    out += ',';
    out += row.bits == kInfiniteBits ? std::string("inf") : std::to_string(row.bits);
    out += ',';
    out += std::to_string(row.trials);
    out += ',';
    out += format_double(row.sum_mse_empirical);
    out += ',';
    out += format_double(row.sum_mse_analytic);
    out += ',';
    out += format_double(row.eps1_empirical);
    out += ',';
    out += format_double(row.eps2_empirical);
    out += ',';
    out += format_double(row.eps3_empirical);
    out += ',';
    out += format_double(row.eps4_empirical);
    out += ',';
    out += format_double(row.beta_exact);
    out += ',';
    out += format_double(row.beta_approx);
    out += ',';
    out += std::to_string(row.excluded_trials);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += format_double(row.beta_sim);
    out += ',';
    out += row.k_correction ? "on" : "off";
    return out;
}

void write_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    if (path.empty()) throw std::invalid_argument("write_csv: empty output path");
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_csv: cannot open " + tmp.string());
        out << csv_header() << '\n';
        for (const SweepRow& row : rows) out << csv_row(row) << '\n';
        out.flush();
        if (!out) throw std::runtime_error("write_csv: short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, target);  // atomic publish
}

int run(const ExperimentSpec& spec) {
    try {
        spec.validate();
        if (spec.output_path.empty()) {
            throw std::invalid_argument("experiment: no output path given");
        }
        std::vector<SweepRow> rows;
        switch (spec.scenario) {
            case Scenario::SnrSweep:
                rows = run_snr_sweep(spec);
                break;
            case Scenario::BitsSweep:
                rows = run_bits_sweep(spec);
                break;
            case Scenario::LossFactor:
                rows = run_loss_factor(spec);
                break;
            case Scenario::Custom:
                rows = run_sweep(spec);
                break;
        }
        write_csv(spec.output_path, rows);
        for (const SweepRow& row : rows) {
            std::cout << row.scheme << " m=" << row.m << " k=" << row.k << " snr=" << row.snr_db
                      << " bits="
                      << (row.bits == kInfiniteBits ? std::string("inf") : std::to_string(row.bits))
                      << " sum_emp=" << format_double(row.sum_mse_empirical)
                      << " sum_ana=" << format_double(row.sum_mse_analytic)
                      << " excluded=" << row.excluded_trials << '\n';
        }
        std::cout << rows.size() << " rows -> " << spec.output_path << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& token) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("grid: not a number: '" + token + "'");
    }
    if (pos != token.size()) {
        throw std::invalid_argument("grid: trailing characters in '" + token + "'");
    }
    return v;
}

// Expands one token: either a scalar or an inclusive range "a:b[:step]".
void expand_token(const std::string& token, std::vector<double>& out) {
    const std::vector<std::string> parts = split(token, ':');
    if (parts.size() == 1) {
        out.push_back(parse_number(parts[0]));
        return;
    }
    if (parts.size() > 3) {
        throw std::invalid_argument("grid: malformed range '" + token + "'");
    }
    const double a = parse_number(parts[0]);
    const double b = parse_number(parts[1]);
    const double step = parts.size() == 3 ? parse_number(parts[2]) : 1.0;
    if (!(step > 0.0) || b < a) {
        throw std::invalid_argument("grid: range '" + token + "' needs a <= b and step > 0");
    }
    // Half-step slack so that e.g. -10:30:5 includes 30 despite rounding.
    for (double v = a; v <= b + step * 0.5; v += step) out.push_back(v);
}

}  // namespace

std::vector<double> parse_double_grid(const std::string& text) {
    std::vector<double> out;
    for (const std::string& token : split(text, ',')) {
        if (token.empty()) throw std::invalid_argument("grid: empty entry in '" + text + "'");
        expand_token(token, out);
    }
    return out;
}

std::vector<int> parse_int_grid(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_double_grid(text)) {
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-9) {
            throw std::invalid_argument("grid: expected integer entries in '" + text + "'");
        }
        out.push_back(static_cast<int>(r));
    }
    return out;
}

std::vector<int> parse_bits_grid(const std::string& text) {
    std::vector<int> out;
    for (const std::string& token : split(text, ',')) {
        if (token == "inf") {
            out.push_back(kInfiniteBits);
            continue;
        }
        if (token.empty()) throw std::invalid_argument("grid: empty entry in '" + text + "'");
        std::vector<double> expanded;
        expand_token(token, expanded);
        for (double v : expanded) {
            const double r = std::round(v);
            if (std::abs(v - r) > 1e-9 || r < 1) {
                throw std::invalid_argument("bits grid: entries must be integers >= 1 or inf");
            }
            out.push_back(static_cast<int>(r));
        }
    }
    return out;
}

std::vector<TrainingScheme> parse_schemes(const std::string& text) {
    std::vector<TrainingScheme> out;
    for (const std::string& token : split(text, ',')) {
        out.push_back(training_scheme_from_string(token));
    }
    return out;
}

}  // namespace irsce
