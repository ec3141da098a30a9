// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irsce/system_config.hpp"
#include "irsce/training_matrix.hpp"

namespace irsce {

/// Sentinel for "no quantization" in bits grids and SweepRow.bits.
inline constexpr int kInfiniteBits = -1;

enum class Scenario { SnrSweep, BitsSweep, LossFactor, Custom };

std::string to_string(Scenario scenario);

/// One Monte Carlo sweep: the cross product of schemes × m_grid × bits_grid
/// × snr_grid_db, each point run for `trials` trials. Both users transmit at
/// the power implied by the grid SNR over base.noise_power.
struct ExperimentSpec {
    Scenario scenario = Scenario::Custom;
    std::vector<TrainingScheme> schemes{TrainingScheme::Dft};
    std::vector<int> m_grid{128};
    std::vector<int> bits_grid{kInfiniteBits};
    std::vector<double> snr_grid_db{10.0};
    int k = 16;
    long trials = 500;
    std::uint64_t seed = 1;
    std::string output_path;
    bool k_correction = true;
    SystemConfig base;  ///< geometry, path loss and noise floor template

    void validate() const;
};

/// Presets matching the three stock experiments; `custom` starts from the
/// struct defaults above.
ExperimentSpec default_spec(Scenario scenario);

/// One CSV row. Non-finite values serialize as "singular" (e.g. the analytic
/// loss of a quantized design whose Gram is numerically singular).
struct SweepRow {
    std::string scenario;
    std::string scheme;
    int m = 0;
    int k = 0;
    double snr_db = 0.0;
    int bits = kInfiniteBits;
    long trials = 0;
    double sum_mse_empirical = 0.0;
    double sum_mse_analytic = 0.0;
    double eps1_empirical = 0.0;
    double eps2_empirical = 0.0;
    double eps3_empirical = 0.0;
    double eps4_empirical = 0.0;
    double beta_exact = 1.0;
    double beta_approx = 1.0;
    long excluded_trials = 0;
    std::uint64_t seed = 0;
    double beta_sim = 1.0;  ///< empirical quantized/unquantized cascaded-MSE ratio
    bool k_correction = true;
};

/// Per-trial error energies ‖·‖²_F of the four estimates, before the
/// 1/(4M·trials) normalization. e3_ref/e4_ref hold the unquantized-design
/// energies from the same channel/noise/pilot draws (the beta_sim
/// denominator); they equal e3/e4 when the row is unquantized.
struct TrialEnergies {
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    double e4 = 0.0;
    double e3_ref = 0.0;
    double e4_ref = 0.0;
    bool excluded = false;
};

struct GridPointResult {
    SweepRow row;
    std::vector<TrialEnergies> trials;
};

/// Runs one grid point: `spec.trials` independent trials on derived rng
/// streams, executed on worker_count() threads. Per-trial results land in
/// preassigned slots and are reduced in trial order, so the output does not
/// depend on the worker count.
GridPointResult run_grid_point(const ExperimentSpec& spec, TrainingScheme scheme, int m,
                               int bits, double snr_db);

std::vector<SweepRow> run_snr_sweep(const ExperimentSpec& spec);
std::vector<SweepRow> run_bits_sweep(const ExperimentSpec& spec);
/// Quantization-loss sweep over (m, bits); always uses the DFT design.
std::vector<SweepRow> run_loss_factor(const ExperimentSpec& spec);

/// Dispatches on spec.scenario, writes the CSV atomically (temp file +
/// rename) and prints one summary line per row. Returns a process exit
/// status: 0 on success, nonzero on validation or I/O failure.
int run(const ExperimentSpec& spec);

std::string csv_header();
std::string csv_row(const SweepRow& row);
void write_csv(const std::string& path, const std::vector<SweepRow>& rows);

/// Threads per grid point: the IRSCE_WORKERS environment variable if set to
/// a positive integer, otherwise std::thread::hardware_concurrency().
int worker_count();

/// Grid syntax: "a:b:step" (inclusive range) or a comma-separated list.
std::vector<double> parse_double_grid(const std::string& text);
std::vector<int> parse_int_grid(const std::string& text);
/// Same as parse_int_grid plus the literal "inf" for unquantized entries.
std::vector<int> parse_bits_grid(const std::string& text);
/// Comma-separated subset of {dft, hadamard, rpm}.
std::vector<TrainingScheme> parse_schemes(const std::string& text);

}  // namespace irsce
