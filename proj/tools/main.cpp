// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo sweep runner: snr-sweep (fig3), quantization-bits sweep (fig4),
// quantization-loss sweep (fig5) and free-form custom sweeps, written as CSV.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "irsce/experiment.hpp"
#include "irsce/system_config.hpp"

namespace {

struct CliOptions {
    std::string m_grid;
    std::string snr_grid;
    std::string bits_grid;
    std::string schemes;
    std::string out;
    std::string config_path;
    std::string k_correction;
    int k = 0;
    long trials = 0;
    std::uint64_t seed = 0;
};

void add_shared_options(CLI::App* sub, CliOptions& opt) {
    sub->add_option("--m", opt.m_grid, "surface element grid, e.g. 128 or 16,64,128");
    sub->add_option("--k", opt.k, "relay antenna count");
    sub->add_option("--trials", opt.trials, "Monte Carlo trials per grid point");
    sub->add_option("--seed", opt.seed, "master seed (64-bit)");
    sub->add_option("--out", opt.out, "output CSV path");
    sub->add_option("--config", opt.config_path, "configuration file (sectioned key = value)")
        ->check(CLI::ExistingFile);
    sub->add_option("--snr", opt.snr_grid, "SNR grid in dB: a:b:step or comma list");
    sub->add_option("--bits", opt.bits_grid, "phase-shifter bits grid; 'inf' = continuous");
    sub->add_option("--schemes", opt.schemes, "training designs: subset of dft,hadamard,rpm");
    sub->add_option("--k-correction", opt.k_correction,
                    "scale analytic direct-channel terms by K: on|off (default on)")
        ->check(CLI::IsMember({"on", "off"}));
}

irsce::ExperimentSpec build_spec(irsce::Scenario scenario, const CLI::App* sub,
                                 const CliOptions& opt) {
    irsce::ExperimentSpec spec = irsce::default_spec(scenario);

    if (sub->count("--config") > 0) {
        const irsce::SystemConfig cfg = irsce::load_config_file(opt.config_path);
        spec.base = cfg;
        spec.k = cfg.k;
        spec.m_grid = {cfg.m};
        spec.seed = cfg.seed;
    }
    if (sub->count("--m") > 0) spec.m_grid = irsce::parse_int_grid(opt.m_grid);
    if (sub->count("--k") > 0) spec.k = opt.k;
    if (sub->count("--trials") > 0) spec.trials = opt.trials;
    if (sub->count("--seed") > 0) spec.seed = opt.seed;
    if (sub->count("--snr") > 0) spec.snr_grid_db = irsce::parse_double_grid(opt.snr_grid);
    if (sub->count("--bits") > 0) spec.bits_grid = irsce::parse_bits_grid(opt.bits_grid);
    if (sub->count("--schemes") > 0) spec.schemes = irsce::parse_schemes(opt.schemes);
    if (sub->count("--k-correction") > 0) spec.k_correction = opt.k_correction == "on";
    spec.output_path = sub->count("--out") > 0 ? opt.out : irsce::to_string(scenario) + ".csv";
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IRS-aided two-way relay channel estimation sweeps"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* fig3 = app.add_subcommand(
        "fig3", "Sum-MSE vs SNR (defaults: M=128, K=16, dft/hadamard/rpm, -10..30 dB)");
    CLI::App* fig4 = app.add_subcommand(
        "fig4", "Sum-MSE vs quantization bits (defaults: M=128, K=16, b=1..7+inf, 0/15/30 dB)");
    CLI::App* fig5 = app.add_subcommand(
        "fig5", "quantization loss factor vs bits (defaults: dft, M=16/64/128, b=1..7)");
    CLI::App* custom = app.add_subcommand("custom", "free-form sweep over all grids");
    for (CLI::App* sub : {fig3, fig4, fig5, custom}) add_shared_options(sub, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        irsce::Scenario scenario = irsce::Scenario::Custom;
        const CLI::App* sub = custom;
        if (fig3->parsed()) {
            scenario = irsce::Scenario::SnrSweep;
            sub = fig3;
        } else if (fig4->parsed()) {
            scenario = irsce::Scenario::BitsSweep;
            sub = fig4;
        } else if (fig5->parsed()) {
            scenario = irsce::Scenario::LossFactor;
            sub = fig5;
        }
        return irsce::run(build_spec(scenario, sub, opt));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
