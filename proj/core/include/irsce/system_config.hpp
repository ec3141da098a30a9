// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace irsce {

/// Planar node positions in meters.
struct NodeGeometry {
    Eigen::Vector2d u1{0.0, 0.0};
    Eigen::Vector2d u2{100.0, 0.0};
    Eigen::Vector2d relay{0.0, 50.0};
    Eigen::Vector2d irs{10.0, 50.0};
};

/// Log-distance path loss: PL_dB(d) = ref_loss_db + 10·γ·log10(d).
struct PathLossModel {
    double ref_loss_db = 30.0;  // loss at the 1 m reference distance
    double exp_direct = 3.5;    // User → Relay
    double exp_user_irs = 2.4;  // User → IRS
    double exp_irs_relay = 2.2; // IRS → Relay
};

/// Distances (meters) of the five physical links.
struct LinkDistances {
    double u1_relay;
    double u2_relay;
    double u1_irs;
    double u2_irs;
    double irs_relay;
};

/// Linear power attenuation per link.
struct LinkAttenuations {
    double u1_relay;
    double u2_relay;
    double u1_irs;
    double u2_irs;
    double irs_relay;
};

/**
 * Full scenario description. All powers are linear milliwatts; dB enters
 * only at I/O boundaries (config file, CLI, SNR definitions).
 *
 * Immutable by convention after validate(); safe to share across workers.
 */
struct SystemConfig {
    int m = 128;                  // IRS elements
    int k = 16;                   // relay antennas
    int n_p = 128;                // pilot sequence length, must equal m
    double p_u1 = 1e-7;           // User1 transmit power, mW
    double p_u2 = 1e-7;           // User2 transmit power, mW
    double noise_power = 1e-8;    // σ², mW  (−80 dBm)
    NodeGeometry geometry;
    PathLossModel path_loss;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

double path_loss_linear(double distance_m, double exponent, double ref_loss_db);
double snr_to_power(double snr_db, double noise_power);
LinkDistances link_distances(const NodeGeometry& geometry);

/// Per-hop linear attenuations for the five links of a validated config.
LinkAttenuations link_attenuations(const SystemConfig& config);

/// Parse the flat `key = value` config file ([system], [geometry],
/// [path_loss] sections). Unknown keys are an error.
SystemConfig load_config_file(const std::string& path);

}  // namespace irsce
