// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "irsce/system_config.hpp"
#include "irsce/training_matrix.hpp"
#include "irsce/types.hpp"

namespace irsce {

/// Empirical and analytic MSE components of one Monte Carlo run. All four
/// components share the 1/(4M) normalization, so the sums are directly
/// comparable across dimensions.
struct MseReport {
    double eps1 = 0.0;  ///< direct user 1
    double eps2 = 0.0;  ///< direct user 2
    double eps3 = 0.0;  ///< cascaded user 1
    double eps4 = 0.0;  ///< cascaded user 2
    double eps1_analytic = 0.0;
    double eps2_analytic = 0.0;
    double eps3_analytic = 0.0;
    double eps4_analytic = 0.0;
    double sum_empirical = 0.0;
    double sum_analytic = 0.0;
    long trials = 0;
    long excluded_trials = 0;
    SystemConfig config_echo;
};

/// (1/(4M)) · mean over trials of the squared Frobenius error.
double empirical_component(const std::vector<double>& squared_errors, int m);

/// Direct-channel LS MSE. As printed in the closed form this is
/// σ²/(16·P·M²); an independent re-derivation gives an extra factor K
/// (the error vector has K entries, each of variance σ²/(4·P·M²)·…).
/// Monte Carlo agrees with the K variant, so k_correction defaults to on
/// everywhere in the runner; the flag keeps both forms available.
double analytic_direct(double power, int m, double noise_power, int k, bool k_correction);

/// Cascaded-channel LS MSE σ²·K·tr{[(Q·diag(x))ᴴ(Q·diag(x))]⁻¹}/(16·P·M),
/// evaluated on M×M matrices only. For orthogonal Q and unit-modulus x the
/// trace is 1 and this reduces to K·σ²/(16·P·M).
/// Throws SingularGramError when the design Gram is singular.
double analytic_cascaded(const CMatrix& q, const CVector& x, double power, int k, int m,
                         double noise_power);

/// Best achievable sum over the four components with an orthogonal design:
/// Kσ²/(16·P1·M) + Kσ²/(16·P2·M) + σ²/(16·P1·M²) + σ²/(16·P2·M²).
/// Direct terms follow the printed closed form; pass k_correction to scale
/// them by K (see analytic_direct).
double sum_mse_min(double p_u1, double p_u2, int m, int k, double noise_power,
                   bool k_correction = false);

/// sum_mse_min with the two cascaded terms scaled by the quantization
/// penalty loss_factor_exact(scheme, bits); direct channels never touch the
/// surface, so their terms are unchanged. bits < 0 means unquantized (β=1).
double predicted_quantized_sum(const SystemConfig& config, TrainingScheme scheme, int bits,
                               bool k_correction = false);

}  // namespace irsce
