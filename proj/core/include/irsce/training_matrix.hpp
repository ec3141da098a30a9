// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "irsce/rng.hpp"
#include "irsce/types.hpp"

namespace irsce {

enum class TrainingScheme { Dft, Hadamard, RandomPhase };

std::string to_string(TrainingScheme scheme);
TrainingScheme training_scheme_from_string(const std::string& name);

/// M×M unit-modulus phase training matrix; column i is the surface phase
/// vector applied while pilot symbol i is on the air.
struct TrainingMatrix {
    CMatrix entries;
    TrainingScheme scheme = TrainingScheme::Dft;
    std::optional<int> quant_bits;  ///< absent = continuous phase shifters

    int size() const { return static_cast<int>(entries.rows()); }
};

/// [Q]_{m,n} = exp(-j·2π·(m-1)(n-1)/M), 1-based indices. Columns are mutually
/// orthogonal with QᴴQ = M·I.
TrainingMatrix dft_matrix(int m);

/// Sylvester construction, entries ±1; requires M a power of two.
TrainingMatrix hadamard_matrix(int m);

/// Each entry exp(-jϑ) with ϑ drawn uniformly on [0, 2π).
TrainingMatrix random_phase_matrix(int m, RngStream& rng);

/// Snaps every entry's phase to the nearest of the L = 2^b offset levels
/// Φ = {π/L, 3π/L, …, (2L-1)π/L}, circular distance, exact midpoints
/// resolved toward the larger adjacent level. Modulus stays 1.
TrainingMatrix quantize(const TrainingMatrix& q, int bits);

/// tr{(QᵀQ*)⁻¹}, computed through an eigendecomposition of the Hermitian
/// Gram matrix. Equals 1 for any unit-modulus matrix with orthogonal
/// columns; larger values mean a worse-conditioned training design.
/// Throws SingularGramError when the Gram is singular to working precision.
double gram_trace_inv(const CMatrix& q);

/// Conditioning penalty of quantizing q to b bits:
/// gram_trace_inv(quantize(q, b)) / gram_trace_inv(q).
double loss_factor_exact(const TrainingMatrix& q, int bits);

/// Closed-form large-M approximation of the quantization penalty,
/// 3 - 2·sin(π/L)/(π/L) with L = 2^b. Decreases to 1 as b grows.
double loss_factor_approx(int bits);

}  // namespace irsce
