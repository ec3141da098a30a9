// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "irsce/channel_model.hpp"
#include "irsce/rng.hpp"
#include "irsce/training_matrix.hpp"
#include "irsce/types.hpp"

namespace irsce {

/// Unit-modulus pilot symbols for the two users, one symbol per surface
/// configuration (length N_P = M).
struct PilotSequences {
    CVector x_u1;
    CVector x_u2;
};

enum class PilotMode { RandomPhase, AllOnes };

PilotSequences default_pilots(int n_p, RngStream& rng,
                              PilotMode mode = PilotMode::RandomPhase);

/// Per-period transmit signs. Period p multiplies user u's pilots by
/// s_u(p) and the surface phases by s_q(p). The fixed schedule
///   s_u1 = (+,+,+,+), s_u2 = (+,-,+,-), s_q = (+,+,-,-)
/// makes the four ±1 combinations of (user sign, surface sign) each appear
/// exactly once, which is what lets combine() separate the four channels.
struct SignSchedule {
    std::array<double, 4> s_u1{+1.0, +1.0, +1.0, +1.0};
    std::array<double, 4> s_u2{+1.0, -1.0, +1.0, -1.0};
    std::array<double, 4> s_q{+1.0, +1.0, -1.0, -1.0};
};

/// Received K×N_P blocks for the four pilot periods of one training frame.
/// The drawn noise blocks are retained so white-box tests can check the
/// combined-noise statistics; production code only reads y.
struct PilotFrame {
    std::array<CMatrix, 4> y;
    std::array<CMatrix, 4> noise;
};

/// Four decoupled observations, one per channel:
///   yt[0] = 4·√P1·h_u1r·x1ᵀ + noise     yt[2] = 4·√P1·H_u1ir·Q·X1 + noise
///   yt[1] = 4·√P2·h_u2r·x2ᵀ + noise     yt[3] = 4·√P2·H_u2ir·Q·X2 + noise
struct CombinedObservations {
    std::array<CMatrix, 4> yt;
};

/// Synthesizes the four received blocks: period p is
///   s_u1(p)·s_q(p)·√P1·H_u1ir·Q·X1 + s_u1(p)·√P1·h_u1r·x1ᵀ
/// + s_u2(p)·s_q(p)·√P2·H_u2ir·Q·X2 + s_u2(p)·√P2·h_u2r·x2ᵀ + W_p,
/// with X_u = diag(x_u) and W_p iid CN(0, σ²). σ² = 0 gives the exact
/// deterministic parts.
PilotFrame synthesize_frame(const ChannelSet& channels, const TrainingMatrix& q,
                            const PilotSequences& pilots, double p_u1, double p_u2,
                            double noise_power, RngStream& rng);

/// Applies the four ±1 period combinations (++++, +-+-, ++--, +--+).
/// Each output block contains exactly one channel term (scaled by 4) plus
/// combined noise of per-entry variance 4σ².
CombinedObservations combine(const PilotFrame& frame);

}  // namespace irsce
