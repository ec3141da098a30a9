// SPDX-License-Identifier: Apache-2.0
#include "irsce/pilot_protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace irsce {

PilotSequences default_pilots(int n_p, RngStream& rng, PilotMode mode) {
    if (n_p < 1) throw std::invalid_argument("default_pilots: n_p must be >= 1");
    PilotSequences p;
    p.x_u1.resize(n_p);
    p.x_u2.resize(n_p);
    if (mode == PilotMode::AllOnes) {
        p.x_u1.setOnes();
        p.x_u2.setOnes();
        return p;
    }
    for (int i = 0; i < n_p; ++i) p.x_u1(i) = std::polar(1.0, rng.phase());
    for (int i = 0; i < n_p; ++i) p.x_u2(i) = std::polar(1.0, rng.phase());
    return p;
}

PilotFrame synthesize_frame(const ChannelSet& channels, const TrainingMatrix& q,
                            const PilotSequences& pilots, double p_u1, double p_u2,
                            double noise_power, RngStream& rng) {
    const Eigen::Index k = channels.h_ir.rows();
    const Eigen::Index m = channels.h_ir.cols();
    const Eigen::Index n_p = pilots.x_u1.size();
    if (q.entries.rows() != m || q.entries.cols() != n_p || pilots.x_u2.size() != n_p ||
        channels.h_u1r.size() != k || channels.h_u2r.size() != k ||
        channels.h_u1ir.rows() != k || channels.h_u2ir.rows() != k ||
        channels.h_u1ir.cols() != m || channels.h_u2ir.cols() != m) {
        throw std::invalid_argument("synthesize_frame: dimension mismatch");
    }
    if (!(p_u1 > 0.0) || !(p_u2 > 0.0) || noise_power < 0.0) {
        throw std::invalid_argument("synthesize_frame: powers must be positive, noise >= 0");
    }

    const double a1 = std::sqrt(p_u1);
    const double a2 = std::sqrt(p_u2);
    // The four signal terms are period-independent; only their signs change.
    const CMatrix casc1 = a1 * channels.h_u1ir * q.entries * pilots.x_u1.asDiagonal();
    const CMatrix casc2 = a2 * channels.h_u2ir * q.entries * pilots.x_u2.asDiagonal();
    const CMatrix dir1 = a1 * channels.h_u1r * pilots.x_u1.transpose();
    const CMatrix dir2 = a2 * channels.h_u2r * pilots.x_u2.transpose();

    const SignSchedule signs;
    PilotFrame frame;
    for (int p = 0; p < 4; ++p) {
        CMatrix w(k, n_p);
        for (Eigen::Index r = 0; r < k; ++r) {
            for (Eigen::Index c = 0; c < n_p; ++c) {
                w(r, c) = rng.complex_normal(noise_power);
            }
        }
        frame.y[p] = signs.s_u1[p] * signs.s_q[p] * casc1 + signs.s_u1[p] * dir1 +
                     signs.s_u2[p] * signs.s_q[p] * casc2 + signs.s_u2[p] * dir2 + w;
        frame.noise[p] = std::move(w);
    }
    return frame;
}

CombinedObservations combine(const PilotFrame& frame) {
    for (int p = 1; p < 4; ++p) {
        if (frame.y[p].rows() != frame.y[0].rows() || frame.y[p].cols() != frame.y[0].cols()) {
            throw std::invalid_argument("combine: period blocks differ in shape");
        }
    }
    CombinedObservations obs;
    obs.yt[0] = frame.y[0] + frame.y[1] + frame.y[2] + frame.y[3];
    obs.yt[1] = frame.y[0] - frame.y[1] + frame.y[2] - frame.y[3];
    obs.yt[2] = frame.y[0] + frame.y[1] - frame.y[2] - frame.y[3];
    obs.yt[3] = frame.y[0] - frame.y[1] - frame.y[2] + frame.y[3];
    return obs;
}

}  // namespace irsce
