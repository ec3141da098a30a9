// SPDX-License-Identifier: Apache-2.0
#include "irsce/channel_model.hpp"

#include <stdexcept>

namespace irsce {

namespace {

CMatrix draw_matrix(Eigen::Index rows, Eigen::Index cols, double variance, RngStream& rng) {
    CMatrix out(rows, cols);
    // Row-major fill order is part of the determinism contract: a fixed seed
    // must reproduce the same matrix on any platform.
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            out(r, c) = rng.complex_normal(variance);
        }
    }
    return out;
}

CVector draw_vector(Eigen::Index n, double variance, RngStream& rng) {
    CVector out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out(i) = rng.complex_normal(variance);
    }
    return out;
}

}  // namespace

CMatrix cascade(const CMatrix& h_ir, const CVector& h_ui) {
    if (h_ir.cols() != h_ui.size()) {
        throw std::invalid_argument("cascade: h_ir has " + std::to_string(h_ir.cols()) +
                                    " columns but h_ui has " + std::to_string(h_ui.size()) +
                                    " entries");
    }
    return h_ir * h_ui.asDiagonal();
}

ChannelSet draw_channels(const SystemConfig& config, RngStream& rng) {
    const LinkAttenuations att = link_attenuations(config);
    const Eigen::Index m = config.m;
    const Eigen::Index k = config.k;

    ChannelSet ch;
    ch.h_u1i = draw_vector(m, att.u1_irs, rng);
    ch.h_u2i = draw_vector(m, att.u2_irs, rng);
    ch.h_ir = draw_matrix(k, m, att.irs_relay, rng);
    ch.h_u1r = draw_vector(k, att.u1_relay, rng);
    ch.h_u2r = draw_vector(k, att.u2_relay, rng);
    ch.h_u1ir = cascade(ch.h_ir, ch.h_u1i);
    ch.h_u2ir = cascade(ch.h_ir, ch.h_u2i);
    return ch;
}

}  // namespace irsce
