// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "irsce/rng.hpp"
#include "irsce/system_config.hpp"
#include "irsce/types.hpp"

namespace irsce {

/// One Rayleigh-fading realization of every physical link plus the two
/// cascaded user→IRS→relay matrices derived from them.
struct ChannelSet {
    CVector h_u1i;   ///< M×1, user 1 → IRS
    CVector h_u2i;   ///< M×1, user 2 → IRS
    CMatrix h_ir;    ///< K×M, IRS → relay
    CVector h_u1r;   ///< K×1, user 1 → relay (direct)
    CVector h_u2r;   ///< K×1, user 2 → relay (direct)
    CMatrix h_u1ir;  ///< K×M cascaded, column m = h_u1i(m) · h_ir.col(m)
    CMatrix h_u2ir;  ///< K×M cascaded, column m = h_u2i(m) · h_ir.col(m)
};

/// Column-wise scaling h_ir · diag(h_ui): the composite channel seen through
/// the surface when element m applies a unit-modulus phase shift.
CMatrix cascade(const CMatrix& h_ir, const CVector& h_ui);

/// Draws all five physical links iid CN(0, attenuation) with per-link
/// attenuations from the config geometry, and fills in the cascaded matrices.
ChannelSet draw_channels(const SystemConfig& config, RngStream& rng);

}  // namespace irsce
