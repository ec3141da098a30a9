// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "irsce/pilot_protocol.hpp"
#include "irsce/training_matrix.hpp"
#include "irsce/types.hpp"

namespace irsce {

struct EstimateSet {
    CVector h_u1r_hat;   ///< K×1
    CVector h_u2r_hat;   ///< K×1
    CMatrix h_u1ir_hat;  ///< K×M
    CMatrix h_u2ir_hat;  ///< K×M
};

/// How estimate_cascaded inverts the M×M design matrix Q·diag(x).
/// Auto picks Orthogonal for unquantized DFT/Hadamard designs (where
/// QᴴQ = M·I holds by construction) and General otherwise. The explicit
/// values exist so tests can pin both paths against each other.
enum class CascadedSolver { Auto, General, Orthogonal };

/// Closed-form direct-channel estimate yt·x*/(4·√P·xᵀx*). With unit-modulus
/// pilots the denominator is 4·√P·N_P.
CVector estimate_direct(const CMatrix& yt, const CVector& x, double power);

/// Cascaded-channel estimate Ĥ = yt·(Q·diag(x))⁻¹/(4·√P), computed as an
/// M×M right-solve — never by assembling the KM×KM Kronecker system, which
/// gives the identical result (vec identity) at O((KM)³) cost.
/// Throws SingularDesignError when cond(Q·diag(x)) exceeds ~1e12.
CMatrix estimate_cascaded(const CMatrix& yt, const TrainingMatrix& q, const CVector& x,
                          double power, CascadedSolver solver = CascadedSolver::Auto);

/// combine() followed by the four estimators:
/// (yt1, x1, P1)→ĥ_u1r, (yt2, x2, P2)→ĥ_u2r,
/// (yt3, x1, P1)→Ĥ_u1ir, (yt4, x2, P2)→Ĥ_u2ir.
EstimateSet estimate_all(const PilotFrame& frame, const TrainingMatrix& q,
                         const PilotSequences& pilots, double p_u1, double p_u2);

}  // namespace irsce
