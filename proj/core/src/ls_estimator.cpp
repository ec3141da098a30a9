// SPDX-License-Identifier: Apache-2.0
#include "irsce/ls_estimator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/LU>

#include "irsce/errors.hpp"

namespace irsce {

CVector estimate_direct(const CMatrix& yt, const CVector& x, double power) {
    if (yt.cols() != x.size()) {
        throw std::invalid_argument("estimate_direct: observation has " +
                                    std::to_string(yt.cols()) + " columns but pilot length is " +
                                    std::to_string(x.size()));
    }
    if (!(power > 0.0)) {
        throw std::invalid_argument("estimate_direct: power must be positive");
    }
    const double energy = x.squaredNorm();  // xᵀx* is real
    if (!(energy > 0.0)) {
        throw std::invalid_argument("estimate_direct: degenerate (zero-energy) pilot sequence");
    }
    return yt * x.conjugate() / (4.0 * std::sqrt(power) * energy);
}

namespace {

bool orthogonal_by_construction(const TrainingMatrix& q) {
    return !q.quant_bits.has_value() &&
           (q.scheme == TrainingScheme::Dft || q.scheme == TrainingScheme::Hadamard);
}

}  // namespace

CMatrix estimate_cascaded(const CMatrix& yt, const TrainingMatrix& q, const CVector& x,
                          double power, CascadedSolver solver) {
    const Eigen::Index m = q.entries.rows();
    if (q.entries.cols() != m) {
        throw std::invalid_argument("estimate_cascaded: training matrix must be square");
    }
    if (yt.cols() != m || x.size() != m) {
        throw std::invalid_argument("estimate_cascaded: dimension mismatch");
    }
    if (!(power > 0.0)) {
        throw std::invalid_argument("estimate_cascaded: power must be positive");
    }
    const double scale = 1.0 / (4.0 * std::sqrt(power));

    if (solver == CascadedSolver::Auto) {
        solver = orthogonal_by_construction(q) ? CascadedSolver::Orthogonal
                                               : CascadedSolver::General;
    }
    if (solver == CascadedSolver::Orthogonal) {
        // (Q·diag(x))⁻¹ = diag(x)ᴴ·Qᴴ/M when QᴴQ = M·I and |x_i| = 1.
        return scale / static_cast<double>(m) *
               (yt * x.conjugate().asDiagonal() * q.entries.adjoint());
    }

    // Right-solve Ĥ·A = scale·yt with A = Q·diag(x), via Aᵀ·Ĥᵀ = scale·ytᵀ.
    // Same result as the KM×KM Kronecker form (Aᵀ ⊗ I_K)·vec(Ĥ) = vec(·),
    // at M×M cost.
    const CMatrix a_t = (q.entries * x.asDiagonal()).transpose();
    Eigen::PartialPivLU<CMatrix> lu(a_t);
    const double rc = lu.rcond();
    if (!(rc > 1e-12)) {
        const double cond = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
        throw SingularDesignError("training design Q·diag(x) is near-singular (condition ~" +
                                      std::to_string(cond) + ")",
                                  cond);
    }
    return lu.solve(scale * yt.transpose()).transpose();
}

EstimateSet estimate_all(const PilotFrame& frame, const TrainingMatrix& q,
                         const PilotSequences& pilots, double p_u1, double p_u2) {
    const CombinedObservations obs = combine(frame);
    EstimateSet est;
    est.h_u1r_hat = estimate_direct(obs.yt[0], pilots.x_u1, p_u1);
    est.h_u2r_hat = estimate_direct(obs.yt[1], pilots.x_u2, p_u2);
    est.h_u1ir_hat = estimate_cascaded(obs.yt[2], q, pilots.x_u1, p_u1);
    est.h_u2ir_hat = estimate_cascaded(obs.yt[3], q, pilots.x_u2, p_u2);
    return est;
}

}  // namespace irsce
