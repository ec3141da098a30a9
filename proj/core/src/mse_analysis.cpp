// SPDX-License-Identifier: Apache-2.0
#include "irsce/mse_analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "irsce/errors.hpp"

namespace irsce {

double empirical_component(const std::vector<double>& squared_errors, int m) {
    if (squared_errors.empty()) {
        throw std::invalid_argument("empirical_component: no trials");
    }
    if (m < 1) {
        throw std::invalid_argument("empirical_component: m must be >= 1");
    }
    double acc = 0.0;
    for (double e : squared_errors) acc += e;
    return acc / (4.0 * static_cast<double>(m) * static_cast<double>(squared_errors.size()));
}

double analytic_direct(double power, int m, double noise_power, int k, bool k_correction) {
    if (!(power > 0.0) || m < 1 || k < 1 || noise_power < 0.0) {
        throw std::invalid_argument("analytic_direct: bad arguments");
    }
    const double base = noise_power / (16.0 * power * static_cast<double>(m) * m);
    return k_correction ? base * static_cast<double>(k) : base;
}

double analytic_cascaded(const CMatrix& q, const CVector& x, double power, int k, int m,
                         double noise_power) {
    if (q.rows() != m || q.cols() != m || x.size() != m) {
        throw std::invalid_argument("analytic_cascaded: dimension mismatch");
    }
    if (!(power > 0.0) || k < 1 || noise_power < 0.0) {
        throw std::invalid_argument("analytic_cascaded: bad arguments");
    }
    // tr{(XᴴX)⁻¹(QᵀQ*)⁻¹} = tr{[(QX)ᴴ(QX)]⁻¹} for diagonal X: evaluate on the
    // actual design matrix with a Cholesky-type solve. gram_trace_inv covers
    // the unweighted case through a separate eigenvalue route; tests pin the
    // two against each other.
    const CMatrix a = q * x.asDiagonal();
    CMatrix gram = a.adjoint() * a;
    gram = Complex(0.5, 0.0) * (gram + gram.adjoint().eval());
    Eigen::LDLT<CMatrix> ldlt(gram);
    const Eigen::VectorXd d = ldlt.vectorD().real();
    const double dmax = d.maxCoeff();
    const double dmin = d.minCoeff();
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        !(dmin > dmax * m * std::numeric_limits<double>::epsilon())) {
        throw SingularGramError("design gram singular to working precision (pivot range " +
                                    std::to_string(dmin) + " .. " + std::to_string(dmax) + ")",
                                dmin, dmax);
    }
    const double trace = ldlt.solve(CMatrix::Identity(m, m)).trace().real();
    return noise_power * static_cast<double>(k) * trace / (16.0 * power * m);
}

double sum_mse_min(double p_u1, double p_u2, int m, int k, double noise_power,
                   bool k_correction) {
    if (!(p_u1 > 0.0) || !(p_u2 > 0.0) || m < 1 || k < 1 || noise_power < 0.0) {
        throw std::invalid_argument("sum_mse_min: bad arguments");
    }
    const double md = static_cast<double>(m);
    const double kd = static_cast<double>(k);
    const double direct_scale = k_correction ? kd : 1.0;
    return kd * noise_power / (16.0 * p_u1 * md) + kd * noise_power / (16.0 * p_u2 * md) +
           direct_scale * noise_power / (16.0 * p_u1 * md * md) +
           direct_scale * noise_power / (16.0 * p_u2 * md * md);
}

double predicted_quantized_sum(const SystemConfig& config, TrainingScheme scheme, int bits,
                               bool k_correction) {
    config.validate();
    double beta = 1.0;
    if (bits >= 1) {
        TrainingMatrix q;
        switch (scheme) {
            case TrainingScheme::Dft:
                q = dft_matrix(config.m);
                break;
            case TrainingScheme::Hadamard:
                q = hadamard_matrix(config.m);
                break;
            case TrainingScheme::RandomPhase:
                throw std::invalid_argument(
                    "predicted_quantized_sum: defined for deterministic designs only");
        }
        beta = loss_factor_exact(q, bits);
    }
    const double md = static_cast<double>(config.m);
    const double kd = static_cast<double>(config.k);
    const double cascaded = kd * config.noise_power / (16.0 * config.p_u1 * md) +
                            kd * config.noise_power / (16.0 * config.p_u2 * md);
    const double direct =
        analytic_direct(config.p_u1, config.m, config.noise_power, config.k, k_correction) +
        analytic_direct(config.p_u2, config.m, config.noise_power, config.k, k_correction);
    return beta * cascaded + direct;
}

}  // namespace irsce
