// SPDX-License-Identifier: Apache-2.0
#include "irsce/training_matrix.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "irsce/errors.hpp"

namespace irsce {

std::string to_string(TrainingScheme scheme) {
    switch (scheme) {
        case TrainingScheme::Dft:
            return "dft";
        case TrainingScheme::Hadamard:
            return "hadamard";
        case TrainingScheme::RandomPhase:
            return "rpm";
    }
    throw std::logic_error("to_string: bad TrainingScheme");
}

TrainingScheme training_scheme_from_string(const std::string& name) {
    if (name == "dft") return TrainingScheme::Dft;
    if (name == "hadamard") return TrainingScheme::Hadamard;
    if (name == "rpm") return TrainingScheme::RandomPhase;
    throw std::invalid_argument("unknown training scheme '" + name +
                                "' (expected dft, hadamard or rpm)");
}

TrainingMatrix dft_matrix(int m) {
    if (m < 1) throw std::invalid_argument("dft_matrix: m must be >= 1");
    TrainingMatrix q;
    q.scheme = TrainingScheme::Dft;
    q.entries.resize(m, m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            // Reduce the index product modulo m before scaling: keeps the
            // phase argument small so large m does not lose precision.
            const long long t = (static_cast<long long>(r) * c) % m;
            q.entries(r, c) = std::polar(1.0, -kTwoPi * static_cast<double>(t) / m);
        }
    }
    return q;
}

TrainingMatrix hadamard_matrix(int m) {
    if (m < 1 || (m & (m - 1)) != 0) {
        throw std::invalid_argument("hadamard_matrix: order " + std::to_string(m) +
                                    " is not a power of 2");
    }
    TrainingMatrix q;
    q.scheme = TrainingScheme::Hadamard;
    q.entries = CMatrix::Ones(1, 1);
    for (int n = 1; n < m; n *= 2) {
        CMatrix next(2 * n, 2 * n);
        next.topLeftCorner(n, n) = q.entries;
        next.topRightCorner(n, n) = q.entries;
        next.bottomLeftCorner(n, n) = q.entries;
        next.bottomRightCorner(n, n) = -q.entries;
        q.entries = std::move(next);
    }
    return q;
}

TrainingMatrix random_phase_matrix(int m, RngStream& rng) {
    if (m < 1) throw std::invalid_argument("random_phase_matrix: m must be >= 1");
    TrainingMatrix q;
    q.scheme = TrainingScheme::RandomPhase;
    q.entries.resize(m, m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            q.entries(r, c) = std::polar(1.0, -rng.phase());
        }
    }
    return q;
}

TrainingMatrix quantize(const TrainingMatrix& q, int bits) {
    if (bits < 1) {
        throw std::invalid_argument("quantize: need at least 1 bit, got " +
                                    std::to_string(bits));
    }
    if (bits > 62) {
        throw std::invalid_argument("quantize: bit depth too large");
    }
    const long long levels = 1LL << bits;
    const double step = kTwoPi / static_cast<double>(levels);

    TrainingMatrix out;
    out.scheme = q.scheme;
    out.quant_bits = bits;
    out.entries.resize(q.entries.rows(), q.entries.cols());
    for (Eigen::Index r = 0; r < q.entries.rows(); ++r) {
        for (Eigen::Index c = 0; c < q.entries.cols(); ++c) {
            double phase = std::arg(q.entries(r, c));
            if (phase < 0.0) phase += kTwoPi;
            // Level centers sit at (k + 1/2)·step, so bucket k covers
            // [k·step, (k+1)·step). A midpoint (bucket boundary) belongs to
            // the upper bucket; the 1e-9 slack keeps that choice stable when
            // the boundary value itself carries a few ulp of arg() noise.
            long long idx = static_cast<long long>(
                std::floor(phase / step + 1e-9));
            idx %= levels;
            out.entries(r, c) =
                std::polar(1.0, static_cast<double>(2 * idx + 1) * (kPi / static_cast<double>(levels)));
        }
    }
    return out;
}

double gram_trace_inv(const CMatrix& q) {
    if (q.rows() == 0 || q.rows() != q.cols()) {
        throw std::invalid_argument("gram_trace_inv: expected a square nonempty matrix");
    }
    // tr{(QᵀQ*)⁻¹} = tr{(QᴴQ)⁻¹} (the two Grams are conjugates and their
    // eigenvalues are real), so work with the Hermitian QᴴQ.
    CMatrix gram = q.adjoint() * q;
    gram = Complex(0.5, 0.0) * (gram + gram.adjoint().eval());  // drop round-off skew
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("gram_trace_inv: eigendecomposition failed");
    }
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const double lmax = lambda.maxCoeff();
    const double lmin = lambda.minCoeff();
    const double floor_eig =
        lmax * static_cast<double>(q.rows()) * std::numeric_limits<double>::epsilon();
    if (!(lmin > floor_eig)) {
        throw SingularGramError("gram matrix singular to working precision (min eigenvalue " +
                                    std::to_string(lmin) + ", max " + std::to_string(lmax) + ")",
                                lmin, lmax);
    }
    return lambda.cwiseInverse().sum();
}

double loss_factor_exact(const TrainingMatrix& q, int bits) {
    if (q.quant_bits.has_value()) {
        throw std::invalid_argument("loss_factor_exact: input must be unquantized");
    }
    return gram_trace_inv(quantize(q, bits).entries) / gram_trace_inv(q.entries);
}

double loss_factor_approx(int bits) {
    if (bits < 1 || bits > 62) {
        throw std::invalid_argument("loss_factor_approx: bits must be in [1, 62]");
    }
    const double x = kPi / static_cast<double>(1LL << bits);
    return 3.0 - 2.0 * std::sin(x) / x;
}

}  // namespace irsce
