// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <doctest.h>
#include <Eigen/QR>

#include "irsce/errors.hpp"
#include "irsce/training_matrix.hpp"
#include "test_support.hpp"

using namespace irsce;

namespace {

double orthogonality_defect(const CMatrix& q) {
    const int m = static_cast<int>(q.rows());
    const CMatrix target = static_cast<double>(m) * CMatrix::Identity(m, m);
    return (q.adjoint() * q - target).norm() / target.norm();
}

}  // namespace

TEST_CASE("dft: single point and two point") {
    CHECK(dft_matrix(1).entries(0, 0) == Complex(1.0, 0.0));

    const CMatrix q2 = dft_matrix(2).entries;
    CHECK(std::abs(q2(0, 0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(q2(0, 1) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(q2(1, 0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(q2(1, 1) - Complex(-1, 0)) < 1e-15);
}

TEST_CASE("dft: row 2, column 4 of the 4-point matrix is +j") {
    // exponent -j·2π·(2-1)(4-1)/4 = -j·3π/2
    const CMatrix q = dft_matrix(4).entries;
    CHECK(std::abs(q(1, 3) - Complex(0.0, 1.0)) < 1e-14);
}

TEST_CASE("dft: columns orthogonal with squared norm M") {
    for (int m : {4, 8, 32, 128}) {
        CHECK(orthogonality_defect(dft_matrix(m).entries) < 1e-10);
    }
}

TEST_CASE("hadamard: small orders") {
    CHECK(hadamard_matrix(1).entries(0, 0) == Complex(1.0, 0.0));

    CMatrix expected(4, 4);
    expected << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
    CHECK((hadamard_matrix(4).entries - expected).norm() == 0.0);
}

TEST_CASE("hadamard: gram is exactly M times identity") {
    const CMatrix q = hadamard_matrix(8).entries;
    const CMatrix gram = q.transpose() * q;
    CHECK((gram - 8.0 * CMatrix::Identity(8, 8)).norm() == 0.0);
}

TEST_CASE("hadamard: entries are plus or minus one") {
    const CMatrix q = hadamard_matrix(16).entries;
    for (int r = 0; r < 16; ++r) {
        for (int c = 0; c < 16; ++c) {
            CHECK(q(r, c).imag() == 0.0);
            CHECK(std::abs(std::abs(q(r, c).real()) - 1.0) == 0.0);
        }
    }
}

TEST_CASE("hadamard: non power-of-two orders rejected") {
    for (int m : {3, 6, 12, 100}) {
        CHECK_THROWS_AS(hadamard_matrix(m), std::invalid_argument);
    }
}

TEST_CASE("random phase: unit modulus, reproducible, generally suboptimal") {
    RngStream r1(555);
    RngStream r2(555);
    const TrainingMatrix a = random_phase_matrix(16, r1);
    const TrainingMatrix b = random_phase_matrix(16, r2);
    CHECK((a.entries - b.entries).norm() == 0.0);
    for (int r = 0; r < 16; ++r) {
        for (int c = 0; c < 16; ++c) {
            CHECK(std::abs(std::abs(a.entries(r, c)) - 1.0) < 1e-12);
        }
    }

    int above_one = 0;
    for (int seed = 0; seed < 100; ++seed) {
        RngStream rng(1000 + seed);
        const TrainingMatrix q = random_phase_matrix(16, rng);
        try {
            if (gram_trace_inv(q.entries) > 1.0) ++above_one;
        } catch (const SingularGramError&) {
            ++above_one;  // a singular gram is unboundedly far from optimal
        }
    }
    CHECK(above_one == 100);
}

TEST_CASE("quantize: 0.3 rad at 2 bits snaps to pi/4") {
    TrainingMatrix q;
    q.scheme = TrainingScheme::RandomPhase;
    q.entries = CMatrix(1, 1);
    q.entries(0, 0) = std::polar(1.0, 0.3);
    const TrainingMatrix qq = quantize(q, 2);
    CHECK(std::abs(std::arg(qq.entries(0, 0)) - kPi / 4.0) < 1e-12);
    CHECK(qq.quant_bits.has_value());
    CHECK(*qq.quant_bits == 2);
    CHECK(qq.scheme == TrainingScheme::RandomPhase);
}

TEST_CASE("quantize: phases land on the offset grid with unit modulus") {
    const TrainingMatrix qq = quantize(dft_matrix(16), 3);
    const int levels = 8;
    const double step = kTwoPi / levels;
    for (int r = 0; r < 16; ++r) {
        for (int c = 0; c < 16; ++c) {
            CHECK(std::abs(std::abs(qq.entries(r, c)) - 1.0) < 1e-12);
            double phase = std::arg(qq.entries(r, c));
            if (phase < 0.0) phase += kTwoPi;
            // distance to the nearest grid point (k + 1/2)·step
            const double pos = phase / step - 0.5;
            CHECK(std::abs(pos - std::round(pos)) < 1e-12);
        }
    }
}

TEST_CASE("quantize: one-bit hadamard is a uniform +j rotation") {
    // {0, π} phases sit exactly midway between the two levels {π/2, 3π/2};
    // the tie-break sends both up, i.e. multiplies the matrix by e^{jπ/2}.
    const TrainingMatrix h = hadamard_matrix(8);
    const TrainingMatrix hq = quantize(h, 1);
    const CMatrix expected = Complex(0.0, 1.0) * h.entries;
    CHECK(test::rel_err(hq.entries, expected) < 1e-14);
}

TEST_CASE("quantize: idempotent") {
    RngStream rng(4242);
    const TrainingMatrix q = random_phase_matrix(12, rng);
    for (int b : {1, 2, 3, 5}) {
        const TrainingMatrix once = quantize(q, b);
        const TrainingMatrix twice = quantize(once, b);
        CHECK((twice.entries - once.entries).norm() == 0.0);
    }
}

TEST_CASE("quantize: commutes with sign flip (grid closed under adding pi)") {
    RngStream rng(77);
    std::vector<TrainingMatrix> designs;
    designs.push_back(dft_matrix(8));
    designs.push_back(hadamard_matrix(8));
    designs.push_back(random_phase_matrix(8, rng));
    for (const TrainingMatrix& q : designs) {
        for (int b : {1, 2, 3}) {
            TrainingMatrix neg = q;
            neg.entries = -q.entries;
            const CMatrix lhs = quantize(neg, b).entries;
            const CMatrix rhs = -quantize(q, b).entries;
            CHECK(test::rel_err(lhs, rhs) < 1e-12);
        }
    }
}

TEST_CASE("quantize: invalid bit depths rejected") {
    CHECK_THROWS_AS(quantize(dft_matrix(4), 0), std::invalid_argument);
    CHECK_THROWS_AS(quantize(dft_matrix(4), -3), std::invalid_argument);
}

TEST_CASE("gram trace inverse: orthogonal designs give exactly one") {
    for (int m : {4, 16, 128}) {
        CHECK(test::rel_err(gram_trace_inv(dft_matrix(m).entries), 1.0) < 1e-10);
    }
    for (int m : {8, 32}) {
        CHECK(test::rel_err(gram_trace_inv(hadamard_matrix(m).entries), 1.0) < 1e-10);
    }
}

TEST_CASE("gram trace inverse: identity-like designs") {
    // Gram of the identity is the identity: trace of its inverse is M.
    CHECK(test::rel_err(gram_trace_inv(CMatrix::Identity(5, 5)), 5.0) < 1e-12);
    // scaling law M/|c|² for c times a unitary matrix
    CHECK(test::rel_err(gram_trace_inv(2.0 * CMatrix::Identity(8, 8)), 2.0) < 1e-12);

    RngStream rng(606);
    CMatrix g(6, 6);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) g(r, c) = rng.complex_normal(1.0);
    const CMatrix u = Eigen::HouseholderQR<CMatrix>(g).householderQ();
    CHECK(test::rel_err(gram_trace_inv(3.0 * u), 6.0 / 9.0) < 1e-10);
}

TEST_CASE("gram trace inverse: singular design reported, not regularized") {
    CMatrix q = CMatrix::Ones(4, 4);  // rank one
    CHECK_THROWS_AS(gram_trace_inv(q), SingularGramError);
    try {
        gram_trace_inv(q);
    } catch (const SingularGramError& e) {
        CHECK(e.max_eigenvalue() > 0.0);
        CHECK(e.min_eigenvalue() < e.max_eigenvalue() * 1e-10);
    }
}

TEST_CASE("loss factor exact: one-bit hadamard is lossless") {
    CHECK(std::abs(loss_factor_exact(hadamard_matrix(8), 1) - 1.0) < 1e-10);
}

TEST_CASE("loss factor exact: dft at log2(M) bits is lossless") {
    // All phases are integer multiples of the grid step, so quantization is
    // a uniform e^{jπ/L} rotation that preserves the gram.
    CHECK(std::abs(loss_factor_exact(dft_matrix(16), 4) - 1.0) < 1e-10);
    CHECK(std::abs(loss_factor_exact(dft_matrix(128), 7) - 1.0) < 1e-10);
}

TEST_CASE("loss factor exact: fine quantization converges to one") {
    CHECK(std::abs(loss_factor_exact(dft_matrix(32), 12) - 1.0) < 1e-6);
}

TEST_CASE("loss factor exact: matches the trace-ratio definition") {
    const TrainingMatrix q = dft_matrix(32);
    for (int b : {2, 3, 4}) {
        const double direct =
            gram_trace_inv(quantize(q, b).entries) / gram_trace_inv(q.entries);
        CHECK(test::rel_err(loss_factor_exact(q, b), direct) < 1e-10);
    }
}

TEST_CASE("loss factor exact: rejects already-quantized input") {
    const TrainingMatrix qq = quantize(dft_matrix(8), 3);
    CHECK_THROWS_AS(loss_factor_exact(qq, 3), std::invalid_argument);
}

TEST_CASE("loss factor approximation: frozen closed-form values") {
    CHECK(test::rel_err(loss_factor_approx(1), 1.7267604552648372) < 1e-12);
    CHECK(test::rel_err(loss_factor_approx(2), 1.1993673676857879) < 1e-12);
    CHECK(test::rel_err(loss_factor_approx(3), 1.0510092831911346) < 1e-12);
    CHECK(test::rel_err(loss_factor_approx(4), 1.0128262977115885) < 1e-12);
    CHECK(test::rel_err(loss_factor_approx(5), 1.0032112139287632) < 1e-12);
    CHECK(test::rel_err(loss_factor_approx(6), 1.0008030937006418) < 1e-12);
    CHECK(test::rel_err(loss_factor_approx(7), 1.0002007915677165) < 1e-12);
}

TEST_CASE("loss factor approximation: strictly decreasing toward one") {
    double prev = loss_factor_approx(1);
    for (int b = 2; b <= 20; ++b) {
        const double cur = loss_factor_approx(b);
        CHECK(cur < prev);
        CHECK(cur >= 1.0);
        prev = cur;
    }
    CHECK(loss_factor_approx(30) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scheme names round-trip") {
    for (TrainingScheme s :
         {TrainingScheme::Dft, TrainingScheme::Hadamard, TrainingScheme::RandomPhase}) {
        CHECK(training_scheme_from_string(to_string(s)) == s);
    }
    CHECK_THROWS_AS(training_scheme_from_string("fourier"), std::invalid_argument);
}
