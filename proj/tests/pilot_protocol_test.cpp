// SPDX-License-Identifier: Apache-2.0
#include <array>
#include <cmath>
#include <complex>

#include <doctest.h>

#include "irsce/channel_model.hpp"
#include "irsce/pilot_protocol.hpp"
#include "irsce/training_matrix.hpp"
#include "test_support.hpp"

using namespace irsce;

namespace {

SystemConfig small_config(int m, int k) {
    SystemConfig cfg;
    cfg.m = m;
    cfg.n_p = m;
    cfg.k = k;
    return cfg;
}

struct Scene {
    ChannelSet channels;
    TrainingMatrix q;
    PilotSequences pilots;
    double p1;
    double p2;
};

Scene random_scene(int m, int k, std::uint64_t seed, TrainingScheme scheme = TrainingScheme::Dft) {
    Scene s;
    RngStream ch_rng(seed);
    s.channels = draw_channels(small_config(m, k), ch_rng);
    RngStream p_rng(seed + 1);
    s.pilots = default_pilots(m, p_rng);
    if (scheme == TrainingScheme::RandomPhase) {
        RngStream q_rng(seed + 2);
        s.q = random_phase_matrix(m, q_rng);
    } else {
        s.q = scheme == TrainingScheme::Dft ? dft_matrix(m) : hadamard_matrix(m);
    }
    s.p1 = 2.0;
    s.p2 = 0.5;
    return s;
}

// The four noise-free single-channel products the combiner must isolate.
std::array<CMatrix, 4> expected_terms(const Scene& s) {
    const double a1 = 4.0 * std::sqrt(s.p1);
    const double a2 = 4.0 * std::sqrt(s.p2);
    return {a1 * s.channels.h_u1r * s.pilots.x_u1.transpose(),
            a2 * s.channels.h_u2r * s.pilots.x_u2.transpose(),
            a1 * s.channels.h_u1ir * s.q.entries * s.pilots.x_u1.asDiagonal(),
            a2 * s.channels.h_u2ir * s.q.entries * s.pilots.x_u2.asDiagonal()};
}

}  // namespace

TEST_CASE("pilots: random mode is unit modulus with full energy") {
    RngStream rng(1);
    const PilotSequences p = default_pilots(32, rng);
    CHECK(p.x_u1.size() == 32);
    for (int i = 0; i < 32; ++i) {
        CHECK(std::abs(std::abs(p.x_u1(i)) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(p.x_u2(i)) - 1.0) < 1e-12);
    }
    // xᵀx* equals the pilot length for unit-modulus symbols
    CHECK(test::rel_err(p.x_u1.squaredNorm(), 32.0) < 1e-12);
}

TEST_CASE("pilots: all-ones mode") {
    RngStream rng(2);
    const PilotSequences p = default_pilots(8, rng, PilotMode::AllOnes);
    CHECK((p.x_u1 - CVector::Ones(8)).norm() == 0.0);
    CHECK((p.x_u2 - CVector::Ones(8)).norm() == 0.0);
}

TEST_CASE("frame synthesis: scalar all-ones case gives periods (4, 0, 0, 0)") {
    ChannelSet ch;
    ch.h_u1i = CVector::Ones(1);
    ch.h_u2i = CVector::Ones(1);
    ch.h_ir = CMatrix::Ones(1, 1);
    ch.h_u1r = CVector::Ones(1);
    ch.h_u2r = CVector::Ones(1);
    ch.h_u1ir = CMatrix::Ones(1, 1);
    ch.h_u2ir = CMatrix::Ones(1, 1);
    TrainingMatrix q;
    q.entries = CMatrix::Ones(1, 1);
    PilotSequences pilots;
    pilots.x_u1 = CVector::Ones(1);
    pilots.x_u2 = CVector::Ones(1);

    RngStream rng(3);
    const PilotFrame frame = synthesize_frame(ch, q, pilots, 1.0, 1.0, 0.0, rng);
    // period 1 stacks all four unit terms; in the later periods the user-2
    // and surface sign flips cancel them pairwise
    CHECK(std::abs(frame.y[0](0, 0) - Complex(4.0, 0.0)) < 1e-14);
    CHECK(std::abs(frame.y[1](0, 0)) < 1e-14);
    CHECK(std::abs(frame.y[2](0, 0)) < 1e-14);
    CHECK(std::abs(frame.y[3](0, 0)) < 1e-14);
}

TEST_CASE("frame synthesis: user-2 cascaded term carries signs (+,-,-,+)") {
    // Zero out everything except the user-2 cascaded path, then read off the
    // sign of the remaining term period by period.
    Scene s = random_scene(4, 2, 900);
    s.channels.h_u1r.setZero();
    s.channels.h_u2r.setZero();
    s.channels.h_u1ir.setZero();
    RngStream rng(901);
    const PilotFrame frame = synthesize_frame(s.channels, s.q, s.pilots, s.p1, s.p2, 0.0, rng);
    const CMatrix base =
        std::sqrt(s.p2) * s.channels.h_u2ir * s.q.entries * s.pilots.x_u2.asDiagonal();
    const std::array<double, 4> signs{+1.0, -1.0, -1.0, +1.0};
    for (int p = 0; p < 4; ++p) {
        CHECK(test::rel_err(frame.y[p], signs[p] * base) < 1e-12);
    }
}

TEST_CASE("frame synthesis: zero channels leave pure noise") {
    Scene s = random_scene(4, 2, 910);
    s.channels.h_u1r.setZero();
    s.channels.h_u2r.setZero();
    s.channels.h_u1ir.setZero();
    s.channels.h_u2ir.setZero();
    RngStream rng(911);
    const PilotFrame frame = synthesize_frame(s.channels, s.q, s.pilots, s.p1, s.p2, 1.0, rng);
    for (int p = 0; p < 4; ++p) {
        CHECK((frame.y[p] - frame.noise[p]).norm() == 0.0);
    }
}

TEST_CASE("frame synthesis: dimension mismatch rejected") {
    Scene s = random_scene(4, 2, 920);
    RngStream rng(921);
    PilotSequences bad = s.pilots;
    bad.x_u2 = CVector::Ones(5);
    CHECK_THROWS(synthesize_frame(s.channels, s.q, bad, s.p1, s.p2, 0.0, rng));
    TrainingMatrix wrong_q = dft_matrix(8);
    CHECK_THROWS(synthesize_frame(s.channels, wrong_q, s.pilots, s.p1, s.p2, 0.0, rng));
}

TEST_CASE("combine: identical periods collapse onto the first output") {
    RngStream rng(31);
    CMatrix a(2, 3);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c) a(r, c) = rng.complex_normal(1.0);
    PilotFrame frame;
    for (int p = 0; p < 4; ++p) frame.y[p] = a;
    const CombinedObservations obs = combine(frame);
    CHECK(test::rel_err(obs.yt[0], 4.0 * a) < 1e-15);
    CHECK(obs.yt[1].norm() == 0.0);
    CHECK(obs.yt[2].norm() == 0.0);
    CHECK(obs.yt[3].norm() == 0.0);
}

TEST_CASE("combine: equals multiplication by the 4x4 sign matrix") {
    RngStream rng(32);
    PilotFrame frame;
    for (int p = 0; p < 4; ++p) {
        frame.y[p] = CMatrix(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) frame.y[p](r, c) = rng.complex_normal(1.0);
    }
    const double signs[4][4] = {
        {+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, +1, -1, -1}, {+1, -1, -1, +1}};
    const CombinedObservations obs = combine(frame);
    for (int r = 0; r < 4; ++r) {
        CMatrix expected = CMatrix::Zero(2, 2);
        for (int p = 0; p < 4; ++p) expected += signs[r][p] * frame.y[p];
        CHECK(test::rel_err(obs.yt[r], expected) < 1e-15);
    }
}

TEST_CASE("combine: noise-free frames decouple into the four channel terms") {
    for (std::uint64_t seed : {50u, 51u, 52u}) {
        for (TrainingScheme scheme :
             {TrainingScheme::Dft, TrainingScheme::Hadamard, TrainingScheme::RandomPhase}) {
            const Scene s = random_scene(8, 2, seed, scheme);
            RngStream rng(seed + 7);
            const PilotFrame frame =
                synthesize_frame(s.channels, s.q, s.pilots, s.p1, s.p2, 0.0, rng);
            const CombinedObservations obs = combine(frame);
            const std::array<CMatrix, 4> expected = expected_terms(s);
            for (int i = 0; i < 4; ++i) {
                CHECK(test::rel_err(obs.yt[i], expected[i]) < 1e-12);
            }
        }
    }
}

TEST_CASE("combine: sign table exhaustively isolates each term") {
    // Coefficient of term r in combined output i must be 4·δ(i=r): feed four
    // frames that each contain exactly one term and check all 16 pairings.
    const Scene s = random_scene(4, 3, 77);
    for (int term = 0; term < 4; ++term) {
        Scene isolated = s;
        if (term != 0) isolated.channels.h_u1r.setZero();
        if (term != 1) isolated.channels.h_u2r.setZero();
        if (term != 2) isolated.channels.h_u1ir.setZero();
        if (term != 3) isolated.channels.h_u2ir.setZero();
        RngStream rng(78);
        const PilotFrame frame =
            synthesize_frame(isolated.channels, isolated.q, isolated.pilots, s.p1, s.p2, 0.0, rng);
        const CombinedObservations obs = combine(frame);
        const std::array<CMatrix, 4> expected = expected_terms(isolated);
        for (int i = 0; i < 4; ++i) {
            if (i == term) {
                CHECK(test::rel_err(obs.yt[i], expected[i]) < 1e-12);
            } else {
                CHECK(obs.yt[i].norm() < 1e-12 * expected[term].norm());
            }
        }
    }
}

TEST_CASE("combine: combined noise has per-entry variance 4 sigma^2, outputs uncorrelated") {
    const int k = 1, m = 1;
    const double sigma2 = 0.7;
    Scene s = random_scene(m, k, 480);
    s.channels.h_u1r.setZero();
    s.channels.h_u2r.setZero();
    s.channels.h_u1ir.setZero();
    s.channels.h_u2ir.setZero();

    RngStream rng(481);
    const int n = 100000;
    std::array<double, 4> var{};
    std::array<double, 6> cross{};
    for (int t = 0; t < n; ++t) {
        const PilotFrame frame =
            synthesize_frame(s.channels, s.q, s.pilots, s.p1, s.p2, sigma2, rng);
        const CombinedObservations obs = combine(frame);
        int pair = 0;
        for (int i = 0; i < 4; ++i) {
            var[i] += std::norm(obs.yt[i](0, 0));
            for (int j = i + 1; j < 4; ++j) {
                cross[pair++] += (obs.yt[i](0, 0) * std::conj(obs.yt[j](0, 0))).real();
            }
        }
    }
    for (int i = 0; i < 4; ++i) {
        CHECK(test::rel_err(var[i] / n, 4.0 * sigma2) < 0.03);
    }
    for (int p = 0; p < 6; ++p) {
        CHECK(std::abs(cross[p] / n) < 0.03 * 4.0 * sigma2);
    }
}
