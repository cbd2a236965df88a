#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oamwg/oam.hpp"

using namespace oamwg;

namespace {

const Guide kAir{0.02, 1.0};
constexpr double kA = 0.02;

Superposition single(const ModeId& m, double f, const Guide& g = kAir) {
    const Constituent c[] = {{m, 1.0}};
    return Superposition(g, c, f);
}

RingSamples pure_harmonic(int q, int n, double phi0 = 0.0) {
    RingSamples r{0.5, phi0, std::vector<cplx>(n)};
    for (int k = 0; k < n; ++k) r.values[k] = std::polar(1.0, q * r.phi(k));
    return r;
}

}  // namespace

TEST(Synthesize, QuadraturePairEqualsRotatingMode) {
    const Constituent pair[] = {{te_mode(2, 1), 1.0}, {te_mode(2, 1, Orientation::Sin), kJ}};
    const Constituent rot[] = {{te_mode(2, 1, Orientation::RotPlus), 1.0}};
    const auto a = synthesize(kAir, pair, 10e9, 101);
    const auto b = synthesize(kAir, rot, 10e9, 101);
    ASSERT_EQ(a.samples.size(), b.samples.size());
    double peak = 0;
    for (const auto& s : b.samples)
        if (s) peak = std::max(peak, std::abs(s->ex()) + std::abs(s->ey()) + std::abs(s->h_z));
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        ASSERT_EQ(a.samples[i].has_value(), b.samples[i].has_value());
        if (!a.samples[i]) continue;
        const auto &u = *a.samples[i], &v = *b.samples[i];
        for (auto [x, y] : {std::pair{u.ex(), v.ex()}, {u.ey(), v.ey()}, {u.hx(), v.hx()}, {u.hy(), v.hy()}, {u.h_z, v.h_z}})
            ASSERT_LE(std::abs(x - y), 1e-12 * peak);
    }
}

TEST(Synthesize, StandingPatternHasTwoPhases) {
    const Constituent c[] = {{te_mode(2, 1), 1.0}, {te_mode(2, 1, Orientation::Sin), 0.0}};
    const auto map = synthesize(kAir, c, 10e9, 41);
    double psi = NAN;
    double peak = 0;
    for (const auto& s : map.samples)
        if (s) peak = std::max(peak, std::abs(s->ex()));
    for (const auto& s : map.samples) {
        if (!s || std::abs(s->ex()) < 1e-6 * peak) continue;
        const double ph = std::arg(s->ex());
        if (std::isnan(psi)) psi = ph;
        const double d = std::abs(std::remainder(ph - psi, kPi));
        EXPECT_LT(d, 1e-9);
    }
}

TEST(Synthesize, GridLayoutAndMetadata) {
    const Constituent c[] = {{te_mode(1, 1), 1.0}};
    const auto map = synthesize(kAir, c, 6e9, 16, 0.01);
    EXPECT_EQ(map.n, 16);
    EXPECT_DOUBLE_EQ(map.coord(0), -kA);
    EXPECT_DOUBLE_EQ(map.coord(15), kA);
    EXPECT_FALSE(map.at(0, 0).has_value());  // corner lies outside the disc
    EXPECT_TRUE(map.at(8, 8).has_value());
    EXPECT_EQ(map.z, 0.01);
    EXPECT_EQ(map.constituents.size(), 1u);
    EXPECT_THROW(synthesize(kAir, c, 6e9, 15), DomainError);
    EXPECT_THROW(synthesize(kAir, std::span<const Constituent>{}, 6e9, 32), DomainError);
}

TEST(RingExtract, HzOfRotatingTE21IsSecondHarmonic) {
    const auto ring = ring_extract(single(te_mode(2, 1, Orientation::RotPlus), 10e9), Component::Hz, kA / 2, 64);
    const cplx ref = ring.values[0];
    for (std::size_t k = 0; k < ring.size(); ++k)
        EXPECT_LT(std::abs(ring.values[k] - ref * std::polar(1.0, 2 * ring.phi(k))), 1e-12 * std::abs(ref));
}

TEST(RingExtract, CircularComponentsOfRotatingTE21) {
    const auto sup = single(te_mode(2, 1, Orientation::RotPlus), 10e9);
    for (double rf : {0.05, 0.3, 0.7}) {
        const auto minus = ring_extract(sup, Component::Eminus, rf * kA, 64);
        const cplx ref = minus.values[0];
        for (std::size_t k = 0; k < minus.size(); ++k)
            EXPECT_LT(std::abs(minus.values[k] - ref * std::polar(1.0, minus.phi(k))), 1e-12 * std::abs(ref));
    }
    const auto plus = ring_extract(sup, Component::Eplus, 0.05 * kA, 64);
    const auto minus = ring_extract(sup, Component::Eminus, 0.05 * kA, 64);
    double max_plus = 0, max_minus = 0;
    for (auto v : plus.values) max_plus = std::max(max_plus, std::abs(v));
    for (auto v : minus.values) max_minus = std::max(max_minus, std::abs(v));
    EXPECT_LT(max_plus, 1e-2 * max_minus);
}

TEST(RingExtract, RejectsRingOutsideGuide) {
    const auto sup = single(te_mode(1, 1), 6e9);
    EXPECT_THROW(ring_extract(sup, Component::Ex, kA, 64), DomainError);
    EXPECT_THROW(ring_extract(sup, Component::Ex, 0.0, 64), DomainError);
}

TEST(RingExtract, MapWithoutConstituentsInterpolates) {
    const Constituent c[] = {{te_mode(2, 1, Orientation::RotPlus), 1.0}};
    auto map = synthesize(kAir, c, 10e9, 201);
    const auto exact = ring_extract(map, Component::Hz, 0.4 * kA, 64);
    map.constituents.clear();
    const auto interp = ring_extract(map, Component::Hz, 0.4 * kA, 64);
    double peak = 0;
    for (auto v : exact.values) peak = std::max(peak, std::abs(v));
    for (std::size_t k = 0; k < exact.size(); ++k) EXPECT_LT(std::abs(exact.values[k] - interp.values[k]), 2e-3 * peak);
}

TEST(PhaseWinding, RotatingTE21AndTE41) {
    const double r = 0.2 * kA;
    EXPECT_EQ(phase_winding(ring_extract(single(te_mode(2, 1, Orientation::RotPlus), 10e9), Component::Ex, r, 256)).charge, 1);
    EXPECT_EQ(phase_winding(ring_extract(single(te_mode(4, 1, Orientation::RotPlus), 13e9), Component::Ex, r, 256)).charge, 3);
    EXPECT_EQ(phase_winding(ring_extract(single(te_mode(2, 1, Orientation::RotMinus), 10e9), Component::Ex, r, 256)).charge, -1);
    for (double rf : {0.1, 0.5, 0.9})
        EXPECT_EQ(phase_winding(ring_extract(single(te_mode(2, 1, Orientation::RotPlus), 10e9), Component::Hz, rf * kA, 256)).charge, 2);
}

TEST(PhaseWinding, HzWindingEqualsAzimuthalOrder) {
    for (int l = 1; l <= 5; ++l) {
        const double f = 1.2 * cutoff_frequency(kAir, te_mode(l, 1));
        for (auto [o, sign] : {std::pair{Orientation::RotPlus, 1}, {Orientation::RotMinus, -1}})
            for (double rf : {0.1, 0.5, 0.9})
                EXPECT_EQ(phase_winding(ring_extract(single(te_mode(l, 1, o), f), Component::Hz, rf * kA, 256)).charge, sign * l)
                    << "l=" << l << " rf=" << rf;
    }
}

TEST(PhaseWinding, SpinOrbitOffsetNearAxis) {
    for (int l : {2, 4}) {
        const auto sup = single(te_mode(l, 1, Orientation::RotPlus), 1.2 * cutoff_frequency(kAir, te_mode(l, 1)));
        for (double rf : {0.1, 0.2}) {
            EXPECT_EQ(phase_winding(ring_extract(sup, Component::Ex, rf * kA, 256)).charge, l - 1);
            EXPECT_EQ(phase_winding(ring_extract(sup, Component::Eminus, rf * kA, 256)).charge, l - 1);
            EXPECT_EQ(phase_winding(ring_extract(sup, Component::Eplus, rf * kA, 256)).charge, l + 1);
        }
    }
}

TEST(PhaseWinding, ResolutionStable) {
    const auto sup = single(te_mode(4, 1, Orientation::RotPlus), 13e9);
    for (int n : {64, 128, 256, 512}) EXPECT_EQ(phase_winding(ring_extract(sup, Component::Ex, 0.2 * kA, n)).charge, 3);
}

TEST(PhaseWinding, Errors) {
    RingSamples zeros{0.5, 0.0, std::vector<cplx>(32, 0.0)};
    EXPECT_THROW(phase_winding(zeros), UndefinedPhaseError);
    auto dip = pure_harmonic(1, 32);
    dip.values[5] = 1e-12;
    EXPECT_THROW(phase_winding(dip), UndefinedPhaseError);
    // Half a turn, e^{j phi / 2}: the closing step jumps by ~pi
    RingSamples half{0.5, 0.0, std::vector<cplx>(64)};
    for (int k = 0; k < 64; ++k) half.values[k] = std::polar(1.0, 0.5 * half.phi(k));
    EXPECT_THROW(phase_winding(half), NonIntegerWindingError);
    // Charge 7 on 16 samples aliases
    EXPECT_THROW(phase_winding(pure_harmonic(7, 16)), NonIntegerWindingError);
    EXPECT_EQ(phase_winding(pure_harmonic(7, 64)).charge, 7);
    EXPECT_EQ(phase_winding(pure_harmonic(-3, 64)).charge, -3);
}

TEST(ChargeSpectrum, PureHarmonic) {
    const auto s = charge_spectrum(pure_harmonic(2, 64), 4);
    EXPECT_NEAR(s.at(2), 1.0, 1e-14);
    for (int q = -4; q <= 4; ++q) {
        if (q != 2) {
            EXPECT_LT(s.at(q), 1e-20);
        }
    }
    EXPECT_EQ(s.dominant_q, 2);
}

TEST(ChargeSpectrum, RotatingTE21Ex) {
    const auto ring = ring_extract(single(te_mode(2, 1, Orientation::RotPlus), 10e9), Component::Ex, 0.2 * kA, 256);
    const auto s = charge_spectrum(ring, 4);
    EXPECT_EQ(s.dominant_q, 1);
    EXPECT_GT(s.at(1) / s.total(), 0.99);
}

TEST(ChargeSpectrum, StandingPatternIsSymmetric) {
    const auto sup = single(te_mode(2, 1), 10e9);
    for (double rf : {0.2, 0.6}) {
        const auto s = charge_spectrum(ring_extract(sup, Component::Ex, rf * kA, 128), 4);
        EXPECT_NEAR(s.at(1), s.at(-1), 1e-12 * s.at(1));
        EXPECT_NEAR(s.at(3), s.at(-3), 1e-12 * s.at(1));
    }
}

TEST(ChargeSpectrum, RotationInvariant) {
    const auto sup = single(te_mode(3, 1, Orientation::RotPlus), 12e9);
    const auto base = charge_spectrum(ring_extract(sup, Component::Ex, 0.3 * kA, 128), 6);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> off(-kPi, kPi);
    for (int t = 0; t < 5; ++t) {
        const auto s = charge_spectrum(ring_extract(sup, Component::Ex, 0.3 * kA, 128, 0.0, off(rng)), 6);
        for (int q = -6; q <= 6; ++q) EXPECT_NEAR(s.at(q), base.at(q), 1e-12 * base.total() + 1e-12 * base.at(q));
    }
}

TEST(ChargeSpectrum, TieBreaking) {
    RingSamples r{0.5, 0.0, std::vector<cplx>(32)};
    for (int k = 0; k < 32; ++k) r.values[k] = std::polar(1.0, 2 * r.phi(k)) + std::polar(1.0, -2 * r.phi(k));
    EXPECT_EQ(charge_spectrum(r, 3).dominant_q, 2);
    for (int k = 0; k < 32; ++k) r.values[k] = std::polar(1.0, 3 * r.phi(k)) + std::polar(1.0, -1 * r.phi(k));
    EXPECT_EQ(charge_spectrum(r, 3).dominant_q, -1);
}

TEST(ChargeSpectrum, Undersampled) {
    EXPECT_THROW(charge_spectrum(pure_harmonic(1, 19), 4), DomainError);
    EXPECT_NO_THROW(charge_spectrum(pure_harmonic(1, 20), 4));
}
