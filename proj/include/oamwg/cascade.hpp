#pragma once

// Single-mode transmission-line model of a guide loaded with full-cross-section
// dielectric plugs along z. Each section is an ABCD matrix in modal voltage
// (transverse E) and current (transverse H):
//
//   [[cosh(gL), Z sinh(gL)], [sinh(gL)/Z, cosh(gL)]]
//
// written through g^2 = k_c^2 - k^2 only, so the matrix stays finite through cutoff:
//   TE: Z sinh = j w mu0 L shc,          sinh/Z = g^2 L shc / (j w mu0)
//   TM: Z sinh = g^2 L shc / (j w eps),  sinh/Z = j w eps L shc
// with shc = sinh(gL)/(gL).

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "oamwg/constants.hpp"
#include "oamwg/errors.hpp"
#include "oamwg/modes.hpp"

namespace oamwg {

struct Segment {
    double length = 0.0;  // m
    double eps_r = 1.0;

    void validate() const {
        if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("segment length must be positive");
        if (!(eps_r >= 1.0) || !std::isfinite(eps_r)) throw DomainError("segment eps_r must be >= 1");
    }
};

struct Matrix2 {
    std::array<cplx, 4> v{1.0, 0.0, 0.0, 1.0};  // row-major a, b, c, d

    cplx a() const { return v[0]; }
    cplx b() const { return v[1]; }
    cplx c() const { return v[2]; }
    cplx d() const { return v[3]; }
    cplx det() const { return v[0] * v[3] - v[1] * v[2]; }
    cplx trace() const { return v[0] + v[3]; }

    friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
        return {{x.v[0] * y.v[0] + x.v[1] * y.v[2], x.v[0] * y.v[1] + x.v[1] * y.v[3],
                 x.v[2] * y.v[0] + x.v[3] * y.v[2], x.v[2] * y.v[1] + x.v[3] * y.v[3]}};
    }
};

/// Semi-infinite guide fills on either side of the cascade.
struct EndRegions {
    double input_eps_r = 1.0;
    double output_eps_r = 1.0;
};

struct CascadeResult {
    ModeId mode;
    double f = 0.0;
    cplx transmission;  // outgoing voltage / incident voltage
    cplx reflection;
    std::vector<cplx> interface_reflections;  // input|s1, s1|s2, ..., sn|output
    Matrix2 total;
};

namespace detail {

inline double gamma_squared(double radius, const ModeId& mode, double f, double eps_r) {
    const double k_c = transverse_root(mode.family, mode.l, mode.m) / radius;
    const double k = 2.0 * kPi * f * std::sqrt(eps_r) / kSpeedOfLight;
    return (k_c - k) * (k_c + k);
}

// gamma on the physical branch: real >= 0 or j * positive.
inline cplx gamma_from_squared(double g2) {
    return g2 >= 0.0 ? cplx(std::sqrt(g2), 0.0) : cplx(0.0, std::sqrt(-g2));
}

// Reflection seen going from region a into region b.
inline cplx interface_reflection(Family family, double omega, double g2_a, double eps_a, double g2_b, double eps_b) {
    const cplx ga = gamma_from_squared(g2_a);
    const cplx gb = gamma_from_squared(g2_b);
    cplx num, den;
    if (family == Family::TE) {
        // admittances gamma / (j w mu0): finite at cutoff
        num = ga - gb;
        den = ga + gb;
    } else {
        // impedances gamma / (j w eps0 eps_r)
        const cplx za = ga / (kJ * omega * kEps0 * eps_a);
        const cplx zb = gb / (kJ * omega * kEps0 * eps_b);
        num = zb - za;
        den = zb + za;
    }
    return std::abs(den) == 0.0 ? cplx(0.0) : num / den;
}

}  // namespace detail

inline Matrix2 segment_matrix(double radius, const ModeId& mode, double f, const Segment& segment) {
    Guide{radius, segment.eps_r}.validate();
    segment.validate();
    mode.validate();
    if (!(f > 0.0)) throw DomainError("frequency must be positive");
    const double omega = 2.0 * kPi * f;
    const double g2 = detail::gamma_squared(radius, mode, f, segment.eps_r);
    const double L = segment.length;

    double ch, shc;
    const double s = std::sqrt(std::abs(g2)) * L;
    if (g2 >= 0.0) {
        ch = std::cosh(s);
        shc = s < 1e-4 ? 1.0 + s * s / 6.0 : std::sinh(s) / s;
    } else {
        ch = std::cos(s);
        shc = s < 1e-4 ? 1.0 - s * s / 6.0 : std::sin(s) / s;
    }

    Matrix2 m;
    m.v[0] = m.v[3] = ch;
    if (mode.family == Family::TE) {
        m.v[1] = kJ * omega * kMu0 * L * shc;
        m.v[2] = g2 * L * shc / (kJ * omega * kMu0);
    } else {
        const double eps = kEps0 * segment.eps_r;
        m.v[1] = g2 * L * shc / (kJ * omega * eps);
        m.v[2] = kJ * omega * eps * L * shc;
    }
    return m;
}

/// End-to-end transfer for a unit wave incident from the input region, with only
/// the outgoing solution in the output region. End regions may be evanescent.
inline CascadeResult cascade_transfer(double radius, const ModeId& mode, double f, std::span<const Segment> segments,
                                      const EndRegions& ends = {}) {
    if (segments.empty()) throw DomainError("cascade needs at least one segment");
    CascadeResult r;
    r.mode = mode;
    r.f = f;
    for (const auto& s : segments) r.total = r.total * segment_matrix(radius, mode, f, s);

    const cplx z_in = mode_params(Guide{radius, ends.input_eps_r}, mode, f).impedance;
    const cplx z_out = mode_params(Guide{radius, ends.output_eps_r}, mode, f).impedance;
    const auto& M = r.total;
    const cplx den = M.a() + M.b() / z_out + M.c() * z_in + M.d() * z_in / z_out;
    r.transmission = 2.0 / den;
    r.reflection = (M.a() + M.b() / z_out - M.c() * z_in - M.d() * z_in / z_out) / den;

    const double omega = 2.0 * kPi * f;
    double prev_eps = ends.input_eps_r;
    double prev_g2 = detail::gamma_squared(radius, mode, f, prev_eps);
    auto step = [&](double eps) {
        const double g2 = detail::gamma_squared(radius, mode, f, eps);
        r.interface_reflections.push_back(
            detail::interface_reflection(mode.family, omega, prev_g2, prev_eps, g2, eps));
        prev_eps = eps;
        prev_g2 = g2;
    };
    for (const auto& s : segments) step(s.eps_r);
    step(ends.output_eps_r);
    return r;
}

struct SweepPoint {
    double f = 0.0;
    double magnitude = 0.0;
    double phase = 0.0;
};

struct TransmissionSweep {
    std::vector<SweepPoint> points;
    std::optional<double> onset;  // lowest sampled f with |T| > 0.5
};

/// Uniform sweep of |T(f)|. Points within 1e-6 relative of an end-region cutoff
/// are skipped.
inline TransmissionSweep transmission_sweep(double radius, const ModeId& mode, double f_start, double f_stop,
                                            int steps, std::span<const Segment> segments, const EndRegions& ends = {}) {
    if (steps < 1) throw DomainError("sweep needs at least one step");
    if (!(f_start > 0.0) || !(f_stop >= f_start)) throw DomainError("sweep range must satisfy 0 < f_start <= f_stop");
    const double fc_in = cutoff_frequency(Guide{radius, ends.input_eps_r}, mode);
    const double fc_out = cutoff_frequency(Guide{radius, ends.output_eps_r}, mode);

    TransmissionSweep sweep;
    for (int i = 0; i < steps; ++i) {
        const double f = steps == 1 ? f_start : f_start + (f_stop - f_start) * i / (steps - 1);
        if (std::abs(f - fc_in) < 1e-6 * fc_in || std::abs(f - fc_out) < 1e-6 * fc_out) continue;
        const auto r = cascade_transfer(radius, mode, f, segments, ends);
        sweep.points.push_back({f, std::abs(r.transmission), std::arg(r.transmission)});
        if (!sweep.onset && sweep.points.back().magnitude > 0.5) sweep.onset = f;
    }
    return sweep;
}

}  // namespace oamwg
