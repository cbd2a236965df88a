#pragma once

// Modal superpositions, transverse field maps, and topological-charge analysis.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oamwg/constants.hpp"
#include "oamwg/errors.hpp"
#include "oamwg/modes.hpp"

namespace oamwg {

struct Constituent {
    ModeId mode;
    cplx weight{1.0, 0.0};
};

/// Weighted sum of modal fields, evaluated analytically at any point in the guide.
class Superposition {
public:
    Superposition(const Guide& guide, std::span<const Constituent> constituents, double f)
        : guide_(guide), f_(f), constituents_(constituents.begin(), constituents.end()) {
        if (constituents_.empty()) throw DomainError("superposition needs at least one constituent");
        fields_.reserve(constituents_.size());
        for (const auto& c : constituents_) fields_.emplace_back(guide, c.mode, f);
    }

    const Guide& guide() const { return guide_; }
    double frequency() const { return f_; }
    const std::vector<Constituent>& constituents() const { return constituents_; }

    FieldVector at(const CylPoint& p) const {
        FieldVector sum = fields_.front().at(p, constituents_.front().weight);
        for (std::size_t i = 1; i < fields_.size(); ++i) sum += fields_[i].at(p, constituents_[i].weight);
        return sum;
    }

private:
    Guide guide_;
    double f_;
    std::vector<Constituent> constituents_;
    std::vector<ModeField> fields_;
};

/// N x N Cartesian samples over [-a, a]^2. Points with rho > a hold no sample.
struct FieldMap {
    double radius = 0.0;
    double eps_r = 1.0;
    double f = 0.0;  // 0 when unknown (e.g. parsed from a file)
    double z = 0.0;
    int n = 0;
    std::vector<Constituent> constituents;  // empty when unknown
    std::vector<std::optional<FieldVector>> samples;  // row-major, y outer

    double coord(int i) const { return -radius + 2.0 * radius * i / (n - 1); }
    const std::optional<FieldVector>& at(int ix, int iy) const { return samples[static_cast<std::size_t>(iy) * n + ix]; }
};

inline FieldMap synthesize(const Guide& guide, std::span<const Constituent> constituents, double f, int n,
                           double z = 0.0) {
    if (n < 16) throw DomainError("field map grid must be at least 16 x 16");
    const Superposition sup(guide, constituents, f);
    FieldMap map;
    map.radius = guide.radius;
    map.eps_r = guide.eps_r;
    map.f = f;
    map.z = z;
    map.n = n;
    map.constituents = sup.constituents();
    map.samples.resize(static_cast<std::size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy) {
        const double y = map.coord(iy);
        for (int ix = 0; ix < n; ++ix) {
            const double x = map.coord(ix);
            const double rho = std::hypot(x, y);
            if (rho > guide.radius) continue;
            map.samples[static_cast<std::size_t>(iy) * n + ix] = sup.at({rho, std::atan2(y, x), z});
        }
    }
    return map;
}

enum class Component { Ex, Ey, Ez, Erho, Ephi, Hx, Hy, Hz, Eplus, Eminus };

inline std::string to_string(Component c) {
    switch (c) {
        case Component::Ex: return "Ex";
        case Component::Ey: return "Ey";
        case Component::Ez: return "Ez";
        case Component::Erho: return "Erho";
        case Component::Ephi: return "Ephi";
        case Component::Hx: return "Hx";
        case Component::Hy: return "Hy";
        case Component::Hz: return "Hz";
        case Component::Eplus: return "Eplus";
        case Component::Eminus: return "Eminus";
    }
    return "?";
}

inline cplx component_value(const FieldVector& v, Component c) {
    switch (c) {
        case Component::Ex: return v.ex();
        case Component::Ey: return v.ey();
        case Component::Ez: return v.e_z;
        case Component::Erho: return v.e_rho;
        case Component::Ephi: return v.e_phi;
        case Component::Hx: return v.hx();
        case Component::Hy: return v.hy();
        case Component::Hz: return v.h_z;
        case Component::Eplus: return v.e_plus();
        case Component::Eminus: return v.e_minus();
    }
    return {};
}

/// Complex samples on a ring at azimuths phi_k = phi0 + 2 pi k / N.
struct RingSamples {
    double rho = 0.0;
    double phi0 = 0.0;
    std::vector<cplx> values;

    std::size_t size() const { return values.size(); }
    double phi(std::size_t k) const { return phi0 + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(values.size()); }
};

namespace detail {

inline void check_ring(double radius, double rho0, int n_phi) {
    if (!(rho0 > 0.0) || !(rho0 < radius))
        throw DomainError("ring radius must lie strictly inside (0, a), got " + std::to_string(rho0));
    if (n_phi < 4) throw DomainError("ring needs at least 4 samples");
}

// Bilinear interpolation of a Cartesian component from the map grid.
inline cplx interpolate(const FieldMap& map, Component c, double x, double y) {
    const double scale = (map.n - 1) / (2.0 * map.radius);
    const double tx = (x + map.radius) * scale;
    const double ty = (y + map.radius) * scale;
    const int ix = std::clamp(static_cast<int>(std::floor(tx)), 0, map.n - 2);
    const int iy = std::clamp(static_cast<int>(std::floor(ty)), 0, map.n - 2);
    const double u = tx - ix;
    const double v = ty - iy;
    const auto& s00 = map.at(ix, iy);
    const auto& s10 = map.at(ix + 1, iy);
    const auto& s01 = map.at(ix, iy + 1);
    const auto& s11 = map.at(ix + 1, iy + 1);
    if (!s00 || !s10 || !s01 || !s11) throw DomainError("ring point falls in a cell without samples");
    const double phi = std::atan2(y, x);
    auto value = [&](const FieldVector& fv) {
        // Re-project using the ring azimuth so cylindrical components refer to the ring point.
        FieldVector cart = fv;
        const cplx ex = fv.ex(), ey = fv.ey(), hx = fv.hx(), hy = fv.hy();
        cart.phi = phi;
        cart.e_rho = ex * std::cos(phi) + ey * std::sin(phi);
        cart.e_phi = -ex * std::sin(phi) + ey * std::cos(phi);
        cart.h_rho = hx * std::cos(phi) + hy * std::sin(phi);
        cart.h_phi = -hx * std::sin(phi) + hy * std::cos(phi);
        return component_value(cart, c);
    };
    return (1 - u) * (1 - v) * value(*s00) + u * (1 - v) * value(*s10) + (1 - u) * v * value(*s01) +
           u * v * value(*s11);
}

}  // namespace detail

/// Samples `component` analytically on a ring of radius rho0.
inline RingSamples ring_extract(const Superposition& sup, Component component, double rho0, int n_phi,
                                double z = 0.0, double phi0 = 0.0) {
    detail::check_ring(sup.guide().radius, rho0, n_phi);
    RingSamples ring{rho0, phi0, std::vector<cplx>(static_cast<std::size_t>(n_phi))};
    for (std::size_t k = 0; k < ring.values.size(); ++k)
        ring.values[k] = component_value(sup.at({rho0, ring.phi(k), z}), component);
    return ring;
}

/// Ring samples from a field map: analytic when the map knows its constituents,
/// bilinear interpolation of the stored grid otherwise.
inline RingSamples ring_extract(const FieldMap& map, Component component, double rho0, int n_phi,
                                double phi0 = 0.0) {
    detail::check_ring(map.radius, rho0, n_phi);
    if (!map.constituents.empty() && map.f > 0.0) {
        const Superposition sup(Guide{map.radius, map.eps_r}, map.constituents, map.f);
        return ring_extract(sup, component, rho0, n_phi, map.z, phi0);
    }
    RingSamples ring{rho0, phi0, std::vector<cplx>(static_cast<std::size_t>(n_phi))};
    for (std::size_t k = 0; k < ring.values.size(); ++k) {
        const double phi = ring.phi(k);
        ring.values[k] = detail::interpolate(map, component, rho0 * std::cos(phi), rho0 * std::sin(phi));
    }
    return ring;
}

struct Winding {
    int charge = 0;
    double raw = 0.0;
    double residual = 0.0;
};

/// Net phase turns around the ring, counted counter-clockwise.
inline Winding phase_winding(const RingSamples& ring) {
    if (ring.size() < 2) throw DomainError("phase_winding needs at least 2 samples");
    double peak = 0.0;
    double floor = INFINITY;
    for (const auto& v : ring.values) {
        peak = std::max(peak, std::abs(v));
        floor = std::min(floor, std::abs(v));
    }
    if (!(peak > 0.0) || floor <= 1e-9 * peak)
        throw UndefinedPhaseError("ring has a near-zero sample; phase is undefined");

    // A cyclic sum of wrapped steps is always a whole number of turns; steps
    // beyond 3 pi / 4 are where the unwrap becomes ambiguous, so reject them.
    constexpr double kMaxStep = 0.75 * kPi;
    double total = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t k = 0; k < n; ++k) {
        double step = std::arg(ring.values[(k + 1) % n]) - std::arg(ring.values[k]);
        step = std::remainder(step, 2.0 * kPi);
        if (step == -kPi) step = kPi;  // wrap into (-pi, pi]
        if (std::abs(step) > kMaxStep)
            throw NonIntegerWindingError("phase step of " + std::to_string(step) + " rad between samples " +
                                             std::to_string(k) + " and " + std::to_string((k + 1) % n) +
                                             " is ambiguous; ring undersampled or charge mixed",
                                         total / (2.0 * kPi));
        total += step;
    }
    Winding w;
    w.raw = total / (2.0 * kPi);
    w.charge = static_cast<int>(std::lround(w.raw));
    w.residual = std::abs(w.raw - w.charge);
    if (w.residual >= 0.05)
        throw NonIntegerWindingError("phase winding " + std::to_string(w.raw) + " is not an integer", w.raw);
    return w;
}

/// Azimuthal power spectrum P_q = |(1/N) sum_k v_k e^{-j q phi_k}|^2.
struct ChargeSpectrum {
    int q_max = 0;
    std::vector<double> power;  // index q + q_max
    int dominant_q = 0;

    double at(int q) const { return power[static_cast<std::size_t>(q + q_max)]; }
    double total() const {
        double s = 0.0;
        for (double p : power) s += p;
        return s;
    }
};

inline ChargeSpectrum charge_spectrum(const RingSamples& ring, int q_max) {
    if (q_max < 0) throw DomainError("q_max must be >= 0");
    if (ring.size() < static_cast<std::size_t>(4 * (q_max + 1)))
        throw DomainError("ring undersampled: need N_phi >= 4 (q_max + 1)");
    ChargeSpectrum s;
    s.q_max = q_max;
    s.power.resize(static_cast<std::size_t>(2 * q_max + 1));
    const double inv_n = 1.0 / static_cast<double>(ring.size());
    for (int q = -q_max; q <= q_max; ++q) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < ring.size(); ++k) acc += ring.values[k] * std::polar(1.0, -q * ring.phi(k));
        s.power[static_cast<std::size_t>(q + q_max)] = std::norm(acc * inv_n);
    }

    // Ties (within 1e-12 relative) go to smaller |q|, then to positive q.
    const double best = *std::max_element(s.power.begin(), s.power.end());
    auto better = [](int a, int b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a > b; };
    bool found = false;
    for (int q = -q_max; q <= q_max; ++q) {
        if (s.at(q) < best * (1.0 - 1e-12)) continue;
        if (!found || better(q, s.dominant_q)) s.dominant_q = q;
        found = true;
    }
    return s;
}

}  // namespace oamwg
