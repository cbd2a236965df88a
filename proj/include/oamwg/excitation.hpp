#pragma once

// Point-dipole model of a monopole array and its projection onto the mode basis.
//
// Each element couples to a mode through its moment projected on the normalised
// modal electric field. Spectra are computed in the linear basis (cos, sin) and
// re-expressed in the rotating basis with
//
//   b_rot+ = (a_cos - j a_sin) / 2,   b_rot- = (a_cos + j a_sin) / 2,
//
// so that a_cos e_cos + a_sin e_sin = b_rot+ e_rot+ + b_rot- e_rot-. For elements
// sharing radius, height and orientation, b_rot+- is proportional to the array
// factor c_{+-l}.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "oamwg/constants.hpp"
#include "oamwg/errors.hpp"
#include "oamwg/modes.hpp"

namespace oamwg {

struct DipoleElement {
    CylPoint position;
    std::array<double, 3> orientation{0.0, 1.0, 0.0};  // (rho-hat, phi-hat, z-hat) at the element
    double amplitude = 1.0;
    double phase = 0.0;  // rad

    cplx excitation() const { return std::polar(amplitude, phase); }
};

struct ArraySpec {
    Guide guide;
    std::vector<DipoleElement> elements;

    void validate() const {
        guide.validate();
        if (elements.empty()) throw DomainError("array needs at least one element");
        for (std::size_t i = 0; i < elements.size(); ++i) {
            const auto& e = elements[i];
            const std::string tag = "element " + std::to_string(i);
            if (!(e.position.rho >= 0.0) || !(e.position.rho < guide.radius))
                throw DomainError(tag + ": rho must satisfy 0 <= rho < a");
            const auto& o = e.orientation;
            if (std::abs(std::sqrt(o[0] * o[0] + o[1] * o[1] + o[2] * o[2]) - 1.0) > 1e-9)
                throw DomainError(tag + ": orientation must be a unit vector");
        }
    }
};

/// Four phi-oriented elements at azimuths (0, 45, 180, 225) degrees. Pair (1, 3)
/// is driven at `alpha` and pair (2, 4) at `beta`.
inline ArraySpec default_paper_array(const Guide& guide, double rho0, double alpha = 0.0, double beta = kPi / 2) {
    if (!(rho0 > 0.0) || !(rho0 < guide.radius)) throw DomainError("array radius must lie inside (0, a)");
    ArraySpec spec{guide, {}};
    const double angles[] = {0.0, kPi / 4, kPi, 5 * kPi / 4};
    const double phases[] = {alpha, beta, alpha, beta};
    for (int k = 0; k < 4; ++k) spec.elements.push_back({{rho0, angles[k], 0.0}, {0.0, 1.0, 0.0}, 1.0, phases[k]});
    return spec;
}

inline cplx coupling_amplitude(const ModeField& field, const DipoleElement& element) {
    const auto e = field.at(element.position);
    const auto& o = element.orientation;
    return element.excitation() * (e.e_rho * o[0] + e.e_phi * o[1] + e.e_z * o[2]);
}

/// Projection of one element on `mode`. For rotating orientations this is the
/// plain projection on that field; excite() derives rotating amplitudes from the
/// linear pair instead.
inline cplx coupling_amplitude(const Guide& guide, const ModeId& mode, double f, const DipoleElement& element) {
    return coupling_amplitude(ModeField(guide, mode, f), element);
}

/// c_q = sum_k w_k e^{-j q phi_k}.
inline cplx array_factor(const ArraySpec& array, int q) {
    cplx c = 0.0;
    for (const auto& e : array.elements) c += e.excitation() * std::polar(1.0, -q * e.position.phi);
    return c;
}

struct SpectrumEntry {
    ModeId mode;
    cplx amplitude;
    bool propagating = false;
    double f_c = 0.0;
};

struct ModeSpectrum {
    double f = 0.0;
    int l_max = 0;
    int m_max = 0;
    std::vector<SpectrumEntry> entries;
    std::vector<std::string> warnings;

    const SpectrumEntry* find(const ModeId& id) const {
        for (const auto& e : entries)
            if (e.mode == id) return &e;
        return nullptr;
    }
    const SpectrumEntry& at(const ModeId& id) const {
        if (const auto* e = find(id)) return *e;
        throw DomainError("mode " + id.label() + " not in spectrum");
    }
};

/// Mode amplitudes for every (family, l <= l_max, m <= m_max). l = 0 modes are
/// reported as cos only; l >= 1 as cos, sin, rot+ and rot-.
inline ModeSpectrum excite(const ArraySpec& array, double f, int l_max, int m_max) {
    array.validate();
    if (l_max < 0 || m_max < 1) throw DomainError("excite: need l_max >= 0 and m_max >= 1");
    ModeSpectrum spec;
    spec.f = f;
    spec.l_max = l_max;
    spec.m_max = m_max;
    const int pumpable = 2 * static_cast<int>(array.elements.size());
    if (l_max < pumpable)
        spec.warnings.push_back("l_max = " + std::to_string(l_max) + " is below 2 x element count (" +
                                std::to_string(pumpable) + "); higher azimuthal orders are truncated");

    auto project = [&](const ModeId& id) {
        const ModeField field(array.guide, id, f);
        cplx sum = 0.0;
        for (const auto& e : array.elements) sum += coupling_amplitude(field, e);
        return std::pair{sum, field.params()};
    };

    for (Family family : {Family::TE, Family::TM}) {
        for (int l = 0; l <= l_max; ++l) {
            for (int m = 1; m <= m_max; ++m) {
                const ModeId base{family, l, m, Orientation::Cos};
                const auto [a_cos, params] = project(base);
                const bool prop = params.propagating();
                spec.entries.push_back({base, a_cos, prop, params.f_c});
                if (l == 0) continue;
                const cplx a_sin = project(base.with(Orientation::Sin)).first;
                spec.entries.push_back({base.with(Orientation::Sin), a_sin, prop, params.f_c});
                spec.entries.push_back({base.with(Orientation::RotPlus), 0.5 * (a_cos - kJ * a_sin), prop, params.f_c});
                spec.entries.push_back({base.with(Orientation::RotMinus), 0.5 * (a_cos + kJ * a_sin), prop, params.f_c});
            }
        }
    }
    return spec;
}

enum class PurityScope { AllPropagating, SameLSubspace };

/// Fraction of power carried by a rotating target mode.
///
/// SameLSubspace: the target's degenerate pair (same family, l, m; rot+ and rot-).
/// AllPropagating: every propagating mode, counted as rot+/rot- for l >= 1 and
/// cos for l = 0 so no power is double counted. A unit rotating amplitude carries
/// twice the power of a unit linear one.
inline double purity(const ModeSpectrum& spectrum, const ModeId& target, PurityScope scope) {
    if (target.orientation != Orientation::RotPlus && target.orientation != Orientation::RotMinus)
        throw DomainError("purity target must be a rotating mode");
    const auto& t = spectrum.at(target);
    auto power = [](const SpectrumEntry& e) { return (e.mode.l == 0 ? 1.0 : 2.0) * std::norm(e.amplitude); };
    double total = 0.0;
    if (scope == PurityScope::SameLSubspace) {
        total = power(spectrum.at(target.with(Orientation::RotPlus))) +
                power(spectrum.at(target.with(Orientation::RotMinus)));
    } else {
        if (!t.propagating) throw DomainError("purity target " + target.label() + " is evanescent");
        for (const auto& e : spectrum.entries) {
            if (!e.propagating) continue;
            const bool counted = e.mode.l == 0 ? e.mode.orientation == Orientation::Cos
                                               : (e.mode.orientation == Orientation::RotPlus ||
                                                  e.mode.orientation == Orientation::RotMinus);
            if (counted) total += power(e);
        }
    }
    if (!(total > 0.0)) throw UndefinedPurityError("no power in purity scope");
    return power(t) / total;
}

}  // namespace oamwg
