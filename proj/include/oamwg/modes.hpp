#pragma once

// Circular PEC waveguide eigenmodes.
//
// Conventions: time dependence e^{+j w t}, propagation e^{-gamma z}, with
// gamma = alpha (evanescent) or j*beta (propagating), Re, Im >= 0.
//
//   TE:  H_z = A J_l(k_c rho) c(phi)          TM:  E_z = A J_l(k_c rho) c(phi)
//        E_rho = j (w mu/k_c) A g(x) s(phi)        E_rho = -(gamma/k_c) A J_l'(x) c(phi)
//        E_phi = j (w mu/k_c) A J_l'(x) c(phi)     E_phi =  (gamma/k_c) A g(x) s(phi)
//
//   H_rho = -E_phi / Z,  H_phi = E_rho / Z,  x = k_c rho,  g(x) = l J_l(x) / x.
//
// The azimuthal pair (c, s) satisfies dc/dphi = -l s:
//   cos:  (cos l phi,  sin l phi)        sin:  (sin l phi, -cos l phi)
//   rot+: (e^{+j l phi}, -j e^{+j l phi}) rot-: (e^{-j l phi}, j e^{-j l phi})
// so rot+- = cos +- j sin field-for-field.

#include <algorithm>
#include <cmath>
#include <compare>
#include <span>
#include <string>
#include <vector>

#include "oamwg/constants.hpp"
#include "oamwg/errors.hpp"
#include "oamwg/specfun.hpp"

namespace oamwg {

enum class Family { TE, TM };
enum class Orientation { Cos, Sin, RotPlus, RotMinus };

inline std::string to_string(Family f) { return f == Family::TE ? "TE" : "TM"; }

inline std::string to_string(Orientation o) {
    switch (o) {
        case Orientation::Cos: return "cos";
        case Orientation::Sin: return "sin";
        case Orientation::RotPlus: return "rot+";
        case Orientation::RotMinus: return "rot-";
    }
    return "?";
}

/// Uniformly filled circular cross-section. mu_r is fixed at 1.
struct Guide {
    double radius = 0.0;  // m
    double eps_r = 1.0;

    void validate() const {
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw DomainError("guide radius must be positive, got " + std::to_string(radius));
        if (!(eps_r >= 1.0) || !std::isfinite(eps_r))
            throw DomainError("guide eps_r must be >= 1, got " + std::to_string(eps_r));
    }
};

struct ModeId {
    Family family = Family::TE;
    int l = 0;
    int m = 1;
    Orientation orientation = Orientation::Cos;

    void validate() const {
        if (l < 0) throw DomainError("mode azimuthal index l must be >= 0");
        if (m < 1) throw DomainError("mode radial index m must be >= 1");
        if (l == 0 && orientation != Orientation::Cos)
            throw DomainError(name() + ": sin and rotating orientations require l >= 1");
    }

    /// "TE21"-style name; indices with more than one digit are separated by '_'.
    std::string name() const {
        std::string s = to_string(family) + std::to_string(l);
        if (l > 9 || m > 9) s += "_";
        return s + std::to_string(m);
    }
    std::string label() const { return name() + " " + to_string(orientation); }

    ModeId with(Orientation o) const { return {family, l, m, o}; }

    friend auto operator<=>(const ModeId&, const ModeId&) = default;
};

inline constexpr ModeId te_mode(int l, int m, Orientation o = Orientation::Cos) { return {Family::TE, l, m, o}; }
inline constexpr ModeId tm_mode(int l, int m, Orientation o = Orientation::Cos) { return {Family::TM, l, m, o}; }

struct ModeParams {
    double k_c = 0.0;  // rad/m
    double f_c = 0.0;  // Hz
    cplx gamma;        // 1/m
    cplx impedance;    // ohm

    bool propagating() const { return gamma.imag() > 0.0; }
};

struct CylPoint {
    double rho = 0.0;  // m
    double phi = 0.0;  // rad
    double z = 0.0;    // m
};

/// Six complex field components in local cylindrical axes at azimuth `phi`.
struct FieldVector {
    cplx e_rho, e_phi, e_z;  // V/m
    cplx h_rho, h_phi, h_z;  // A/m
    double phi = 0.0;

    cplx ex() const { return e_rho * std::cos(phi) - e_phi * std::sin(phi); }
    cplx ey() const { return e_rho * std::sin(phi) + e_phi * std::cos(phi); }
    cplx hx() const { return h_rho * std::cos(phi) - h_phi * std::sin(phi); }
    cplx hy() const { return h_rho * std::sin(phi) + h_phi * std::cos(phi); }
    cplx e_plus() const { return ex() + kJ * ey(); }
    cplx e_minus() const { return ex() - kJ * ey(); }

    FieldVector& operator+=(const FieldVector& o) {
        e_rho += o.e_rho; e_phi += o.e_phi; e_z += o.e_z;
        h_rho += o.h_rho; h_phi += o.h_phi; h_z += o.h_z;
        return *this;
    }
    FieldVector& operator*=(cplx s) {
        e_rho *= s; e_phi *= s; e_z *= s;
        h_rho *= s; h_phi *= s; h_z *= s;
        return *this;
    }
};

/// Transverse eigenvalue chi: root of J_l' (TE) or J_l (TM).
inline double transverse_root(Family family, int l, int m) {
    return bessel_root(l, m, family == Family::TE ? RootKind::OfJPrime : RootKind::OfJ);
}

inline double cutoff_frequency(const Guide& guide, const ModeId& mode) {
    guide.validate();
    mode.validate();
    const double chi = transverse_root(mode.family, mode.l, mode.m);
    return kSpeedOfLight * chi / (2.0 * kPi * guide.radius * std::sqrt(guide.eps_r));
}

inline ModeParams mode_params(const Guide& guide, const ModeId& mode, double f) {
    if (!(f > 0.0) || !std::isfinite(f)) throw DomainError("frequency must be positive");
    guide.validate();
    mode.validate();
    ModeParams p;
    p.k_c = transverse_root(mode.family, mode.l, mode.m) / guide.radius;
    p.f_c = kSpeedOfLight * p.k_c / (2.0 * kPi * std::sqrt(guide.eps_r));
    const double omega = 2.0 * kPi * f;
    const double k = omega * std::sqrt(guide.eps_r) / kSpeedOfLight;
    if (std::abs(k - p.k_c) / p.k_c < 1e-12)
        throw CutoffSingularityError(mode.name() + ": frequency coincides with cutoff");
    const double gamma_sq = (p.k_c - k) * (p.k_c + k);
    p.gamma = gamma_sq > 0.0 ? cplx(std::sqrt(gamma_sq), 0.0) : cplx(0.0, std::sqrt(-gamma_sq));
    if (mode.family == Family::TE)
        p.impedance = kJ * omega * kMu0 / p.gamma;
    else
        p.impedance = p.gamma / (kJ * omega * kEps0 * guide.eps_r);
    return p;
}

namespace detail {

// l J_l(x) / x and J_l'(x), with two-term series near the axis.
struct RadialTerms {
    double j;      // J_l(x)
    double j_over_x;  // l J_l(x) / x
    double jp;     // J_l'(x)
};

inline RadialTerms radial_terms(int l, double x) {
    RadialTerms t{};
    t.j = bessel_j(l, x);
    if (x < 1e-4) {
        const double x2 = x * x;
        if (l == 0) {
            t.j_over_x = 0.0;
            t.jp = -0.5 * x * (1.0 - x2 / 8.0);
        } else {
            const double lead = std::pow(0.5 * x, l - 1) / (2.0 * std::tgamma(static_cast<double>(l)));
            t.j_over_x = lead * (1.0 - x2 / (4.0 * (l + 1)));
            t.jp = lead * (1.0 - (l + 2) * x2 / (4.0 * l * (l + 1)));
        }
    } else {
        t.j_over_x = l * t.j / x;
        t.jp = bessel_j_prime(l, x);
    }
    return t;
}

struct Angular {
    cplx c;
    cplx s;
};

inline Angular angular(Orientation o, int l, double phi) {
    const double cl = std::cos(l * phi);
    const double sl = std::sin(l * phi);
    switch (o) {
        case Orientation::Cos: return {cl, sl};
        case Orientation::Sin: return {sl, -cl};
        case Orientation::RotPlus: return {cplx(cl, sl), cplx(sl, -cl)};
        case Orientation::RotMinus: return {cplx(cl, -sl), cplx(sl, cl)};
    }
    return {};
}

}  // namespace detail

/// One normalised eigenmode at a fixed frequency.
///
/// Propagating modes carry Re of the integral of (e x h*).z over the cross-section
/// equal to 1 W per unit amplitude in the cos/sin orientations; evanescent modes
/// have unit peak |H_z| (TE) or |E_z| (TM). Rotating orientations reuse the
/// linear normalisation.
class ModeField {
public:
    ModeField(const Guide& guide, const ModeId& mode, double f)
        : guide_(guide), mode_(mode), f_(f), params_(mode_params(guide, mode, f)) {
        const double omega = 2.0 * kPi * f;
        const double chi = params_.k_c * guide.radius;
        transverse_scale_ = mode.family == Family::TE ? kJ * omega * kMu0 / params_.k_c
                                                      : -params_.gamma / params_.k_c;
        if (params_.propagating()) {
            const double a2 = guide.radius * guide.radius;
            const double jl = bessel_j(mode.l, chi);
            const double jp = bessel_j_prime(mode.l, chi);
            const double radial = mode.family == Family::TE
                                      ? 0.5 * a2 * (1.0 - double(mode.l * mode.l) / (chi * chi)) * jl * jl
                                      : 0.5 * a2 * jp * jp;
            const double angular = mode.l == 0 ? 2.0 * kPi : kPi;
            const double power = (1.0 / params_.impedance).real() * std::norm(transverse_scale_) * angular * radial;
            norm_ = 1.0 / std::sqrt(power);
        } else {
            const double peak =
                mode.l == 0 ? 1.0 : std::abs(bessel_j(mode.l, bessel_root(mode.l, 1, RootKind::OfJPrime)));
            norm_ = 1.0 / peak;
        }
    }

    const Guide& guide() const { return guide_; }
    const ModeId& mode() const { return mode_; }
    double frequency() const { return f_; }
    const ModeParams& params() const { return params_; }
    double normalization() const { return norm_; }

    FieldVector at(const CylPoint& p, cplx amplitude = 1.0) const {
        if (!(p.rho >= 0.0) || p.rho > guide_.radius)
            throw DomainError("field point rho = " + std::to_string(p.rho) + " outside [0, a]");
        const auto r = detail::radial_terms(mode_.l, params_.k_c * p.rho);
        const auto ang = detail::angular(mode_.orientation, mode_.l, p.phi);
        const cplx a = amplitude * norm_ * std::exp(-params_.gamma * p.z);

        FieldVector v;
        v.phi = p.phi;
        if (mode_.family == Family::TE) {
            v.h_z = a * r.j * ang.c;
            v.e_rho = transverse_scale_ * a * r.j_over_x * ang.s;
            v.e_phi = transverse_scale_ * a * r.jp * ang.c;
        } else {
            v.e_z = a * r.j * ang.c;
            v.e_rho = transverse_scale_ * a * r.jp * ang.c;
            v.e_phi = -transverse_scale_ * a * r.j_over_x * ang.s;
        }
        v.h_rho = -v.e_phi / params_.impedance;
        v.h_phi = v.e_rho / params_.impedance;
        return v;
    }

private:
    Guide guide_;
    ModeId mode_;
    double f_;
    ModeParams params_;
    cplx transverse_scale_;
    double norm_ = 1.0;
};

inline FieldVector eval_field(const Guide& guide, const ModeId& mode, double f, const CylPoint& point,
                              cplx amplitude = 1.0) {
    return ModeField(guide, mode, f).at(point, amplitude);
}

struct CatalogEntry {
    ModeId mode;
    ModeParams params;
};

/// TE/TM modes with cutoff below `f`, ascending by cutoff. Each (family, l, m)
/// appears once per requested orientation; l = 0 modes only as cos.
inline std::vector<CatalogEntry> list_propagating(const Guide& guide, double f, int l_max, int m_max,
                                                  std::span<const Orientation> orientations = {}) {
    if (l_max < 1 || m_max < 1) throw DomainError("list_propagating: l_max and m_max must be >= 1");
    static constexpr Orientation kCosOnly[] = {Orientation::Cos};
    if (orientations.empty()) orientations = kCosOnly;

    std::vector<CatalogEntry> out;
    for (Family family : {Family::TE, Family::TM}) {
        for (int l = 0; l <= l_max; ++l) {
            for (int m = 1; m <= m_max; ++m) {
                const ModeId base{family, l, m, Orientation::Cos};
                if (!(cutoff_frequency(guide, base) < f)) continue;
                const auto params = mode_params(guide, base, f);
                for (Orientation o : orientations) {
                    if (l == 0 && o != Orientation::Cos) continue;
                    out.push_back({base.with(o), params});
                }
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
        if (a.params.f_c != b.params.f_c) return a.params.f_c < b.params.f_c;
        return a.mode < b.mode;
    });
    return out;
}

}  // namespace oamwg
