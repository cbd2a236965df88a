#pragma once

#include <complex>
#include <numbers>

namespace oamwg {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;            // m/s, exact
inline constexpr double kMu0 = 4.0e-7 * kPi;                    // H/m
inline constexpr double kEps0 = 1.0 / (kMu0 * kSpeedOfLight * kSpeedOfLight);  // F/m

inline constexpr cplx kJ{0.0, 1.0};

}  // namespace oamwg
