#pragma once

// Bessel functions of the first kind J_n(x), their derivatives and positive roots.
//
// Evaluation:
//   |x| <= 12  ascending power series with compensated summation
//   |x| >  12  Miller backward recurrence normalised by J_0 + 2*sum J_2k = 1
// Both branches stay within 1e-12 absolute of J_n for |x| <= 50.
//
// Roots are bracketed by a pi/4 scan and bisected to 1e-12 interval width.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "oamwg/constants.hpp"
#include "oamwg/errors.hpp"

namespace oamwg {

enum class RootKind { OfJ, OfJPrime };

namespace detail {

inline constexpr double kSeriesLimit = 12.0;

// Neumaier compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            carry += (sum - t) + v;
        else
            carry += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

inline double bessel_j_series(int n, double x) {
    const double half = 0.5 * x;
    const double half_sq = half * half;
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= half / k;
    if (term == 0.0) return 0.0;

    CompensatedSum acc;
    acc.add(term);
    for (int k = 1; k < 500; ++k) {
        term *= -half_sq / (static_cast<double>(k) * (k + n));
        acc.add(term);
        if (std::abs(term) < 1e-17 * std::abs(acc.value()) && k > half) break;
    }
    return acc.value();
}

inline double bessel_j_miller(int n, double x) {
    const int top = std::max(n, static_cast<int>(x));
    int start = top + 30 + static_cast<int>(std::sqrt(60.0 * top));
    start += start % 2;

    constexpr double kBig = 1e250;
    constexpr double kSmall = 1e-250;
    const double two_over_x = 2.0 / x;
    double next = 0.0;      // J_{k+1}
    double current = 1e-300;  // J_k, arbitrary seed
    double result = 0.0;
    double norm = 0.0;
    for (int k = start; k > 0; --k) {
        const double prev = k * two_over_x * current - next;  // J_{k-1}
        next = current;
        current = prev;
        if (std::abs(current) > kBig) {
            current *= kSmall;
            next *= kSmall;
            result *= kSmall;
            norm *= kSmall;
        }
        const int order = k - 1;
        if (order == n) result = current;
        if (order == 0)
            norm += current;
        else if (order % 2 == 0)
            norm += 2.0 * current;
    }
    return result / norm;
}

}  // namespace detail

/// J_n(x) for integer order n >= 0.
inline double bessel_j(int n, double x) {
    if (n < 0) throw DomainError("bessel_j: negative order " + std::to_string(n));
    if (!std::isfinite(x)) throw DomainError("bessel_j: non-finite argument");
    if (x < 0.0) return (n % 2 ? -1.0 : 1.0) * bessel_j(n, -x);
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    if (x <= detail::kSeriesLimit) return detail::bessel_j_series(n, x);
    return detail::bessel_j_miller(n, x);
}

/// dJ_n/dx via (J_{n-1} - J_{n+1}) / 2, with J_0' = -J_1.
inline double bessel_j_prime(int n, double x) {
    if (n < 0) throw DomainError("bessel_j_prime: negative order " + std::to_string(n));
    if (!std::isfinite(x)) throw DomainError("bessel_j_prime: non-finite argument");
    if (n == 0) return -bessel_j(1, x);
    return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

/// Lazily populated, thread-safe table of positive Bessel roots.
///
/// For RootKind::OfJPrime with n = 0 the trivial root x = 0 is excluded, so
/// root(0, 1, OfJPrime) ~ 3.8317.
class BesselRootTable {
public:
    double root(int n, int m, RootKind kind) {
        if (n < 0) throw DomainError("bessel_root: negative order " + std::to_string(n));
        if (m < 1) throw DomainError("bessel_root: root index must be >= 1, got " + std::to_string(m));
        std::lock_guard lock(mutex_);
        auto& roots = table_[{n, kind}];
        if (static_cast<int>(roots.size()) < m) extend(n, kind, m, roots);
        return roots[m - 1];
    }

    static BesselRootTable& global() {
        static BesselRootTable table;
        return table;
    }

private:
    static double eval(int n, RootKind kind, double x) {
        return kind == RootKind::OfJ ? bessel_j(n, x) : bessel_j_prime(n, x);
    }

    static void extend(int n, RootKind kind, int count, std::vector<double>& roots) {
        constexpr double kStep = kPi / 4.0;
        double lo = roots.empty() ? 0.5 * std::max(n, 1) : roots.back() + 1e-9;
        double f_lo = eval(n, kind, lo);
        while (static_cast<int>(roots.size()) < count) {
            const double hi = lo + kStep;
            const double f_hi = eval(n, kind, hi);
            if (f_lo == 0.0) {
                roots.push_back(lo);
            } else if (std::signbit(f_lo) != std::signbit(f_hi)) {
                roots.push_back(bisect(n, kind, lo, hi, f_lo));
            }
            lo = hi;
            f_lo = f_hi;
        }
    }

    static double bisect(int n, RootKind kind, double lo, double hi, double f_lo) {
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double f_mid = eval(n, kind, mid);
            if (f_mid == 0.0) return mid;
            if (std::signbit(f_mid) == std::signbit(f_lo)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }

    std::mutex mutex_;
    std::map<std::tuple<int, RootKind>, std::vector<double>> table_;
};

/// m-th positive root of J_n (OfJ) or J_n' (OfJPrime).
inline double bessel_root(int n, int m, RootKind kind) {
    return BesselRootTable::global().root(n, m, kind);
}

}  // namespace oamwg
