#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hirota {

struct AiryTail {
    double ai;
    double ai_prime;
};

/// Ai(s) and Ai'(s) for s >= 8 from the exponential asymptotic expansion,
/// summed to its smallest term. At s = 8 the optimally truncated series is
/// accurate to ~1e-14 relative; accuracy improves rapidly for larger s.
inline AiryTail airy_tail(double s) {
    if (!(s >= 8.0)) throw std::domain_error("airy_tail: requires s >= 8");
    const double zeta = (2.0 / 3.0) * std::pow(s, 1.5);
    double u = 1.0;           // u_k
    double tu = 1.0, tv = 1.0; // current terms
    double su = 1.0, sv = 1.0; // partial sums
    double prev_mag = 1.0;
    for (int k = 1; k <= 200; ++k) {
        u *= (6.0 * k - 1.0) * (6.0 * k - 5.0) / (72.0 * k);
        const double v = -u * (6.0 * k + 1.0) / (6.0 * k - 1.0);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double zk = std::pow(zeta, static_cast<double>(k));
        tu = sign * u / zk;
        tv = sign * v / zk;
        if (std::abs(tu) >= prev_mag) break; // series started diverging
        su += tu;
        sv += tv;
        prev_mag = std::abs(tu);
        if (std::abs(tu) < 1e-18) break;
    }
    const double pref = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
    return {pref * su / std::pow(s, 0.25), -pref * sv * std::pow(s, 0.25)};
}

} // namespace hirota
