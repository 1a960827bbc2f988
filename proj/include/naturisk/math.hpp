#pragma once

#include <algorithm>
#include <cmath>

namespace naturisk::math {

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Logistic damage curve: linear build-up plus an accelerating impairment of
// whatever nature is left. d(0.5) = 0.75, d(1) = 1, d(0) = 1/(1+e^5).
inline double damage(double ep, double steepness, double midpoint) {
    return ep + (1.0 - ep) / (1.0 + std::exp(-steepness * (ep - midpoint)));
}

// Probability of crossing an ecological threshold given the mean damage.
// The logistic constants are part of the published form, not tunables.
inline double tipping_probability(double dbar) {
    return (1.0 - dbar) / (1.0 + std::exp(-10.0 * (dbar - 0.5)));
}

// Impairment of the not-yet-damaged share when a tipping point triggers.
inline double tipping_damage(double dbar, double pi) {
    return (1.0 - dbar) * pi;
}

inline double degradation_index(double dbar, double p, double dtp) {
    return std::min(1.0, dbar + p * dtp);
}

} // namespace naturisk::math
