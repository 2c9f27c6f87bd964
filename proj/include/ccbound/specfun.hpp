#pragma once

#include "ccbound/common.hpp"

namespace ccbound {

struct SpecialFnConfig {
    double accuracy = 1e-12; // target relative accuracy, must be in (0, 1e-6]
    int max_iter = 300;      // cap for series, continued fractions, Halley steps
};

/// log Gamma(x) for x > 0 (Lanczos approximation).
double ln_gamma(double x, const SpecialFnConfig& cfg = {});

/// Regularized upper incomplete gamma Q(x,y) = Gamma(x,y)/Gamma(x) in [0,1],
/// for x > 0, y >= 0. Series for y < x+1, continued fraction otherwise.
double reg_gamma_q(double x, double y, const SpecialFnConfig& cfg = {});

/// Principal Lambert W branch: w >= -1 with w e^w = x, for x >= -1/e.
/// Halley iteration with a series fallback near the branch point.
double lambert_w0(double x, const SpecialFnConfig& cfg = {});

} // namespace ccbound
