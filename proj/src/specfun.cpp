#include "ccbound/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ccbound {

namespace {

void check_cfg(const SpecialFnConfig& cfg, const char* who) {
    if (!(cfg.accuracy > 0.0) || cfg.accuracy > 1e-6)
        throw ValidationError(std::string(who) + ": accuracy must be in (0, 1e-6]");
    if (cfg.max_iter < 1)
        throw ValidationError(std::string(who) + ": max_iter must be positive");
}

// Lanczos g=7, n=9 coefficients (double-precision standard set).
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

} // namespace

double ln_gamma(double x, const SpecialFnConfig& cfg) {
    check_cfg(cfg, "ln_gamma");
    if (!(x > 0.0)) throw ValidationError("ln_gamma: x must be positive, got " + std::to_string(x));
    if (x < 0.5) {
        // Reflection keeps the Lanczos argument away from the poles.
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - ln_gamma(1.0 - x, cfg);
    }
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double reg_gamma_q(double x, double y, const SpecialFnConfig& cfg) {
    check_cfg(cfg, "reg_gamma_q");
    if (!(x > 0.0))
        throw ValidationError("reg_gamma_q: x must be positive, got " + std::to_string(x));
    if (!(y >= 0.0))
        throw ValidationError("reg_gamma_q: y must be nonnegative, got " + std::to_string(y));
    if (y == 0.0) return 1.0;

    const double log_prefactor = x * std::log(y) - y - ln_gamma(x, cfg);
    if (y < x + 1.0) {
        // P(x,y) via the lower series, Q = 1 - P.
        double term = 1.0 / x;
        double sum = term;
        for (int n = 1; n <= cfg.max_iter; ++n) {
            term *= y / (x + n);
            sum += term;
            if (term < sum * cfg.accuracy)
                return 1.0 - sum * std::exp(log_prefactor);
        }
        throw Error("reg_gamma_q: series did not converge for x=" + std::to_string(x) +
                    ", y=" + std::to_string(y));
    }
    // Q(x,y) via the Lentz continued fraction.
    const double tiny = 1e-300;
    double b = y + 1.0 - x;
    double c = 1.0 / tiny;
    double d = 1.0 / (b == 0.0 ? tiny : b);
    double h = d;
    for (int n = 1; n <= cfg.max_iter; ++n) {
        const double an = -static_cast<double>(n) * (n - x);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < cfg.accuracy) return h * std::exp(log_prefactor);
    }
    throw Error("reg_gamma_q: continued fraction did not converge for x=" + std::to_string(x) +
                ", y=" + std::to_string(y));
}

double lambert_w0(double x, const SpecialFnConfig& cfg) {
    check_cfg(cfg, "lambert_w0");
    const double branch_point = -std::exp(-1.0);
    if (!(x >= branch_point)) {
        if (x >= branch_point * (1.0 + 1e-12)) return -1.0;
        throw ValidationError("lambert_w0: x must be at least -1/e, got " + std::to_string(x));
    }
    if (x == 0.0) return 0.0;

    double w;
    const double p2 = 2.0 * (std::numbers::e * x + 1.0);
    if (p2 < 1e-2) {
        // Series around the branch point in p = sqrt(2(ex+1)).
        const double p = std::sqrt(p2);
        w = -1.0 + p - p2 / 6.0 + 11.0 / 72.0 * p * p2;
        if (p2 < 1e-6) return w;
    } else if (x < std::numbers::e) {
        w = x / (1.0 + x);
    } else {
        const double lx = std::log(x);
        w = lx - std::log(lx);
    }
    for (int n = 0; n < cfg.max_iter; ++n) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        if (f == 0.0 || denom == 0.0) return w;
        const double step = f / denom;
        w -= step;
        if (std::fabs(step) <= cfg.accuracy * (std::fabs(w) + cfg.accuracy)) return w;
    }
    throw Error("lambert_w0: Halley iteration did not converge for x=" + std::to_string(x));
}

} // namespace ccbound
