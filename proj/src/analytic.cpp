#include "ccbound/analytic.hpp"

#include <cmath>
#include <numbers>

#include "ccbound/kernels.hpp"

namespace ccbound {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr int kScanPoints = 2000;

void check_dimension(int N, const char* who) {
    if (N < 2)
        throw ValidationError(std::string(who) + ": dimension must be at least 2, got " +
                              std::to_string(N));
}

/// log{ Gamma(N) P(N-1, y) / y^{N-1} } with P the lower regularized
/// incomplete gamma. Series below y = N, tail via reg_gamma_q above; both
/// tend to 0 as y -> 0 and to log Gamma(N) - (N-1) log y as y -> inf.
double log_gamma_ratio(int N, double y, const SpecialFnConfig& cfg) {
    if (!(y >= 0.0))
        throw ValidationError("constraint function: negative gamma argument " +
                              std::to_string(y) + "; alpha must be nonnegative");
    if (y == 0.0) return 0.0;
    if (y < static_cast<double>(N)) {
        const int cap = cfg.max_iter + static_cast<int>(12.0 * std::sqrt(double(N)));
        double term = 1.0, rest = 0.0;
        for (int n = 1; n <= cap; ++n) {
            term *= y / (N + n - 1);
            rest += term;
            if (term <= cfg.accuracy * (1.0 + rest)) return -y + std::log1p(rest);
        }
        throw Error("constraint function: tail series did not converge at y=" +
                    std::to_string(y) + ", N=" + std::to_string(N));
    }
    return ln_gamma(N, cfg) + std::log1p(-reg_gamma_q(N - 1, y, cfg)) -
           (N - 1) * std::log(y);
}

/// D(y) = y^{N-1} e^{-y} / [Gamma(N) P(N-1, y)]; equals 1 at y = 0 and decays
/// to 0. Satisfies d/dy log_gamma_ratio = (N-1)(D-1)/y.
double density_ratio(int N, double y, const SpecialFnConfig& cfg) {
    if (y == 0.0) return 1.0;
    return std::exp(-y - log_gamma_ratio(N, y, cfg));
}

double d_log_gamma_ratio_dy(int N, double y, const SpecialFnConfig& cfg) {
    if (y < 1e-6)
        return -1.0 + 1.0 / N + y * (2.0 / (static_cast<double>(N) * (N + 1)) - 1.0 / (double(N) * N));
    return (N - 1) * (density_ratio(N, y, cfg) - 1.0) / y;
}

double beta_of(int N, double theta, double alpha) {
    const double tan2 = std::tan(theta) * std::tan(theta);
    return alpha * (tan2 - 2.0 * N) / (static_cast<double>(N) * (N + 1));
}

double objective_terms(int N, double alpha, double beta) {
    return beta / N + 2.0 * alpha / (static_cast<double>(N) * (N + 1));
}

void fill_scan(TwoOutcomeSolution& sol) {
    const kernels::ThetaScanResult scan =
        kernels::theta_scan_min(sol.dimension, sol.alpha, sol.beta, kScanPoints, Exec::parallel);
    sol.diagnostics.scan_min_theta = scan.min_theta;
    sol.diagnostics.scan_min_value = scan.min_value;
}

} // namespace

std::string branch_name(TwoOutcomeSolution::Branch branch) {
    switch (branch) {
    case TwoOutcomeSolution::Branch::small_N_approx: return "small_N_approx";
    case TwoOutcomeSolution::Branch::small_N_exact: return "small_N_exact";
    case TwoOutcomeSolution::Branch::large_N: return "large_N";
    }
    throw Error("branch_name: unknown branch");
}

double cap_volume(int N, double theta) {
    check_dimension(N, "cap_volume");
    if (!(theta >= 0.0 && theta <= kHalfPi + 1e-12))
        throw ValidationError("cap_volume: theta must lie in [0, pi/2]");
    return std::pow(std::sin(theta), 2 * N - 2);
}

double f_theta(int N, double theta, double alpha, double beta, const SpecialFnConfig& cfg) {
    check_dimension(N, "f_theta");
    if (!(theta >= 0.0 && theta <= kHalfPi + 1e-12))
        throw ValidationError("f_theta: theta must lie in [0, pi/2]");
    const double sin_t = std::sin(theta), cos_t = std::cos(theta);
    const double S = std::pow(sin_t, 2 * N - 2);
    const double t = sin_t * sin_t, c2 = cos_t * cos_t;
    const double y = alpha * S * c2;
    return -S * (beta + alpha * (t / N + c2)) - log_gamma_ratio(N, y, cfg);
}

double f_theta_derivative(int N, double theta, double alpha, double beta,
                          const SpecialFnConfig& cfg) {
    check_dimension(N, "f_theta_derivative");
    if (!(theta >= 0.0 && theta <= kHalfPi + 1e-12))
        throw ValidationError("f_theta_derivative: theta must lie in [0, pi/2]");
    const double sin_t = std::sin(theta), cos_t = std::cos(theta);
    const double S = std::pow(sin_t, 2 * N - 2);
    const double Sp = (2 * N - 2) * std::pow(sin_t, 2 * N - 3) * cos_t;
    const double t = sin_t * sin_t, c2 = cos_t * cos_t;
    const double sin2t = 2.0 * sin_t * cos_t;
    const double y = alpha * S * c2;
    const double dy = alpha * (Sp * c2 - S * sin2t);
    return -Sp * (beta + alpha * (t / N + c2)) - S * alpha * sin2t * (1.0 / N - 1.0) -
           d_log_gamma_ratio_dy(N, y, cfg) * dy;
}

TwoOutcomeSolution bound_smallN_approx(int N) {
    if (N < 2 || N > 4)
        throw ValidationError("bound_smallN_approx: branch covers dimensions 2..4, got " +
                              std::to_string(N));
    const double u = std::pow(N, 1.0 / (1.0 - N)); // sin^2 theta_m
    TwoOutcomeSolution sol;
    sol.dimension = N;
    sol.branch = TwoOutcomeSolution::Branch::small_N_approx;
    sol.theta_m = std::asin(std::sqrt(u));
    sol.alpha = static_cast<double>(N) * N * (N + 1) / (N - (N + 1) * u);
    sol.beta = beta_of(N, sol.theta_m, sol.alpha);
    const double gamma_root = std::exp(ln_gamma(N) / (N - 1));
    sol.bound_nats = (N - 1) * std::log(N * (N + 1) * (u - 1.0) /
                                        (std::numbers::e * ((N + 1) * u - N) * gamma_root));
    sol.bound_bits = nats_to_bits(sol.bound_nats);
    fill_scan(sol);
    return sol;
}

TwoOutcomeSolution refine_alpha_newton(int N, double tol) {
    if (N < 2 || N > 4)
        throw ValidationError("refine_alpha_newton: branch covers dimensions 2..4, got " +
                              std::to_string(N));
    if (!(tol > 0.0)) throw ValidationError("refine_alpha_newton: tol must be positive");

    const SpecialFnConfig cfg;
    const double u = std::pow(N, 1.0 / (1.0 - N));
    const double slope = (std::pow(u, N) - 1.0 / (N + 1)) / N;
    const double y_per_alpha = (1.0 - u) / N; // S(theta_m) cos^2 theta_m with S = 1/N

    const TwoOutcomeSolution approx = bound_smallN_approx(N);
    double alpha = approx.alpha;

    TwoOutcomeSolution sol;
    sol.dimension = N;
    sol.branch = TwoOutcomeSolution::Branch::small_N_exact;
    sol.theta_m = approx.theta_m;

    double g = HUGE_VAL;
    for (int iter = 0; iter < 100; ++iter) {
        sol.diagnostics.newton_iterations = iter + 1;
        const double y = alpha * y_per_alpha;
        const double D = density_ratio(N, y, cfg);
        g = D - 1.0 - slope * alpha;
        const double dD = -D * (1.0 + d_log_gamma_ratio_dy(N, y, cfg));
        const double dg = dD * y_per_alpha - slope;
        const double step = g / dg;
        alpha -= step;
        if (std::fabs(step) <= tol * std::max(1.0, std::fabs(alpha))) break;
    }
    sol.diagnostics.defining_residual = std::fabs(g);
    if (!(alpha > 0.5 * approx.alpha && alpha < 2.0 * approx.alpha))
        throw Error("refine_alpha_newton: iteration left the expected root basin (alpha " +
                    std::to_string(alpha) + " from " + std::to_string(approx.alpha) + ")");

    sol.alpha = alpha;
    sol.beta = beta_of(N, sol.theta_m, alpha);
    fill_scan(sol);
    const double at_minimum = f_theta(N, sol.theta_m, sol.alpha, sol.beta, cfg);
    sol.bound_nats = objective_terms(N, sol.alpha, sol.beta) +
                     std::min(at_minimum, sol.diagnostics.scan_min_value);
    sol.bound_bits = nats_to_bits(sol.bound_nats);
    return sol;
}

namespace {

struct LargeNSystem {
    int N;
    SpecialFnConfig cfg;

    // Objective-stationarity combination folded into the constraint function:
    // with beta = beta_of(theta, alpha), F(theta_m) = -a E(theta) - L(a cos^2).
    double scaled_envelope(double theta) const {
        const double tan_t = std::tan(theta);
        const double t = std::sin(theta) * std::sin(theta);
        const double c2 = 1.0 - t;
        return (tan_t * tan_t - 2.0 * N) / (static_cast<double>(N) * (N + 1)) + t / N + c2;
    }

    double e1(double theta, double a) const {
        const double c2 = std::cos(theta) * std::cos(theta);
        return -a * scaled_envelope(theta) - log_gamma_ratio(N, a * c2, cfg);
    }

    double e2(double theta, double a) const {
        const double t = std::sin(theta) * std::sin(theta);
        const double c2 = 1.0 - t;
        return density_ratio(N, a * c2, cfg) - 1.0 + a * (1.0 / (N + 1) - t / N);
    }

    double norm(double theta, double a) const {
        const double v1 = e1(theta, a), v2 = e2(theta, a);
        return std::sqrt(v1 * v1 + v2 * v2);
    }

    bool in_domain(double theta, double a) const {
        return theta > 1e-8 && theta < kHalfPi - 1e-8 && a > 0.0;
    }

    // Closed-form seed curve a(theta) solving the envelope equation through
    // the principal Lambert branch.
    double seed_a(double theta) const {
        const double c2 = std::cos(theta) * std::cos(theta);
        const double tan2 = std::tan(theta) * std::tan(theta);
        const double g = 1.0 + 1.0 / c2;
        const double w = lambert_w0(-g * std::exp(-g));
        return -static_cast<double>(N) * (N + 1) * (g + w) / ((1.0 + c2) * (tan2 - N));
    }
};

} // namespace

TwoOutcomeSolution bound_largeN(int N, double tol) {
    if (N < 5)
        throw ValidationError("bound_largeN: branch covers dimensions N >= 5, got " +
                              std::to_string(N));
    if (!(tol > 0.0)) throw ValidationError("bound_largeN: tol must be positive");

    const LargeNSystem sys{N, SpecialFnConfig{}};

    // Seed at the first sign change of the second equation along the seed curve.
    const double theta_hi = std::atan(std::sqrt(static_cast<double>(N))) - 1e-3;
    const int scan_points = 400;
    double theta = -1.0, a = -1.0;
    double prev_theta = 0.0, prev_val = 0.0;
    bool have_prev = false;
    for (int i = 0; i <= scan_points; ++i) {
        const double th = 0.01 + (theta_hi - 0.01) * i / scan_points;
        double val;
        try {
            val = sys.e2(th, sys.seed_a(th));
        } catch (const Error&) {
            have_prev = false;
            continue;
        }
        if (!std::isfinite(val)) {
            have_prev = false;
            continue;
        }
        if (have_prev && prev_val * val <= 0.0) {
            theta = 0.5 * (prev_theta + th);
            a = sys.seed_a(theta);
            break;
        }
        prev_theta = th;
        prev_val = val;
        have_prev = true;
    }
    if (theta < 0.0)
        throw Error("bound_largeN: no stationary seed found for N=" + std::to_string(N));

    TwoOutcomeSolution sol;
    sol.dimension = N;
    sol.branch = TwoOutcomeSolution::Branch::large_N;

    double residual = sys.norm(theta, a);
    for (int iter = 0; iter < 100 && residual > tol; ++iter) {
        sol.diagnostics.newton_iterations = iter + 1;
        const double h_t = 1e-6 * std::max(1.0, std::fabs(theta));
        const double h_a = 1e-6 * std::max(1.0, std::fabs(a));
        const double f1 = sys.e1(theta, a), f2 = sys.e2(theta, a);
        const double j11 = (sys.e1(theta + h_t, a) - f1) / h_t;
        const double j12 = (sys.e1(theta, a + h_a) - f1) / h_a;
        const double j21 = (sys.e2(theta + h_t, a) - f2) / h_t;
        const double j22 = (sys.e2(theta, a + h_a) - f2) / h_a;
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) break;
        const double dt = (-f1 * j22 + f2 * j12) / det;
        const double da = (-j11 * f2 + j21 * f1) / det;

        double tau = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 40; ++halving) {
            const double th = theta + tau * dt, aa = a + tau * da;
            if (sys.in_domain(th, aa)) {
                double next;
                try {
                    next = sys.norm(th, aa);
                } catch (const Error&) {
                    next = HUGE_VAL;
                }
                if (next < residual) {
                    theta = th;
                    a = aa;
                    residual = next;
                    accepted = true;
                    break;
                }
            }
            tau *= 0.5;
        }
        if (!accepted) break;
    }
    if (residual > std::sqrt(tol))
        throw Error("bound_largeN: stationarity system did not converge for N=" +
                    std::to_string(N) + " (residual " + std::to_string(residual) + ")");

    const double S = cap_volume(N, theta);
    if (S < 1e-280)
        throw Error("bound_largeN: cap volume underflows at N=" + std::to_string(N));

    sol.theta_m = theta;
    sol.alpha = a / S;
    sol.beta = beta_of(N, theta, sol.alpha);
    sol.diagnostics.defining_residual = residual;
    fill_scan(sol);
    if (sol.diagnostics.scan_min_value < -1e-6)
        throw Error("bound_largeN: certificate scan found a negative dip " +
                    std::to_string(sol.diagnostics.scan_min_value) +
                    "; the double-minimum structure failed for N=" + std::to_string(N));
    sol.bound_nats = objective_terms(N, sol.alpha, sol.beta) +
                     std::min(0.0, sol.diagnostics.scan_min_value);
    sol.bound_bits = nats_to_bits(sol.bound_nats);
    return sol;
}

AsymptoticConstants solve_z1() {
    // Second root of 1 - e/z - z/e + log z; the first is z = e itself.
    const auto f = [](double z) {
        return 1.0 - std::numbers::e / z - z / std::numbers::e + std::log(z);
    };
    double lo = 6.0, hi = 7.0;
    if (!(f(lo) > 0.0 && f(hi) < 0.0))
        throw Error("solve_z1: bracket [6,7] does not straddle the root");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    AsymptoticConstants out;
    out.z1 = 0.5 * (lo + hi);
    out.residual = std::fabs(f(out.z1));
    const double gap = out.z1 - std::numbers::e;
    out.limit_bits = nats_to_bits(std::exp(std::numbers::e / gap) * gap * gap / out.z1);
    return out;
}

double asymptotic_bound(int N) {
    check_dimension(N, "asymptotic_bound");
    static const double z1 = solve_z1().z1;
    const double gap = std::numbers::e - z1; // negative
    const double inner = 1.0 + z1 / (N * gap);
    if (!(inner > 0.0))
        throw Error("asymptotic_bound: formula leaves its domain at N=" + std::to_string(N));
    const double log_bound = 2.0 * std::log(std::fabs(N * gap + z1)) - std::log(double(N)) -
                             std::log(z1) - std::log(N * std::numbers::e + z1) -
                             N * std::log(inner);
    return std::exp(log_bound);
}

ConjecturedBound conjectured_bound(int N) {
    check_dimension(N, "conjectured_bound");
    ConjecturedBound out;
    out.dimension = N;
    const double w = std::log(static_cast<double>(N)) / (1.0 - N);
    out.bound_nats = -(N - 1) * std::log(-std::expm1(w));
    out.bound_bits = nats_to_bits(out.bound_nats);
    out.half_n_log_n_bits = 0.5 * N * std::log2(static_cast<double>(N));
    out.conjecture_dependent = true;
    out.hypotheses =
        "unproven: (1) the optimal multiplier stays stationary under the offset "
        "perturbations used to close the support argument; (2) symmetric caps maximize "
        "the constraint functional among all candidate supports";
    return out;
}

double sandwich_upper(double c_asym_bits) {
    if (!(c_asym_bits >= 0.0))
        throw ValidationError("sandwich_upper: the asymptotic cost must be nonnegative");
    return c_asym_bits + 2.0 * std::log2(c_asym_bits + 1.0) + 2.0 / kLn2;
}

std::vector<SweepRow> sweep(int from, int to, Exec exec) {
    if (from < 2) throw ValidationError("sweep: range must start at dimension 2 or above");
    if (to < from) throw ValidationError("sweep: empty dimension range");

    std::vector<SweepRow> rows(to - from + 1);
    kernels::for_each_block(rows.size(), exec, [&](std::uint64_t i) {
        SweepRow& row = rows[i];
        row.dimension = from + static_cast<int>(i);
        try {
            row.solution = row.dimension <= 4 ? refine_alpha_newton(row.dimension)
                                              : bound_largeN(row.dimension);
            row.asymptotic_bits = nats_to_bits(asymptotic_bound(row.dimension));
            row.conjectured_bits = conjectured_bound(row.dimension).bound_bits;
            row.ok = true;
        } catch (const Error& e) {
            row.error = e.what();
        }
    });
    return rows;
}

} // namespace ccbound
