#pragma once

#include <string>
#include <vector>

#include "ccbound/common.hpp"
#include "ccbound/specfun.hpp"

namespace ccbound {

/// Solution record of the two-outcome rank-1 lower-bound pipeline for a
/// noiseless N-dimensional channel, with the multiplier ansatz
/// lambda(s) = alpha_s |<phi|psi>|^2 + beta_s reduced to (alpha, beta).
struct TwoOutcomeSolution {
    enum class Branch { small_N_approx, small_N_exact, large_N };

    int dimension = 0;
    Branch branch = Branch::small_N_approx;
    double alpha = 0.0;
    double beta = 0.0;
    double theta_m = 0.0;
    double bound_nats = 0.0;
    double bound_bits = 0.0;

    struct Diagnostics {
        double scan_min_theta = 0.0; // location of the constraint-function minimum
        double scan_min_value = 0.0; // value at that minimum (0 at theta -> 0 included)
        int newton_iterations = 0;
        double defining_residual = 0.0; // branch defining-equation residual
    } diagnostics;
};

std::string branch_name(TwoOutcomeSolution::Branch branch);

/// Normalized volume S(theta) = sin^{2N-2} theta of a symmetric cap with
/// angular aperture 2 theta, for N >= 2 and theta in [0, pi/2].
double cap_volume(int N, double theta);

/// Constraint function
///   F(theta) = -S(theta)[beta + alpha(sin^2 theta / N + cos^2 theta)]
///              - log{ Gamma(N) [1 - Q(N-1, y)] / y^{N-1} },  y = alpha S(theta) cos^2 theta.
/// The certificate (alpha, beta) is feasible with margin m iff F >= m for all
/// theta. Stable at theta -> 0 through the series limit F -> 0.
double f_theta(int N, double theta, double alpha, double beta, const SpecialFnConfig& cfg = {});

/// d F / d theta, analytic form (used by the stationarity checks).
double f_theta_derivative(int N, double theta, double alpha, double beta,
                          const SpecialFnConfig& cfg = {});

/// Closed-form branch for N in {2,3,4}: alpha = N^2(N+1)/(N - (N+1)N^{1/(1-N)}),
/// sin^2 theta_m = N^{1/(1-N)}, beta tied to alpha; the incomplete-gamma tail
/// is neglected, which the exact branch shows is a conservative under-estimate.
TwoOutcomeSolution bound_smallN_approx(int N);

/// Newton refinement of alpha on the exact stationarity equation for
/// N in {2,3,4}; always at least the approximate bound.
TwoOutcomeSolution refine_alpha_newton(int N, double tol = 1e-12);

/// Branch for N >= 5, where the constraint function has two global minima
/// (theta = 0 and theta_m > 0) both at value 0. Solves the two-equation
/// stationarity system in (theta_m, alpha S) by Newton, seeded from the
/// Lambert-W closed form, and verifies the double-minimum structure on a grid.
TwoOutcomeSolution bound_largeN(int N, double tol = 1e-10);

struct AsymptoticConstants {
    double z1 = 0.0;         // second root of 1 - e/z - z/e + log z = 0
    double limit_bits = 0.0; // N -> infinity saturation value
    double residual = 0.0;   // defining-equation residual at z1
};

AsymptoticConstants solve_z1();

/// Large-N closed-form approximation of the two-outcome bound, in nats:
///   [N(e-z1)+z1]^2 / { N z1 (Ne+z1) (1+z1/(N(e-z1)))^N }.
/// Intended regime N >= 5; evaluated in log space.
double asymptotic_bound(int N);

/// Conjecture-dependent bound -(N-1) log(1 - N^{1/(1-N)}) from the
/// support-shrinking cap geometry. Relies on two unproven hypotheses and must
/// never be reported as a proven bound; every record carries the flag.
struct ConjecturedBound {
    int dimension = 0;
    double bound_nats = 0.0;
    double bound_bits = 0.0;
    double half_n_log_n_bits = 0.0; // comparison value (1/2) N log2 N
    bool conjecture_dependent = true;
    std::string hypotheses;
};

ConjecturedBound conjectured_bound(int N);

/// Upper bound on the one-shot cost from an asymptotic-cost lower bound c
/// (bits): c + 2 log2(c + 1) + 2 log2 e.
double sandwich_upper(double c_asym_bits);

struct SweepRow {
    int dimension = 0;
    bool ok = false;
    std::string error;
    TwoOutcomeSolution solution;
    double asymptotic_bits = 0.0;
    double conjectured_bits = 0.0;
};

/// Per-dimension bounds for N in [from, to]: exact small-N branch through
/// N = 4, large-N branch from N = 5. Failures are recorded per row and do not
/// stop the sweep. Rows are independent and computed in parallel.
std::vector<SweepRow> sweep(int from, int to, Exec exec = Exec::parallel);

} // namespace ccbound
