#pragma once

#include "ccbound/dual.hpp"
#include "ccbound/policy.hpp"

namespace ccbound {

/// Residuals of the joint optimality conditions for a (policy, certificate)
/// pair. All residuals are absolute, on probability scale. passed is true iff
/// every residual is within the tolerance.
struct OptimalityReport {
    double residual_map_eq = 0.0;     // max |rho(s|a) - rho(s) e^{sum_b lambda}|
    double residual_slack = 0.0;      // max over s of max(0, slack - 1)
    double residual_marginal = 0.0;   // max |marginal - P|
    double residual_nonneg = 0.0;     // magnitude of the most negative entry
    double residual_fixedpoint = 0.0; // max |rho(s) (slack(s) - 1)|
    bool passed = false;
    double tolerance = 0.0;
};

/// Full condition system on (policy, certificate): exponential-family map
/// equation, constraint slack <= 1, marginal constraints, nonnegativity,
/// plus the mixture fixed-point residual.
OptimalityReport check_conditions(const SimulationPolicy& policy, const DualCertificate& cert,
                                  const CBox& box, const InputPrior& prior, double tol = 1e-6);

/// Reduced system on the mixture alone: mix >= 0, the marginals of
/// mix(s) e^{sum_b lambda} reproduce P, slack <= 1, and mix(s) slack(s) = mix(s)
/// (mass only where the constraint is active).
OptimalityReport check_conditions_reduced(const std::vector<double>& mix,
                                          const DualCertificate& cert, const CBox& box,
                                          const InputPrior& prior, double tol = 1e-6);

/// primal value - dual value. Nonnegative up to numerical tolerance; near 0
/// when both solves converged.
double duality_gap(const PrimalResult& primal, const DualResult& dual);

/// Sets lambda(s,a,b) := -inf wherever P(s|a,b) = 0. Objective value is
/// unchanged and slack never increases, so feasibility is preserved.
DualCertificate corollary1_normalize(const DualCertificate& cert, const CBox& box);

} // namespace ccbound
