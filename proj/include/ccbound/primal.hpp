#pragma once

#include "ccbound/policy.hpp"

namespace ccbound {

struct PrimalOptions {
    double tol = 1e-9;
    int max_iter = 2000;
    // marginal-restoration sweeps run until violations fall below
    // min(tol * inner_tol_factor, inner_tol_cap)
    double inner_tol_factor = 1e-2;
    double inner_tol_cap = 1e-10;
    int max_inner_sweeps = 2000;
    // convergence requires this many consecutive quiet outer iterations
    int quiet_streak = 3;
    std::uint64_t max_table_entries = kDefaultTableBudget;
};

struct PrimalResult {
    SimulationPolicy policy;
    double value_nats = 0.0;
    int iterations = 0;
    double max_constraint_violation = 0.0;
    bool converged = false;
};

/// Minimizes mutual_information over policies whose marginals reproduce the
/// box, by alternating mixture updates with multiplicative marginal fitting
/// of the exponential-family rows rho(s|a) = rho(s) e^{sum_b lambda(s_b,a,b)}.
/// The objective never increases across outer iterations.
PrimalResult solve_primal(const CBox& box, const InputPrior& prior, const PrimalOptions& options);
PrimalResult solve_primal(const CBox& box, const InputPrior& prior, double tol = 1e-9,
                          int max_iter = 2000);

} // namespace ccbound
