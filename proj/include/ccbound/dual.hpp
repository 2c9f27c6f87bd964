#pragma once

#include <cstdint>
#include <vector>

#include "ccbound/cbox.hpp"
#include "ccbound/primal.hpp"
#include "ccbound/sequences.hpp"

namespace ccbound {

/// Dual multipliers lambda(s,a,b). Entries are finite reals or negative
/// infinity (e^{-inf} = 0 exactly); +inf and NaN are forbidden. Any feasible
/// certificate proves a lower bound on the communication complexity.
struct DualCertificate {
    int num_outcomes = 0;
    int num_states = 0;
    int num_measurements = 0;
    std::vector<double> lambda; // indexed (s, a, b) row-major

    static DualCertificate zeros(int S, int A, int M);

    double at(int s, int a, int b) const {
        return lambda[(static_cast<std::size_t>(s) * num_states + a) * num_measurements + b];
    }
    double& at(int s, int a, int b) {
        return lambda[(static_cast<std::size_t>(s) * num_states + a) * num_measurements + b];
    }
};

/// Throws ValidationError on NaN or +inf entries or dimension mismatch.
void validate_certificate(const DualCertificate& cert);

struct DualObjective {
    bool minus_infinity = false; // some P(s|a,b) > 0 meets lambda = -inf
    double value_nats = 0.0;
};

/// sum_{s,a,b} P(s|a,b) rho(a) lambda(s,a,b). Terms with P = 0 contribute 0
/// even at lambda = -inf; a -inf multiplier on positive P makes the whole
/// objective minus infinity, reported through the flag.
DualObjective dual_objective(const DualCertificate& cert, const CBox& box, const InputPrior& prior);

/// sum_a rho(a) e^{sum_b lambda(s_b,a,b)} for sequence k, via log-sum-exp.
double constraint_slack(const DualCertificate& cert, const InputPrior& prior, std::uint64_t k);

struct DualResult {
    DualCertificate certificate;
    double value_nats = 0.0;
    bool feasible = false;
    std::uint64_t worst_sequence = 0;
    double worst_slack = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Enumerates all S^M constraints; feasible iff max slack <= 1 + tol.
DualResult certify_lower_bound(const DualCertificate& cert, const CBox& box,
                               const InputPrior& prior, double tol = 1e-9,
                               std::uint64_t max_sequences = kDefaultTableBudget,
                               Exec exec = Exec::parallel);

struct DualOptions {
    double tol = 1e-6;       // optimality gap target
    int max_iter = 500;      // Newton iterations across all barrier stages
    double feas_tol = 1e-9;  // feasibility tolerance for the reported verdict
    double barrier_mu = 20.0;
    bool polish = true;      // active-set equality polish after the barrier
    std::uint64_t max_sequences = kDefaultTableBudget;
};

/// Maximizes the dual objective over the feasible set by a log-barrier
/// interior scheme, then pins zero-probability entries to -inf and polishes
/// the active constraints. The returned certificate is strictly feasible.
DualResult solve_dual(const CBox& box, const InputPrior& prior, const DualOptions& options);
DualResult solve_dual(const CBox& box, const InputPrior& prior, double tol = 1e-6,
                      int max_iter = 500);

/// Recovers lambda from a solved primal via the stationarity relation
/// log rho(s|a) - log rho(s) = sum_b lambda(s_b,a,b), per-a minimum-norm
/// least squares over the support; entries with P(s|a,b) = 0 become -inf.
/// Throws Error if the support equations are inconsistent beyond residual_tol.
DualCertificate extract_certificate(const PrimalResult& primal, const CBox& box,
                                    double residual_tol = 1e-6);

/// Uniform shift lambda -> lambda - eps with the smallest eps restoring
/// max slack <= 1. Costs exactly eps * M of objective value.
DualCertificate shrink_to_feasible(const DualCertificate& cert, const InputPrior& prior,
                                   Exec exec = Exec::parallel);

} // namespace ccbound
