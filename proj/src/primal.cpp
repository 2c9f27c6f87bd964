#include "ccbound/primal.hpp"

#include <cmath>

namespace ccbound {

namespace {

constexpr double kZeroFloor = 1e-300;

struct RowView {
    std::vector<double>& cond;
    std::uint64_t K;
    int A;
    int a;
    double operator[](std::uint64_t k) const { return cond[k * A + a]; }
    double& operator[](std::uint64_t k) { return cond[k * A + a]; }
};

double row_violation(const RowView& row, const CBox& box, const SequenceSpace& seq) {
    const int S = box.num_outcomes, M = box.num_measurements;
    double worst = 0.0;
    std::vector<double> m(S);
    for (int b = 0; b < M; ++b) {
        std::fill(m.begin(), m.end(), 0.0);
        for (std::uint64_t k = 0; k < row.K; ++k) m[seq.digit(k, b)] += row[k];
        for (int s = 0; s < S; ++s)
            worst = std::max(worst, std::fabs(m[s] - box.at(s, row.a, b)));
    }
    return worst;
}

// Proportional fitting of one conditional row onto the marginal constraints,
// starting from the current mixture. Returns the violation it reached.
double project_row(RowView row, const std::vector<double>& mix, const CBox& box,
                   const SequenceSpace& seq, double inner_tol, int max_sweeps) {
    const int S = box.num_outcomes, M = box.num_measurements;
    for (std::uint64_t k = 0; k < row.K; ++k) row[k] = mix[k];

    std::vector<double> m(S), factor(S);
    double violation = HUGE_VAL;
    int stalled = 0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (int b = 0; b < M; ++b) {
            std::fill(m.begin(), m.end(), 0.0);
            for (std::uint64_t k = 0; k < row.K; ++k) m[seq.digit(k, b)] += row[k];
            for (int s = 0; s < S; ++s) {
                const double target = box.at(s, row.a, b);
                factor[s] = m[s] > 0.0 ? target / m[s] : (target > 0.0 ? 1.0 : 0.0);
            }
            for (std::uint64_t k = 0; k < row.K; ++k) row[k] *= factor[seq.digit(k, b)];
        }
        const double next = row_violation(row, box, seq);
        stalled = next > 0.99 * violation ? stalled + 1 : 0;
        violation = next;
        if (violation <= inner_tol || stalled >= 20) break;
    }
    return violation;
}

} // namespace

PrimalResult solve_primal(const CBox& box, const InputPrior& prior, const PrimalOptions& options) {
    if (!(options.tol > 0.0)) throw ValidationError("solve_primal: tol must be positive");
    if (options.max_iter < 1) throw ValidationError("solve_primal: max_iter must be positive");

    PrimalResult result;
    result.policy = product_policy(box, prior, options.max_table_entries);
    SimulationPolicy& policy = result.policy;

    const int A = box.num_states;
    const SequenceSpace seq = policy.sequences();
    const std::uint64_t K = seq.size();
    const double inner_tol =
        std::min(options.tol * options.inner_tol_factor, options.inner_tol_cap);

    double value = mutual_information(policy);
    double prev_drop = HUGE_VAL;
    int quiet = 0;
    for (int iter = 0; iter < options.max_iter; ++iter) {
        result.iterations = iter + 1;

        double violation = 0.0;
        for (int a = 0; a < A; ++a) {
            RowView row{policy.cond, K, A, a};
            if (policy.prior.rho[a] <= 0.0) {
                violation = std::max(violation, row_violation(row, box, seq));
                continue;
            }
            violation = std::max(
                violation,
                project_row(row, policy.mix, box, seq, inner_tol, options.max_inner_sweeps));
        }
        policy.recompute_mix();
        for (std::uint64_t k = 0; k < K; ++k)
            if (policy.mix[k] < kZeroFloor) policy.mix[k] = 0.0;

        const double next = mutual_information(policy);
        // The alternation converges linearly, so the distance to the optimum
        // is estimated from the decrease and its contraction rate rather than
        // from the decrease alone.
        const double drop = value - next;
        double remaining;
        if (!(drop > 0.0))
            remaining = std::fabs(drop);
        else if (drop < prev_drop) {
            const double rate = drop / prev_drop;
            remaining = drop * rate / (1.0 - rate);
        } else
            remaining = HUGE_VAL;
        if (drop > 0.0) prev_drop = drop;
        const bool quiet_now = remaining <= options.tol * std::max(1.0, std::fabs(next)) &&
                               violation <= options.tol;
        quiet = quiet_now ? quiet + 1 : 0;
        value = next;
        result.max_constraint_violation = violation;
        if (quiet >= options.quiet_streak) {
            result.converged = true;
            break;
        }
    }
    result.value_nats = value;
    return result;
}

PrimalResult solve_primal(const CBox& box, const InputPrior& prior, double tol, int max_iter) {
    PrimalOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    return solve_primal(box, prior, options);
}

} // namespace ccbound
