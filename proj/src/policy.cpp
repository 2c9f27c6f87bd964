#include "ccbound/policy.hpp"

#include <cmath>

namespace ccbound {

void SimulationPolicy::recompute_mix() {
    const std::uint64_t K = num_sequences();
    mix.assign(K, 0.0);
    for (std::uint64_t k = 0; k < K; ++k) {
        double acc = 0.0;
        for (int a = 0; a < num_states; ++a) acc += prior.rho[a] * cond_at(k, a);
        mix[k] = acc;
    }
}

double mutual_information(const SimulationPolicy& policy) {
    const std::uint64_t K = policy.num_sequences();
    const int A = policy.num_states;
    double acc = 0.0;
    for (std::uint64_t k = 0; k < K; ++k) {
        const double q = policy.mix[k];
        if (q <= 0.0) continue;
        const double logq = std::log(q);
        for (int a = 0; a < A; ++a) {
            const double w = policy.prior.rho[a];
            const double p = policy.cond_at(k, a);
            if (w <= 0.0 || p <= 0.0) continue;
            acc += w * p * (std::log(p) - logq);
        }
    }
    return acc;
}

std::vector<double> marginal(const SimulationPolicy& policy, int b) {
    if (b < 0 || b >= policy.num_measurements)
        throw ValidationError("marginal: measurement index " + std::to_string(b) +
                              " out of range");
    const int S = policy.num_outcomes;
    const int A = policy.num_states;
    const SequenceSpace seq = policy.sequences();
    const std::uint64_t K = seq.size();
    std::vector<double> out(static_cast<std::size_t>(S) * A, 0.0);
    for (std::uint64_t k = 0; k < K; ++k) {
        const int s = seq.digit(k, b);
        for (int a = 0; a < A; ++a) out[static_cast<std::size_t>(s) * A + a] += policy.cond_at(k, a);
    }
    return out;
}

SimulationPolicy product_policy(const CBox& box, const InputPrior& prior,
                                std::uint64_t max_table_entries) {
    const ValidationResult vb = validate_cbox(box);
    if (!vb.valid) throw ValidationError("product_policy: " + vb.message);
    const ValidationResult vp = validate_prior(prior);
    if (!vp.valid) throw ValidationError("product_policy: " + vp.message);
    if (prior.num_states() != box.num_states)
        throw ValidationError("product_policy: prior has " + std::to_string(prior.num_states()) +
                              " entries for a box with " + std::to_string(box.num_states) +
                              " preparations");

    const int S = box.num_outcomes, A = box.num_states, M = box.num_measurements;
    const SequenceSpace seq =
        SequenceSpace::make(S, M, max_table_entries / static_cast<std::uint64_t>(A));
    const std::uint64_t K = seq.size();

    SimulationPolicy policy;
    policy.num_outcomes = S;
    policy.num_states = A;
    policy.num_measurements = M;
    policy.prior = prior;
    policy.cond.assign(K * static_cast<std::uint64_t>(A), 0.0);
    for (std::uint64_t k = 0; k < K; ++k)
        for (int a = 0; a < A; ++a) {
            double p = 1.0;
            for (int b = 0; b < M; ++b) p *= box.at(seq.digit(k, b), a, b);
            policy.cond_at(k, a) = p;
        }
    policy.recompute_mix();
    return policy;
}

} // namespace ccbound
