#pragma once

#include <cstdint>
#include <vector>

#include "ccbound/cbox.hpp"
#include "ccbound/sequences.hpp"

namespace ccbound {

inline constexpr std::uint64_t kDefaultTableBudget = std::uint64_t{1} << 26;

/// Simulation policy rho(s|a): for each preparation a, a joint distribution
/// over complete outcome sequences s = (s_0, ..., s_{M-1}). Its measurement-b
/// marginal must reproduce the box column P(.|a,b). mix is the prior-weighted
/// mixture rho(s) = sum_a rho(a) rho(s|a).
struct SimulationPolicy {
    int num_outcomes = 0;
    int num_states = 0;
    int num_measurements = 0;
    InputPrior prior;
    std::vector<double> cond; // indexed k * A + a, k per SequenceSpace encoding
    std::vector<double> mix;  // indexed k

    SequenceSpace sequences() const { return {num_outcomes, num_measurements}; }
    std::uint64_t num_sequences() const { return sequences().size(); }

    double cond_at(std::uint64_t k, int a) const { return cond[k * num_states + a]; }
    double& cond_at(std::uint64_t k, int a) { return cond[k * num_states + a]; }

    void recompute_mix();
};

/// I(rho) = sum_{s,a} rho(s|a) rho(a) log[rho(s|a)/rho(s)] in nats.
/// Terms with rho(s|a) = 0 or rho(a) = 0 contribute 0.
double mutual_information(const SimulationPolicy& policy);

/// Marginal of measurement b: returns the (s, a) table sum_{k: digit_b(k)=s} rho(k|a),
/// indexed s * A + a.
std::vector<double> marginal(const SimulationPolicy& policy, int b);

/// Independent-coordinates policy rho(s|a) = prod_b P(s_b|a,b). Satisfies every
/// marginal constraint exactly, so it is the canonical feasible initializer.
SimulationPolicy product_policy(const CBox& box, const InputPrior& prior,
                                std::uint64_t max_table_entries = kDefaultTableBudget);

} // namespace ccbound
