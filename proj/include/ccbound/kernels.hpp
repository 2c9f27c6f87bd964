#pragma once

#include <cstdint>
#include <vector>

#include "ccbound/common.hpp"
#include "ccbound/dual.hpp"

namespace ccbound::kernels {

/// Runs fn(block_index) for every block in [0, num_blocks), in parallel under
/// Exec::parallel. Blocks must be independent; callers combine per-block
/// results in block order afterwards, which keeps every reduction
/// bit-identical between the serial and parallel policies.
void for_each_block(std::uint64_t num_blocks, Exec exec, void (*fn)(std::uint64_t, void*),
                    void* ctx);

template <class Fn>
void for_each_block(std::uint64_t num_blocks, Exec exec, Fn&& fn) {
    auto thunk = [](std::uint64_t i, void* c) { (*static_cast<Fn*>(c))(i); };
    for_each_block(num_blocks, exec, thunk, &fn);
}

struct SlackScanResult {
    double max_slack = 0.0;
    std::uint64_t argmax = 0; // lowest sequence index attaining the max
};

/// Max constraint slack over all S^M sequences. Deterministic: ties break
/// toward the lowest index under both execution policies.
SlackScanResult max_slack_scan(const DualCertificate& cert, const InputPrior& prior, Exec exec);

struct ThetaScanResult {
    double min_value = 0.0;
    double min_theta = 0.0;
};

/// Minimum of the two-outcome constraint function over a uniform theta grid
/// of `points` interior points of (0, pi/2), plus the theta -> 0 limit value 0.
/// Deterministic: ties break toward the smaller theta.
ThetaScanResult theta_scan_min(int N, double alpha, double beta, int points, Exec exec);

} // namespace ccbound::kernels
