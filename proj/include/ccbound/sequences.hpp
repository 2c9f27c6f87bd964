#pragma once

#include <cstdint>

#include "ccbound/common.hpp"

namespace ccbound {

/// Index space of outcome sequences s = (s_0, ..., s_{M-1}), one outcome per
/// measurement. A sequence maps to the integer k = sum_b s_b * S^b, so the
/// base-S digit b of k is the outcome of measurement b.
struct SequenceSpace {
    int num_outcomes = 0;     // S
    int num_measurements = 0; // M

    static SequenceSpace make(int S, int M, std::uint64_t max_sequences);

    std::uint64_t size() const {
        std::uint64_t n = 1;
        for (int b = 0; b < num_measurements; ++b) n *= static_cast<std::uint64_t>(num_outcomes);
        return n;
    }

    int digit(std::uint64_t k, int b) const {
        for (int i = 0; i < b; ++i) k /= static_cast<std::uint64_t>(num_outcomes);
        return static_cast<int>(k % static_cast<std::uint64_t>(num_outcomes));
    }
};

} // namespace ccbound
