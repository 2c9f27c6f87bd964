#include "ccbound/kernels.hpp"

#include <cmath>

#include "ccbound/analytic.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ccbound::kernels {

namespace {

constexpr std::uint64_t kBlockSize = 4096;

std::uint64_t num_blocks_for(std::uint64_t items) {
    return (items + kBlockSize - 1) / kBlockSize;
}

} // namespace

void for_each_block(std::uint64_t num_blocks, Exec exec, void (*fn)(std::uint64_t, void*),
                    void* ctx) {
    if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
        for (long long i = 0; i < static_cast<long long>(num_blocks); ++i)
            fn(static_cast<std::uint64_t>(i), ctx);
        return;
#endif
    }
    for (std::uint64_t i = 0; i < num_blocks; ++i) fn(i, ctx);
}

SlackScanResult max_slack_scan(const DualCertificate& cert, const InputPrior& prior, Exec exec) {
    const std::uint64_t K = SequenceSpace{cert.num_outcomes, cert.num_measurements}.size();
    const std::uint64_t blocks = num_blocks_for(K);
    std::vector<SlackScanResult> partial(blocks);

    for_each_block(blocks, exec, [&](std::uint64_t i) {
        const std::uint64_t begin = i * kBlockSize;
        const std::uint64_t end = std::min(begin + kBlockSize, K);
        SlackScanResult best{-1.0, begin};
        for (std::uint64_t k = begin; k < end; ++k) {
            const double slack = constraint_slack(cert, prior, k);
            if (slack > best.max_slack) best = {slack, k};
        }
        partial[i] = best;
    });

    SlackScanResult out{-1.0, 0};
    for (const SlackScanResult& p : partial)
        if (p.max_slack > out.max_slack) out = p;
    return out;
}

ThetaScanResult theta_scan_min(int N, double alpha, double beta, int points, Exec exec) {
    if (points < 1) throw ValidationError("theta_scan_min: points must be positive");
    const double half_pi = std::asin(1.0);
    const double step = half_pi / (points + 1);
    const std::uint64_t blocks = num_blocks_for(static_cast<std::uint64_t>(points));
    std::vector<ThetaScanResult> partial(blocks);

    for_each_block(blocks, exec, [&](std::uint64_t i) {
        const std::uint64_t begin = i * kBlockSize;
        const std::uint64_t end =
            std::min(begin + kBlockSize, static_cast<std::uint64_t>(points));
        ThetaScanResult best{HUGE_VAL, 0.0};
        for (std::uint64_t j = begin; j < end; ++j) {
            const double theta = (static_cast<double>(j) + 1.0) * step;
            const double value = f_theta(N, theta, alpha, beta);
            if (value < best.min_value) best = {value, theta};
        }
        partial[i] = best;
    });

    // The theta -> 0 limit contributes value 0 at theta = 0.
    ThetaScanResult out{0.0, 0.0};
    for (const ThetaScanResult& p : partial)
        if (p.min_value < out.min_value) out = p;
    return out;
}

} // namespace ccbound::kernels
