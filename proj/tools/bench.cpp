#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ccbound/analytic.hpp"
#include "ccbound/dual.hpp"
#include "ccbound/kernels.hpp"
#include "ccbound/mc.hpp"

namespace {

using namespace ccbound;

double time_of(void (*fn)(Exec, void*), Exec exec, void* ctx, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn(exec, ctx);
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    return dt.count() / reps;
}

template <class Fn>
double time_of(Fn&& fn, Exec exec, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn(exec);
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    return dt.count() / reps;
}

int failures = 0;

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-18s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  results %s\n", name,
                serial_s, parallel_s, serial_s / parallel_s, identical ? "identical" : "DIFFER");
    if (!identical) ++failures;
}

DualCertificate random_certificate(int S, int A, int M, std::uint64_t seed) {
    DualCertificate cert = DualCertificate::zeros(S, A, M);
    HaarSampler sampler{2, seed, 0};
    for (double& v : cert.lambda) {
        const auto state = sample_state(sampler);
        v = std::norm(state[0]) - 0.5;
    }
    return cert;
}

} // namespace

int main(int argc, char** argv) {
    const int scale = argc > 1 ? std::atoi(argv[1]) : 1;
    if (scale < 1) {
        std::fprintf(stderr, "usage: %s [scale >= 1]\n", argv[0]);
        return 2;
    }

    {
        const int S = 4, A = 6, M = 11 + (scale > 1 ? 1 : 0); // 4^11 ~ 4.2M sequences
        const DualCertificate cert = random_certificate(S, A, M, 7);
        const InputPrior prior = InputPrior::uniform(A);
        kernels::SlackScanResult serial_out, parallel_out;
        const double ts = time_of(
            [&](Exec e) { serial_out = kernels::max_slack_scan(cert, prior, e); }, Exec::serial,
            1);
        const double tp = time_of(
            [&](Exec e) { parallel_out = kernels::max_slack_scan(cert, prior, e); },
            Exec::parallel, 1);
        report("max_slack_scan", ts, tp,
               serial_out.max_slack == parallel_out.max_slack &&
                   serial_out.argmax == parallel_out.argmax);
    }

    {
        const int N = 40, points = 2000000 * scale;
        kernels::ThetaScanResult serial_out, parallel_out;
        const double ts = time_of(
            [&](Exec e) { serial_out = kernels::theta_scan_min(N, 5000.0, -130.0, points, e); },
            Exec::serial, 1);
        const double tp = time_of(
            [&](Exec e) { parallel_out = kernels::theta_scan_min(N, 5000.0, -130.0, points, e); },
            Exec::parallel, 1);
        report("theta_scan_min", ts, tp,
               serial_out.min_value == parallel_out.min_value &&
                   serial_out.min_theta == parallel_out.min_theta);
    }

    {
        const std::uint64_t samples = 4000000ULL * scale;
        MomentReport serial_out, parallel_out;
        const double ts = time_of(
            [&](Exec e) { serial_out = moment_checks(8, samples, 1, e); }, Exec::serial, 1);
        const double tp = time_of(
            [&](Exec e) { parallel_out = moment_checks(8, samples, 1, e); }, Exec::parallel, 1);
        report("moment_checks", ts, tp,
               serial_out.mean_second == parallel_out.mean_second &&
                   serial_out.mean_fourth == parallel_out.mean_fourth);
    }

    {
        std::vector<SweepRow> serial_out, parallel_out;
        const double ts = time_of([&](Exec e) { serial_out = sweep(2, 40, e); }, Exec::serial, 1);
        const double tp = time_of([&](Exec e) { parallel_out = sweep(2, 40, e); }, Exec::parallel,
                                  1);
        bool identical = serial_out.size() == parallel_out.size();
        for (std::size_t i = 0; identical && i < serial_out.size(); ++i)
            identical = serial_out[i].ok == parallel_out[i].ok &&
                        serial_out[i].solution.bound_nats == parallel_out[i].solution.bound_nats;
        report("sweep 2..40", ts, tp, identical);
    }

    if (failures != 0) {
        std::fprintf(stderr, "%d kernel(s) gave different serial/parallel results\n", failures);
        return 1;
    }
    return 0;
}
