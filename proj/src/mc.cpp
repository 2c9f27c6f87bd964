#include "ccbound/mc.hpp"

#include <cmath>
#include <numbers>

#include "ccbound/analytic.hpp"
#include "ccbound/kernels.hpp"

namespace ccbound {

namespace {

constexpr std::uint64_t kMcBlock = 65536;

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Per-sample generator keyed by (seed, counter); the stream for a given key
/// never depends on what other samples were drawn.
struct SampleRng {
    std::uint64_t state;
    SampleRng(std::uint64_t seed, std::uint64_t counter)
        : state(mix64(seed ^ mix64(counter ^ 0x517cc1b727220a95ULL))) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    double uniform_open() { // (0, 1]
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    void gaussian_pair(double& g1, double& g2) {
        const double r = std::sqrt(-2.0 * std::log(uniform_open()));
        const double phi = 2.0 * std::numbers::pi * uniform_open();
        g1 = r * std::cos(phi);
        g2 = r * std::sin(phi);
    }
};

std::vector<std::complex<double>> draw_state(int N, std::uint64_t seed, std::uint64_t counter) {
    SampleRng rng(seed, counter);
    std::vector<std::complex<double>> state(N);
    double norm2 = 0.0;
    while (norm2 < 1e-280) {
        norm2 = 0.0;
        for (int i = 0; i < N; ++i) {
            double re, im;
            rng.gaussian_pair(re, im);
            state[i] = {re, im};
            norm2 += re * re + im * im;
        }
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : state) c *= inv;
    return state;
}

double abs2_inner(const std::vector<std::complex<double>>& x,
                  const std::vector<std::complex<double>>& y) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return std::norm(acc);
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(double sum, double sum_sq, std::uint64_t n) {
    MeanSe out;
    out.mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * out.mean * out.mean) / (n - 1.0));
    out.se = std::sqrt(var / n);
    return out;
}

double sigmas_away(const MeanSe& est, double target) {
    const double dev = std::fabs(est.mean - target);
    if (est.se > 0.0) return dev / est.se;
    return dev == 0.0 ? 0.0 : HUGE_VAL;
}

} // namespace

std::vector<std::complex<double>> sample_state(HaarSampler& sampler) {
    if (sampler.dimension < 1)
        throw ValidationError("sample_state: dimension must be positive");
    auto state = draw_state(sampler.dimension, sampler.seed, sampler.counter);
    ++sampler.counter;
    return state;
}

MomentReport moment_checks(int N, std::uint64_t samples, std::uint64_t seed, Exec exec) {
    if (N < 2) throw ValidationError("moment_checks: dimension must be at least 2");
    if (samples < 2) throw ValidationError("moment_checks: need at least 2 samples");

    const std::uint64_t blocks = (samples + kMcBlock - 1) / kMcBlock;
    std::vector<double> sum_u(blocks, 0.0), sum_u2(blocks, 0.0), sum_u4(blocks, 0.0);
    kernels::for_each_block(blocks, exec, [&](std::uint64_t blk) {
        const std::uint64_t begin = blk * kMcBlock, end = std::min(begin + kMcBlock, samples);
        double s1 = 0.0, s2 = 0.0, s4 = 0.0;
        for (std::uint64_t i = begin; i < end; ++i) {
            const auto state = draw_state(N, seed, i);
            const double u = std::norm(state[0]); // overlap with the reference basis state
            s1 += u;
            s2 += u * u;
            s4 += u * u * u * u;
        }
        sum_u[blk] = s1;
        sum_u2[blk] = s2;
        sum_u4[blk] = s4;
    });
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (std::uint64_t blk = 0; blk < blocks; ++blk) {
        s1 += sum_u[blk];
        s2 += sum_u2[blk];
        s4 += sum_u4[blk];
    }

    MomentReport report;
    report.dimension = N;
    report.samples = samples;
    const MeanSe second = mean_se(s1, s2, samples);
    const MeanSe fourth = mean_se(s2, s4, samples);
    report.mean_second = second.mean;
    report.se_second = second.se;
    report.target_second = 1.0 / N;
    report.mean_fourth = fourth.mean;
    report.se_fourth = fourth.se;
    report.target_fourth = 2.0 / (static_cast<double>(N) * (N + 1));
    report.passed = sigmas_away(second, report.target_second) <= 5.0 &&
                    sigmas_away(fourth, report.target_fourth) <= 5.0;
    return report;
}

CapOverlapReport cap_overlap_check(int N, double theta, const std::vector<std::complex<double>>& psi,
                                   const std::vector<std::complex<double>>& chi,
                                   std::uint64_t samples, std::uint64_t seed, Exec exec) {
    if (N < 2) throw ValidationError("cap_overlap_check: dimension must be at least 2");
    if (static_cast<int>(psi.size()) != N || static_cast<int>(chi.size()) != N)
        throw ValidationError("cap_overlap_check: state dimensions do not match N");
    if (samples < 2) throw ValidationError("cap_overlap_check: need at least 2 samples");
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0 + 1e-12))
        throw ValidationError("cap_overlap_check: theta must lie in [0, pi/2]");
    for (const auto* v : {&psi, &chi}) {
        double n2 = 0.0;
        for (const auto& c : *v) n2 += std::norm(c);
        if (std::fabs(n2 - 1.0) > 1e-10)
            throw ValidationError("cap_overlap_check: states must be unit vectors");
    }

    const double cos2 = std::cos(theta) * std::cos(theta);
    const std::uint64_t blocks = (samples + kMcBlock - 1) / kMcBlock;
    std::vector<double> sum_x(blocks, 0.0), sum_x2(blocks, 0.0), sum_acc(blocks, 0.0);
    kernels::for_each_block(blocks, exec, [&](std::uint64_t blk) {
        const std::uint64_t begin = blk * kMcBlock, end = std::min(begin + kMcBlock, samples);
        double s1 = 0.0, s2 = 0.0, acc = 0.0;
        for (std::uint64_t i = begin; i < end; ++i) {
            const auto state = draw_state(N, seed, i);
            if (abs2_inner(chi, state) < cos2) continue;
            acc += 1.0;
            const double x = abs2_inner(psi, state);
            s1 += x;
            s2 += x * x;
        }
        sum_x[blk] = s1;
        sum_x2[blk] = s2;
        sum_acc[blk] = acc;
    });
    double s1 = 0.0, s2 = 0.0, accepted = 0.0;
    for (std::uint64_t blk = 0; blk < blocks; ++blk) {
        s1 += sum_x[blk];
        s2 += sum_x2[blk];
        accepted += sum_acc[blk];
    }

    CapOverlapReport report;
    report.dimension = N;
    report.samples = samples;
    report.theta = theta;
    report.acceptance_fraction = accepted / samples;
    if (report.acceptance_fraction < 1e-4)
        throw Error("cap_overlap_check: cap acceptance fraction " +
                    std::to_string(report.acceptance_fraction) +
                    " is too small for a meaningful estimate; enlarge theta or samples");
    const MeanSe est = mean_se(s1, s2, samples);
    report.mean = est.mean;
    report.se = est.se;
    report.target = cap_volume(N, theta) *
                    (cos2 * abs2_inner(psi, chi) + std::sin(theta) * std::sin(theta) / N);
    report.passed = sigmas_away(est, report.target) <= 5.0;
    return report;
}

namespace {

struct GridWinner {
    double bound = -HUGE_VAL;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Certified value of one candidate pair: the ansatz objective plus the
/// (nonpositive) constraint-scan minimum.
double pair_bound(int N, double alpha, double beta, int theta_steps) {
    const double terms =
        beta / N + 2.0 * alpha / (static_cast<double>(N) * (N + 1));
    const kernels::ThetaScanResult scan =
        kernels::theta_scan_min(N, alpha, beta, theta_steps, Exec::serial);
    return terms + std::min(0.0, scan.min_value);
}

} // namespace

GridSearchResult grid_search_bound(int N, const GridSpec& spec, std::uint64_t samples,
                                   std::uint64_t seed, Exec exec) {
    if (N < 2) throw ValidationError("grid_search_bound: dimension must be at least 2");
    if (spec.alpha_steps < 2 || spec.beta_steps < 2 || spec.theta_steps < 2)
        throw ValidationError("grid_search_bound: grid needs at least 2 steps per axis");
    if (spec.refine_rounds < 1)
        throw ValidationError("grid_search_bound: refine_rounds must be positive");
    if (samples < 100) throw ValidationError("grid_search_bound: need at least 100 samples");

    const double alpha_max =
        spec.alpha_max > 0.0 ? spec.alpha_max : 4.0 * N * static_cast<double>(N) * N;

    // Round 0 covers alpha in [0, alpha_max]; for each alpha, beta spans the
    // significant region [-alpha, -alpha/N] (outside it the scan penalty can
    // only lose). Later rounds re-center a shrinking window on the incumbent.
    double a_lo = 0.0, a_hi = alpha_max;
    double b_rel_lo = -1.0, b_rel_hi = -1.0 / N; // relative to alpha in round 0
    GridWinner winner;
    double a_step = 0.0, b_step = 0.0;
    for (int round = 0; round < spec.refine_rounds; ++round) {
        const std::uint64_t pairs =
            static_cast<std::uint64_t>(spec.alpha_steps) * spec.beta_steps;
        constexpr std::uint64_t kPairBlock = 8;
        std::vector<GridWinner> partial((pairs + kPairBlock - 1) / kPairBlock);
        const bool relative_beta = round == 0;
        kernels::for_each_block(partial.size(), exec, [&](std::uint64_t blk) {
            const std::uint64_t begin = blk * kPairBlock, end = std::min(begin + kPairBlock, pairs);
            GridWinner best;
            for (std::uint64_t p = begin; p < end; ++p) {
                const int ia = static_cast<int>(p / spec.beta_steps);
                const int ib = static_cast<int>(p % spec.beta_steps);
                const double alpha = a_lo + (a_hi - a_lo) * ia / (spec.alpha_steps - 1);
                if (alpha < 0.0) continue;
                const double beta =
                    relative_beta
                        ? alpha * (b_rel_lo + (b_rel_hi - b_rel_lo) * ib / (spec.beta_steps - 1))
                        : b_rel_lo + (b_rel_hi - b_rel_lo) * ib / (spec.beta_steps - 1);
                const double bound = pair_bound(N, alpha, beta, spec.theta_steps);
                if (bound > best.bound) best = {bound, alpha, beta};
            }
            partial[blk] = best;
        });
        for (const GridWinner& p : partial)
            if (p.bound > winner.bound) winner = p;

        a_step = (a_hi - a_lo) / (spec.alpha_steps - 1);
        b_step = relative_beta
                     ? std::fabs(winner.alpha) * (b_rel_hi - b_rel_lo) / (spec.beta_steps - 1)
                     : (b_rel_hi - b_rel_lo) / (spec.beta_steps - 1);
        a_lo = std::max(0.0, winner.alpha - 2.0 * a_step);
        a_hi = winner.alpha + 2.0 * a_step;
        b_rel_lo = winner.beta - 2.0 * b_step;
        b_rel_hi = winner.beta + 2.0 * b_step;
    }

    GridSearchResult result;
    result.dimension = N;
    result.alpha = winner.alpha;
    result.beta = winner.beta;
    // Final certification scan at finer resolution.
    const kernels::ThetaScanResult fine =
        kernels::theta_scan_min(N, winner.alpha, winner.beta, 4 * spec.theta_steps + 1, exec);
    result.bound_nats = winner.beta / N +
                        2.0 * winner.alpha / (static_cast<double>(N) * (N + 1)) +
                        std::min(0.0, fine.min_value);
    result.bound_bits = nats_to_bits(result.bound_nats);

    // Independent re-check of the constraint ingredients at the winner: the
    // cap-tail transform E[e^{-y(1-u)}] with u the overlap against a fixed
    // state, and the cap volume E[1{u >= cos^2 theta}], both via Monte Carlo.
    std::vector<double> u(samples);
    const std::uint64_t blocks = (samples + kMcBlock - 1) / kMcBlock;
    kernels::for_each_block(blocks, exec, [&](std::uint64_t blk) {
        const std::uint64_t begin = blk * kMcBlock, end = std::min(begin + kMcBlock, samples);
        for (std::uint64_t i = begin; i < end; ++i)
            u[i] = std::norm(draw_state(N, seed, i)[0]);
    });

    std::vector<double> thetas = {0.35, 0.7, 1.05, 1.4};
    if (fine.min_theta > 0.05) thetas.push_back(fine.min_theta);
    result.mc_worst_sigma = 0.0;
    for (double theta : thetas) {
        const double S = cap_volume(N, theta);
        const double cos2 = std::cos(theta) * std::cos(theta);
        const double y = winner.alpha * S * cos2;
        std::vector<double> tail1(blocks, 0.0), tail2(blocks, 0.0);
        std::vector<double> vol1(blocks, 0.0);
        kernels::for_each_block(blocks, exec, [&](std::uint64_t blk) {
            const std::uint64_t begin = blk * kMcBlock, end = std::min(begin + kMcBlock, samples);
            double t1 = 0.0, t2 = 0.0, v1 = 0.0;
            for (std::uint64_t i = begin; i < end; ++i) {
                const double e = std::exp(-y * (1.0 - u[i]));
                t1 += e;
                t2 += e * e;
                if (u[i] >= cos2) v1 += 1.0;
            }
            tail1[blk] = t1;
            tail2[blk] = t2;
            vol1[blk] = v1;
        });
        double t1 = 0.0, t2 = 0.0, v1 = 0.0;
        for (std::uint64_t blk = 0; blk < blocks; ++blk) {
            t1 += tail1[blk];
            t2 += tail2[blk];
            v1 += vol1[blk];
        }
        const MeanSe tail = mean_se(t1, t2, samples);
        // Closed form: E[e^{-y(1-u)}] = Gamma(N) P(N-1, y) / y^{N-1}, recovered
        // from the constraint function as -F - S(beta + alpha(t/N + cos^2)).
        const double log_tail = -f_theta(N, theta, winner.alpha, winner.beta) -
                                S * (winner.beta + winner.alpha *
                                                       (std::sin(theta) * std::sin(theta) / N + cos2));
        result.mc_worst_sigma = std::max(result.mc_worst_sigma,
                                         sigmas_away(tail, std::exp(log_tail)));
        if (S * samples >= 50.0) {
            const MeanSe vol = mean_se(v1, v1, samples); // indicator: sum of squares = sum
            result.mc_worst_sigma = std::max(result.mc_worst_sigma, sigmas_away(vol, S));
        }
    }
    result.mc_passed = result.mc_worst_sigma <= 5.0;
    return result;
}

} // namespace ccbound
