#pragma once

// Independent reference implementations ("oracles") used to pin expected
// values in the tests. Deliberately simple and slow, and sharing no code
// paths with the library: finite tail sums, bisection, exhaustive grid
// refinement, compensated long-double accumulation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "ccbound/cbox.hpp"
#include "ccbound/policy.hpp"

namespace testsupport {

/// Mutual information of a policy in nats, long-double Kahan summation.
inline double mi_reference(const ccbound::SimulationPolicy& policy) {
    const std::uint64_t K = policy.num_sequences();
    const int A = policy.num_states;
    std::vector<long double> mix(K, 0.0L);
    for (std::uint64_t k = 0; k < K; ++k)
        for (int a = 0; a < A; ++a)
            mix[k] += static_cast<long double>(policy.prior.rho[a]) * policy.cond_at(k, a);
    long double sum = 0.0L, comp = 0.0L;
    for (std::uint64_t k = 0; k < K; ++k) {
        for (int a = 0; a < A; ++a) {
            const long double w = policy.prior.rho[a];
            const long double p = policy.cond_at(k, a);
            if (w <= 0.0L || p <= 0.0L || mix[k] <= 0.0L) continue;
            const long double term = w * p * std::log(p / mix[k]);
            const long double y = term - comp;
            const long double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    return static_cast<double>(sum);
}

/// Regularized upper incomplete gamma Q(n, y) for integer n >= 1: the exact
/// Poisson tail sum e^{-y} sum_{j<n} y^j / j!.
inline long double gamma_q_integer_reference(int n, long double y) {
    if (n < 1) throw std::invalid_argument("gamma_q_integer_reference: n >= 1");
    if (y < 0.0L) throw std::invalid_argument("gamma_q_integer_reference: y >= 0");
    long double term = 1.0L, sum = 1.0L;
    for (int j = 1; j < n; ++j) {
        term *= y / j;
        sum += term;
    }
    return sum * std::exp(-y);
}

/// Principal Lambert W by bisection on w e^w = x, for x >= -1/e.
inline double lambert_reference(double x) {
    const double inv_e = std::exp(-1.0);
    if (x < -inv_e) throw std::invalid_argument("lambert_reference: x >= -1/e");
    double lo, hi;
    if (x >= 0.0) {
        lo = 0.0;
        hi = 1.0 + std::log1p(x);
    } else {
        lo = -1.0;
        hi = 0.0;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid * std::exp(mid) < x ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// One-sample Kolmogorov-Smirnov statistic against a continuous cdf.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

/// Random box with independent exponential draws normalized per (a,b) column.
inline ccbound::CBox random_cbox(int S, int A, int M, std::mt19937_64& rng) {
    ccbound::CBox box;
    box.num_outcomes = S;
    box.num_states = A;
    box.num_measurements = M;
    box.prob.assign(static_cast<std::size_t>(S) * A * M, 0.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int a = 0; a < A; ++a) {
        for (int b = 0; b < M; ++b) {
            double total = 0.0;
            for (int s = 0; s < S; ++s) {
                const double draw = -std::log(1.0 - unif(rng));
                box.at(s, a, b) = draw;
                total += draw;
            }
            for (int s = 0; s < S; ++s) box.at(s, a, b) /= total;
        }
    }
    return box;
}

namespace detail {

/// Mutual information of the S=2, M=2 policy family parameterized by the
/// per-preparation joint probability t_a of outcome pair (1,1), long double.
inline long double qubit_mi_of(const ccbound::CBox& box, const ccbound::InputPrior& prior,
                               const std::vector<long double>& t) {
    const int A = box.num_states;
    // cells in sequence order k = s_0 + 2 s_1
    std::vector<long double> cond(4 * static_cast<std::size_t>(A));
    std::vector<long double> mix(4, 0.0L);
    for (int a = 0; a < A; ++a) {
        const long double p0 = box.at(1, a, 0);
        const long double p1 = box.at(1, a, 1);
        long double* row = cond.data() + 4 * static_cast<std::size_t>(a);
        row[0] = 1.0L - p0 - p1 + t[a];
        row[1] = p0 - t[a];
        row[2] = p1 - t[a];
        row[3] = t[a];
        for (int k = 0; k < 4; ++k) {
            if (row[k] < 0.0L) row[k] = 0.0L;
            mix[k] += prior.rho[a] * row[k];
        }
    }
    long double sum = 0.0L;
    for (int a = 0; a < A; ++a)
        for (int k = 0; k < 4; ++k) {
            const long double p = cond[4 * static_cast<std::size_t>(a) + k];
            if (prior.rho[a] <= 0.0L || p <= 0.0L || mix[k] <= 0.0L) continue;
            sum += prior.rho[a] * p * std::log(p / mix[k]);
        }
    return sum;
}

} // namespace detail

/// Exhaustive minimum of the mutual information over all marginal-matching
/// policies of an S=2, M=2 box: each preparation's policy is a 2x2 joint
/// table with fixed margins, a one-parameter family over the interval
/// [max(0, p0+p1-1), min(p0, p1)]. Nested grid refinement plus golden-section
/// coordinate descent (the objective is jointly convex in the parameters).
inline double qubit_mi_reference(const ccbound::CBox& box, const ccbound::InputPrior& prior) {
    if (box.num_outcomes != 2 || box.num_measurements != 2)
        throw std::invalid_argument("qubit_mi_reference: S=2, M=2 only");
    const int A = box.num_states;
    std::vector<long double> lo(A), hi(A), t(A), best(A);
    for (int a = 0; a < A; ++a) {
        const long double p0 = box.at(1, a, 0);
        const long double p1 = box.at(1, a, 1);
        lo[a] = std::max<long double>(0.0L, p0 + p1 - 1.0L);
        hi[a] = std::min(p0, p1);
        best[a] = 0.5L * (lo[a] + hi[a]);
    }

    const int grid = 13;
    std::vector<long double> wlo = lo, whi = hi;
    long double best_value = detail::qubit_mi_of(box, prior, best);
    for (int round = 0; round < 24; ++round) {
        std::vector<int> idx(A, 0);
        for (;;) {
            for (int a = 0; a < A; ++a)
                t[a] = wlo[a] + (whi[a] - wlo[a]) * idx[a] / (grid - 1);
            const long double v = detail::qubit_mi_of(box, prior, t);
            if (v < best_value) {
                best_value = v;
                best = t;
            }
            int a = 0;
            while (a < A && ++idx[a] == grid) idx[a++] = 0;
            if (a == A) break;
        }
        for (int a = 0; a < A; ++a) {
            const long double step = (whi[a] - wlo[a]) / (grid - 1);
            wlo[a] = std::max(lo[a], best[a] - 2 * step);
            whi[a] = std::min(hi[a], best[a] + 2 * step);
        }
    }

    const long double golden = 0.5L * (std::sqrt(5.0L) - 1.0L);
    for (int sweep = 0; sweep < 200; ++sweep) {
        const long double before = best_value;
        for (int a = 0; a < A; ++a) {
            long double xl = lo[a], xr = hi[a];
            long double m1 = xr - golden * (xr - xl);
            long double m2 = xl + golden * (xr - xl);
            t = best;
            t[a] = m1;
            long double f1 = detail::qubit_mi_of(box, prior, t);
            t[a] = m2;
            long double f2 = detail::qubit_mi_of(box, prior, t);
            for (int i = 0; i < 120; ++i) {
                if (f1 <= f2) {
                    xr = m2;
                    m2 = m1;
                    f2 = f1;
                    m1 = xr - golden * (xr - xl);
                    t[a] = m1;
                    f1 = detail::qubit_mi_of(box, prior, t);
                } else {
                    xl = m1;
                    m1 = m2;
                    f1 = f2;
                    m2 = xl + golden * (xr - xl);
                    t[a] = m2;
                    f2 = detail::qubit_mi_of(box, prior, t);
                }
            }
            best[a] = 0.5L * (xl + xr);
            t = best;
            const long double v = detail::qubit_mi_of(box, prior, t);
            if (v < best_value) best_value = v;
        }
        if (before - best_value < 1e-15L) break;
    }
    return static_cast<double>(best_value);
}

} // namespace testsupport
