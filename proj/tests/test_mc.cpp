#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"

#include "ccbound/analytic.hpp"
#include "ccbound/mc.hpp"
#include "support.hpp"

using namespace ccbound;

TEST_SUITE("mc") {

    TEST_CASE("sampled states are unit vectors") {
        HaarSampler sampler{6, 99, 0};
        for (int i = 0; i < 50; ++i) {
            const auto state = sample_state(sampler);
            REQUIRE(state.size() == 6);
            double norm2 = 0.0;
            for (const auto& z : state) norm2 += std::norm(z);
            CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK(sampler.counter == 50);
    }

    TEST_CASE("samples are addressed by counter, not call history") {
        HaarSampler forward{4, 123, 0};
        std::vector<std::vector<std::complex<double>>> states;
        for (int i = 0; i < 8; ++i) states.push_back(sample_state(forward));

        HaarSampler jump{4, 123, 5};
        const auto fifth = sample_state(jump);
        for (int i = 0; i < 4; ++i) {
            CHECK(fifth[i].real() == states[5][i].real());
            CHECK(fifth[i].imag() == states[5][i].imag());
        }
        HaarSampler other_seed{4, 124, 5};
        const auto different = sample_state(other_seed);
        bool any_diff = false;
        for (int i = 0; i < 4; ++i) any_diff = any_diff || different[i] != states[5][i];
        CHECK(any_diff);
    }

    TEST_CASE("fidelity with a fixed state follows the Haar distribution") {
        // |<e0|phi>|^2 ~ Beta(1, N-1), cdf 1 - (1-u)^{N-1}
        const int N = 3;
        const std::size_t n = 4000;
        HaarSampler sampler{N, 7, 0};
        std::vector<double> u(n);
        for (double& x : u) x = std::norm(sample_state(sampler)[0]);
        const double d = testsupport::ks_statistic(
            u, [&](double x) { return 1.0 - std::pow(1.0 - x, N - 1.0); });
        CHECK(d < 1.63 / std::sqrt(static_cast<double>(n))); // ~1% point, fixed stream
    }

    TEST_CASE("moment identities hold within five standard errors") {
        for (int N : {2, 5}) {
            const MomentReport r = moment_checks(N, 200000, 3);
            CHECK(r.passed);
            CHECK(r.target_second == doctest::Approx(1.0 / N).epsilon(1e-15));
            CHECK(r.target_fourth == doctest::Approx(2.0 / (N * (N + 1.0))).epsilon(1e-15));
            CHECK(std::fabs(r.mean_second - r.target_second) <= 5.0 * r.se_second);
            CHECK(std::fabs(r.mean_fourth - r.target_fourth) <= 5.0 * r.se_fourth);
        }
    }

    TEST_CASE("moment sums are bit-identical across execution policies") {
        const MomentReport serial = moment_checks(4, 150000, 11, Exec::serial);
        const MomentReport parallel = moment_checks(4, 150000, 11, Exec::parallel);
        CHECK(serial.mean_second == parallel.mean_second);
        CHECK(serial.se_second == parallel.se_second);
        CHECK(serial.mean_fourth == parallel.mean_fourth);
        CHECK(serial.se_fourth == parallel.se_fourth);
    }

    TEST_CASE("cap overlap integral matches its closed form") {
        const int N = 2;
        HaarSampler fixed{N, 31, 0};
        const auto psi = sample_state(fixed);
        const auto chi = sample_state(fixed);
        const CapOverlapReport r = cap_overlap_check(N, 0.8, psi, chi, 200000, 32);
        CHECK(r.passed);
        CHECK(std::fabs(r.mean - r.target) <= 5.0 * r.se);
        const double expected_acceptance = std::pow(std::sin(0.8), 2.0 * N - 2.0);
        CHECK(std::fabs(r.acceptance_fraction - expected_acceptance) <= 0.01);
    }

    TEST_CASE("vanishing caps are rejected instead of silently failing") {
        HaarSampler fixed{5, 41, 0};
        const auto psi = sample_state(fixed);
        const auto chi = sample_state(fixed);
        CHECK_THROWS_AS(cap_overlap_check(5, 0.05, psi, chi, 2000, 42), Error);
    }

    TEST_CASE("grid search rediscovers the refined bound at dimension two") {
        const GridSearchResult r = grid_search_bound(2, GridSpec{}, 200000, 1);
        CHECK(std::fabs(r.bound_bits - refine_alpha_newton(2).bound_bits) <= 1e-2);
        CHECK(r.mc_passed);
        CHECK(r.mc_worst_sigma <= 5.0);
        CHECK(r.bound_nats == doctest::Approx(r.bound_bits * kLn2).epsilon(1e-14));
    }

    TEST_CASE("grid search is reproducible and policy independent") {
        GridSpec spec;
        spec.alpha_steps = 40;
        spec.beta_steps = 16;
        spec.theta_steps = 200;
        spec.refine_rounds = 3;
        const GridSearchResult a = grid_search_bound(2, spec, 50000, 17, Exec::serial);
        const GridSearchResult b = grid_search_bound(2, spec, 50000, 17, Exec::parallel);
        CHECK(a.bound_nats == b.bound_nats);
        CHECK(a.alpha == b.alpha);
        CHECK(a.beta == b.beta);
        CHECK(a.mc_worst_sigma == b.mc_worst_sigma);
    }

    TEST_CASE("input validation") {
        HaarSampler bad{0, 1, 0};
        CHECK_THROWS_AS(sample_state(bad), ValidationError);
        CHECK_THROWS_AS(moment_checks(1, 1000), ValidationError);
        CHECK_THROWS_AS(grid_search_bound(2, GridSpec{}, 50), ValidationError);
        HaarSampler fixed{3, 1, 0};
        const auto psi = sample_state(fixed);
        CHECK_THROWS_AS(cap_overlap_check(3, 0.5, psi, {{1.0, 0.0}}, 1000), ValidationError);
    }
}
