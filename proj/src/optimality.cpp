#include "ccbound/optimality.hpp"

#include <cmath>
#include <limits>

namespace ccbound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_dims(const DualCertificate& cert, const CBox& box, const InputPrior& prior,
                const char* who) {
    validate_certificate(cert);
    if (cert.num_outcomes != box.num_outcomes || cert.num_states != box.num_states ||
        cert.num_measurements != box.num_measurements)
        throw ValidationError(std::string(who) + ": certificate and box dimensions differ");
    if (prior.num_states() != box.num_states)
        throw ValidationError(std::string(who) + ": prior size does not match box");
}

double exponent_sum(const DualCertificate& cert, const SequenceSpace& seq, std::uint64_t k,
                    int a) {
    double u = 0.0;
    for (int b = 0; b < cert.num_measurements; ++b) u += cert.at(seq.digit(k, b), a, b);
    return u;
}

} // namespace

OptimalityReport check_conditions(const SimulationPolicy& policy, const DualCertificate& cert,
                                  const CBox& box, const InputPrior& prior, double tol) {
    check_dims(cert, box, prior, "check_conditions");
    if (policy.num_outcomes != box.num_outcomes || policy.num_states != box.num_states ||
        policy.num_measurements != box.num_measurements)
        throw ValidationError("check_conditions: policy and box dimensions differ");
    if (!(tol > 0.0)) throw ValidationError("check_conditions: tol must be positive");

    const int S = box.num_outcomes, A = box.num_states, M = box.num_measurements;
    const SequenceSpace seq = policy.sequences();
    const std::uint64_t K = seq.size();

    OptimalityReport report;
    report.tolerance = tol;

    for (std::uint64_t k = 0; k < K; ++k) {
        const double q = policy.mix[k];
        for (int a = 0; a < A; ++a) {
            const double model = q > 0.0 ? q * std::exp(exponent_sum(cert, seq, k, a)) : 0.0;
            report.residual_map_eq =
                std::max(report.residual_map_eq, std::fabs(policy.cond_at(k, a) - model));
            report.residual_nonneg =
                std::max(report.residual_nonneg, -std::min(0.0, policy.cond_at(k, a)));
        }
        const double slack = constraint_slack(cert, prior, k);
        report.residual_slack = std::max(report.residual_slack, slack - 1.0);
        report.residual_fixedpoint =
            std::max(report.residual_fixedpoint, std::fabs(q * (slack - 1.0)));
    }
    report.residual_slack = std::max(report.residual_slack, 0.0);

    for (int b = 0; b < M; ++b) {
        const std::vector<double> marg = marginal(policy, b);
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a)
                report.residual_marginal =
                    std::max(report.residual_marginal,
                             std::fabs(marg[static_cast<std::size_t>(s) * A + a] - box.at(s, a, b)));
    }

    report.passed = report.residual_map_eq <= tol && report.residual_slack <= tol &&
                    report.residual_marginal <= tol && report.residual_nonneg <= tol &&
                    report.residual_fixedpoint <= tol;
    return report;
}

OptimalityReport check_conditions_reduced(const std::vector<double>& mix,
                                          const DualCertificate& cert, const CBox& box,
                                          const InputPrior& prior, double tol) {
    check_dims(cert, box, prior, "check_conditions_reduced");
    if (!(tol > 0.0)) throw ValidationError("check_conditions_reduced: tol must be positive");

    const int S = box.num_outcomes, A = box.num_states, M = box.num_measurements;
    const SequenceSpace seq{S, M};
    const std::uint64_t K = seq.size();
    if (mix.size() != K)
        throw ValidationError("check_conditions_reduced: mixture has " +
                              std::to_string(mix.size()) + " entries, expected " +
                              std::to_string(K));

    OptimalityReport report;
    report.tolerance = tol;

    std::vector<double> reconstructed(static_cast<std::size_t>(S) * A * M, 0.0);
    for (std::uint64_t k = 0; k < K; ++k) {
        const double q = mix[k];
        report.residual_nonneg = std::max(report.residual_nonneg, -std::min(0.0, q));
        for (int a = 0; a < A; ++a) {
            const double model = q > 0.0 ? q * std::exp(exponent_sum(cert, seq, k, a)) : 0.0;
            for (int b = 0; b < M; ++b)
                reconstructed[(static_cast<std::size_t>(seq.digit(k, b)) * A + a) * M + b] += model;
        }
        const double slack = constraint_slack(cert, prior, k);
        report.residual_slack = std::max(report.residual_slack, slack - 1.0);
        report.residual_fixedpoint =
            std::max(report.residual_fixedpoint, std::fabs(q * (slack - 1.0)));
    }
    report.residual_slack = std::max(report.residual_slack, 0.0);

    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a)
            for (int b = 0; b < M; ++b)
                report.residual_marginal = std::max(
                    report.residual_marginal,
                    std::fabs(reconstructed[(static_cast<std::size_t>(s) * A + a) * M + b] -
                              box.at(s, a, b)));

    report.passed = report.residual_slack <= tol && report.residual_marginal <= tol &&
                    report.residual_nonneg <= tol && report.residual_fixedpoint <= tol;
    return report;
}

double duality_gap(const PrimalResult& primal, const DualResult& dual) {
    return primal.value_nats - dual.value_nats;
}

DualCertificate corollary1_normalize(const DualCertificate& cert, const CBox& box) {
    validate_certificate(cert);
    if (cert.num_outcomes != box.num_outcomes || cert.num_states != box.num_states ||
        cert.num_measurements != box.num_measurements)
        throw ValidationError("corollary1_normalize: certificate and box dimensions differ");
    DualCertificate out = cert;
    for (int s = 0; s < box.num_outcomes; ++s)
        for (int a = 0; a < box.num_states; ++a)
            for (int b = 0; b < box.num_measurements; ++b)
                if (box.at(s, a, b) <= 0.0) out.at(s, a, b) = kNegInf;
    return out;
}

} // namespace ccbound
