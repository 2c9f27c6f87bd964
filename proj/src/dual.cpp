#include "ccbound/dual.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ccbound/kernels.hpp"
#include "ccbound/optimality.hpp"

namespace ccbound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

} // namespace

DualCertificate DualCertificate::zeros(int S, int A, int M) {
    if (S <= 0 || A <= 0 || M <= 0)
        throw ValidationError("certificate dimensions must be positive");
    DualCertificate cert;
    cert.num_outcomes = S;
    cert.num_states = A;
    cert.num_measurements = M;
    cert.lambda.assign(static_cast<std::size_t>(S) * A * M, 0.0);
    return cert;
}

void validate_certificate(const DualCertificate& cert) {
    const std::size_t expected = static_cast<std::size_t>(cert.num_outcomes) * cert.num_states *
                                 cert.num_measurements;
    if (cert.num_outcomes <= 0 || cert.num_states <= 0 || cert.num_measurements <= 0 ||
        cert.lambda.size() != expected)
        throw ValidationError("certificate has inconsistent dimensions");
    for (double v : cert.lambda) {
        if (std::isnan(v)) throw ValidationError("certificate contains NaN");
        if (v == std::numeric_limits<double>::infinity())
            throw ValidationError("certificate contains +inf; only -inf entries are allowed");
    }
}

DualObjective dual_objective(const DualCertificate& cert, const CBox& box,
                             const InputPrior& prior) {
    validate_certificate(cert);
    if (cert.num_outcomes != box.num_outcomes || cert.num_states != box.num_states ||
        cert.num_measurements != box.num_measurements)
        throw ValidationError("dual_objective: certificate and box dimensions differ");
    if (prior.num_states() != box.num_states)
        throw ValidationError("dual_objective: prior size does not match box");

    DualObjective out;
    for (int s = 0; s < box.num_outcomes; ++s)
        for (int a = 0; a < box.num_states; ++a)
            for (int b = 0; b < box.num_measurements; ++b) {
                const double weight = box.at(s, a, b) * prior.rho[a];
                if (weight <= 0.0) continue;
                const double v = cert.at(s, a, b);
                if (v == kNegInf) {
                    out.minus_infinity = true;
                    out.value_nats = kNegInf;
                    return out;
                }
                out.value_nats += weight * v;
            }
    return out;
}

double constraint_slack(const DualCertificate& cert, const InputPrior& prior, std::uint64_t k) {
    const SequenceSpace seq{cert.num_outcomes, cert.num_measurements};
    const int A = cert.num_states, M = cert.num_measurements;
    double max_log = kNegInf;
    std::vector<double> logs(A, kNegInf);
    for (int a = 0; a < A; ++a) {
        const double w = prior.rho[a];
        if (w <= 0.0) continue;
        double u = std::log(w);
        for (int b = 0; b < M; ++b) u += cert.at(seq.digit(k, b), a, b);
        logs[a] = u;
        max_log = std::max(max_log, u);
    }
    if (max_log == kNegInf) return 0.0;
    double acc = 0.0;
    for (int a = 0; a < A; ++a)
        if (logs[a] != kNegInf) acc += std::exp(logs[a] - max_log);
    return std::exp(max_log) * acc;
}

DualResult certify_lower_bound(const DualCertificate& cert, const CBox& box,
                               const InputPrior& prior, double tol, std::uint64_t max_sequences,
                               Exec exec) {
    const ValidationResult vb = validate_cbox(box);
    if (!vb.valid) throw ValidationError("certify_lower_bound: " + vb.message);
    const ValidationResult vp = validate_prior(prior);
    if (!vp.valid) throw ValidationError("certify_lower_bound: " + vp.message);
    SequenceSpace::make(box.num_outcomes, box.num_measurements, max_sequences);

    const DualObjective obj = dual_objective(cert, box, prior);
    const kernels::SlackScanResult scan = kernels::max_slack_scan(cert, prior, exec);

    DualResult result;
    result.certificate = cert;
    result.value_nats = obj.value_nats;
    result.worst_sequence = scan.argmax;
    result.worst_slack = scan.max_slack;
    result.feasible = scan.max_slack <= 1.0 + tol;
    result.converged = true;
    return result;
}

DualCertificate shrink_to_feasible(const DualCertificate& cert, const InputPrior& prior,
                                   Exec exec) {
    validate_certificate(cert);
    const kernels::SlackScanResult scan = kernels::max_slack_scan(cert, prior, exec);
    if (scan.max_slack <= 1.0) return cert;
    const double eps = std::log(scan.max_slack) / cert.num_measurements;
    DualCertificate out = cert;
    for (double& v : out.lambda)
        if (v != kNegInf) v -= eps;
    return out;
}

namespace {

/// Interior-point workspace over the finite multipliers. Entries with
/// P(s,a,b) = 0 or rho(a) = 0 are excluded: the former are pinned to -inf up
/// front (they never enter the objective and only tighten constraints), the
/// latter never enter either side.
struct BarrierProblem {
    const CBox& box;
    const InputPrior& prior;
    SequenceSpace seq;
    std::uint64_t K = 0;
    std::vector<int> var_index; // (s,a,b) -> variable or -1
    std::vector<double> w;      // objective weights per variable
    int m = 0;
    std::vector<char> alive;    // constraint k has at least one contributing state

    explicit BarrierProblem(const CBox& b, const InputPrior& p)
        : box(b), prior(p), seq{b.num_outcomes, b.num_measurements} {
        K = seq.size();
        const int S = box.num_outcomes, A = box.num_states, M = box.num_measurements;
        var_index.assign(static_cast<std::size_t>(S) * A * M, -1);
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a)
                for (int b2 = 0; b2 < M; ++b2)
                    if (box.at(s, a, b2) > 0.0 && prior.rho[a] > 0.0) {
                        var_index[(static_cast<std::size_t>(s) * A + a) * M + b2] = m++;
                        w.push_back(box.at(s, a, b2) * prior.rho[a]);
                    }
        alive.assign(K, 0);
        for (std::uint64_t k = 0; k < K; ++k)
            for (int a = 0; a < A && !alive[k]; ++a) {
                if (prior.rho[a] <= 0.0) continue;
                bool finite = true;
                for (int b2 = 0; b2 < M; ++b2)
                    if (var(seq.digit(k, b2), a, b2) < 0) { finite = false; break; }
                if (finite) alive[k] = 1;
            }
    }

    int var(int s, int a, int b) const {
        return var_index[(static_cast<std::size_t>(s) * box.num_states + a) *
                             box.num_measurements +
                         b];
    }

    std::uint64_t alive_count() const {
        std::uint64_t n = 0;
        for (char c : alive) n += c;
        return n;
    }

    /// log slack_k(x), or -inf for dead constraints; fills per-state weights
    /// pi (posterior over contributing states) when requested.
    double log_slack(const Eigen::VectorXd& x, std::uint64_t k, std::vector<double>* pi) const {
        const int A = box.num_states, M = box.num_measurements;
        std::vector<double> logs(A, kNegInf);
        double max_log = kNegInf;
        for (int a = 0; a < A; ++a) {
            if (prior.rho[a] <= 0.0) continue;
            double u = std::log(prior.rho[a]);
            bool finite = true;
            for (int b = 0; b < M; ++b) {
                const int j = var(seq.digit(k, b), a, b);
                if (j < 0) { finite = false; break; }
                u += x[j];
            }
            if (!finite) continue;
            logs[a] = u;
            max_log = std::max(max_log, u);
        }
        if (max_log == kNegInf) return kNegInf;
        double acc = 0.0;
        for (int a = 0; a < A; ++a)
            if (logs[a] != kNegInf) acc += std::exp(logs[a] - max_log);
        const double ls = max_log + std::log(acc);
        if (pi) {
            pi->assign(A, 0.0);
            for (int a = 0; a < A; ++a)
                if (logs[a] != kNegInf) (*pi)[a] = std::exp(logs[a] - ls);
        }
        return ls;
    }

    /// Barrier value at parameter t, +inf when x leaves the interior.
    double psi(const Eigen::VectorXd& x, double t) const {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) acc -= t * w[j] * x[j];
        for (std::uint64_t k = 0; k < K; ++k) {
            if (!alive[k]) continue;
            const double c = log_slack(x, k, nullptr);
            if (!(c < 0.0)) return HUGE_VAL;
            acc -= std::log(-c);
        }
        return acc;
    }

    void gradient_hessian(const Eigen::VectorXd& x, double t, Eigen::VectorXd& g,
                          Eigen::MatrixXd& H) const {
        const int A = box.num_states, M = box.num_measurements;
        g.setZero(m);
        H.setZero(m, m);
        for (int j = 0; j < m; ++j) g[j] = -t * w[j];

        std::vector<double> pi;
        std::vector<int> idx(M);
        Eigen::VectorXd gk(m);
        for (std::uint64_t k = 0; k < K; ++k) {
            if (!alive[k]) continue;
            const double c = log_slack(x, k, &pi);
            gk.setZero();
            for (int a = 0; a < A; ++a) {
                if (pi[a] <= 0.0) continue;
                for (int b = 0; b < M; ++b) {
                    idx[b] = var(seq.digit(k, b), a, b);
                    gk[idx[b]] += pi[a];
                }
                // pi-weighted outer product of the state's indicator vector
                const double coeff = -pi[a] / c;
                for (int b1 = 0; b1 < M; ++b1)
                    for (int b2 = 0; b2 < M; ++b2) H(idx[b1], idx[b2]) += coeff;
            }
            g += (-1.0 / c) * gk;
            H += (1.0 / (c * c) + 1.0 / c) * (gk * gk.transpose());
        }
    }
};

int barrier_minimize(BarrierProblem& prob, Eigen::VectorXd& x, double t, int budget) {
    Eigen::VectorXd g;
    Eigen::MatrixXd H;
    int used = 0;
    for (; used < std::min(budget, 60); ++used) {
        prob.gradient_hessian(x, t, g, H);
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(H);
        const Eigen::VectorXd step = cod.solve(-g);
        const double decrement2 = -g.dot(step);
        if (!(decrement2 > 1e-10)) { ++used; break; }

        const double f0 = prob.psi(x, t);
        const double slope = g.dot(step);
        double tau = 1.0;
        bool accepted = false;
        while (tau > 1e-14) {
            const double f1 = prob.psi(x + tau * step, t);
            if (f1 <= f0 + 0.25 * tau * slope) {
                x += tau * step;
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if (!accepted) { ++used; break; }
    }
    return used;
}

/// Newton on the active constraint equalities, minimum-norm steps. Leaves x
/// untouched on failure; the caller keeps an objective guard around it.
int polish_active_set(BarrierProblem& prob, Eigen::VectorXd& x) {
    const int A = prob.box.num_states, M = prob.box.num_measurements;
    std::vector<std::uint64_t> active;
    for (std::uint64_t k = 0; k < prob.K; ++k) {
        if (!prob.alive[k]) continue;
        if (prob.log_slack(x, k, nullptr) >= -1e-3) active.push_back(k);
    }
    if (active.empty()) return 0;
    const int nA = static_cast<int>(active.size());

    Eigen::MatrixXd J(nA, prob.m);
    Eigen::VectorXd r(nA);
    std::vector<double> pi;
    int used = 0;
    for (; used < 50; ++used) {
        J.setZero();
        double max_resid = 0.0;
        for (int i = 0; i < nA; ++i) {
            r[i] = prob.log_slack(x, active[i], &pi);
            max_resid = std::max(max_resid, std::fabs(r[i]));
            for (int a = 0; a < A; ++a) {
                if (pi[a] <= 0.0) continue;
                for (int b = 0; b < M; ++b)
                    J(i, prob.var(prob.seq.digit(active[i], b), a, b)) += pi[a];
            }
        }
        if (max_resid <= 1e-14) break;

        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
        const Eigen::VectorXd step = cod.solve(-r);
        const double phi0 = r.squaredNorm();
        double tau = 1.0;
        bool accepted = false;
        while (tau > 1e-10) {
            const Eigen::VectorXd xt = x + tau * step;
            double phi1 = 0.0;
            for (int i = 0; i < nA; ++i) {
                const double ri = prob.log_slack(xt, active[i], nullptr);
                phi1 += ri * ri;
            }
            if (phi1 < phi0) {
                x = xt;
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if (!accepted) break;
    }
    return used;
}

} // namespace

DualResult solve_dual(const CBox& box, const InputPrior& prior, const DualOptions& options) {
    const ValidationResult vb = validate_cbox(box);
    if (!vb.valid) throw ValidationError("solve_dual: " + vb.message);
    const ValidationResult vp = validate_prior(prior);
    if (!vp.valid) throw ValidationError("solve_dual: " + vp.message);
    if (prior.num_states() != box.num_states)
        throw ValidationError("solve_dual: prior size does not match box");
    if (!(options.tol > 0.0)) throw ValidationError("solve_dual: tol must be positive");
    if (!(options.feas_tol > 0.0)) throw ValidationError("solve_dual: feas_tol must be positive");
    if (options.max_iter < 1) throw ValidationError("solve_dual: max_iter must be positive");
    if (!(options.barrier_mu > 1.0))
        throw ValidationError("solve_dual: barrier_mu must exceed 1");
    SequenceSpace::make(box.num_outcomes, box.num_measurements, options.max_sequences);

    BarrierProblem prob(box, prior);
    Eigen::VectorXd x = Eigen::VectorXd::Constant(prob.m, -1.0 / box.num_measurements);

    const double n_alive = static_cast<double>(std::max<std::uint64_t>(prob.alive_count(), 1));
    int used = 0;
    double t = 1.0;
    bool budget_ok = true;
    for (;;) {
        used += barrier_minimize(prob, x, t, options.max_iter - used);
        if (used >= options.max_iter) {
            budget_ok = n_alive / t <= 0.5 * options.tol;
            break;
        }
        if (n_alive / t <= 0.5 * options.tol) break;
        t *= options.barrier_mu;
    }

    auto objective_of = [&](const Eigen::VectorXd& v) {
        double acc = 0.0;
        for (int j = 0; j < prob.m; ++j) acc += prob.w[j] * v[j];
        return acc;
    };

    if (options.polish && used < options.max_iter) {
        const Eigen::VectorXd before = x;
        const double v0 = objective_of(x);
        used += polish_active_set(prob, x);
        if (objective_of(x) < v0 - 1e-12 * std::max(1.0, std::fabs(v0))) x = before;
    }

    DualCertificate cert = DualCertificate::zeros(box.num_outcomes, box.num_states,
                                                  box.num_measurements);
    for (int s = 0; s < box.num_outcomes; ++s)
        for (int a = 0; a < box.num_states; ++a)
            for (int b = 0; b < box.num_measurements; ++b) {
                const int j = prob.var(s, a, b);
                cert.at(s, a, b) = j >= 0 ? x[j] : (box.at(s, a, b) <= 0.0 ? kNegInf : 0.0);
            }
    cert = shrink_to_feasible(cert, prior);

    DualResult result = certify_lower_bound(cert, box, prior, options.feas_tol,
                                            options.max_sequences);
    result.iterations = used;
    result.converged = budget_ok && result.feasible;
    return result;
}

DualResult solve_dual(const CBox& box, const InputPrior& prior, double tol, int max_iter) {
    DualOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    return solve_dual(box, prior, options);
}

DualCertificate extract_certificate(const PrimalResult& primal, const CBox& box,
                                    double residual_tol) {
    const SimulationPolicy& policy = primal.policy;
    if (policy.num_outcomes != box.num_outcomes || policy.num_states != box.num_states ||
        policy.num_measurements != box.num_measurements)
        throw ValidationError("extract_certificate: policy and box dimensions differ");
    if (!(residual_tol > 0.0))
        throw ValidationError("extract_certificate: residual_tol must be positive");

    const int S = box.num_outcomes, A = box.num_states, M = box.num_measurements;
    const SequenceSpace seq = policy.sequences();
    const std::uint64_t K = seq.size();
    const int cols = S * M;

    DualCertificate cert = DualCertificate::zeros(S, A, M);
    for (int a = 0; a < A; ++a) {
        std::vector<std::uint64_t> rows;
        for (std::uint64_t k = 0; k < K; ++k)
            if (policy.cond_at(k, a) > 1e-100 && policy.mix[k] > 0.0) rows.push_back(k);
        if (rows.empty())
            throw Error("extract_certificate: state " + std::to_string(a) +
                        " has an empty support");

        Eigen::MatrixXd eqs(rows.size(), cols);
        Eigen::VectorXd rhs(rows.size());
        eqs.setZero();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::uint64_t k = rows[i];
            const double weight = std::sqrt(policy.cond_at(k, a));
            for (int b = 0; b < M; ++b) eqs(i, seq.digit(k, b) * M + b) += weight;
            rhs[i] = weight * (std::log(policy.cond_at(k, a)) - std::log(policy.mix[k]));
        }
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(eqs);
        const Eigen::VectorXd sol = cod.solve(rhs);

        // Sequences vanishing from the optimal support keep a fixed log-ratio
        // offset while their mass decays, so consistency is judged on the
        // probability scale where those rows fade out.
        double worst = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::uint64_t k = rows[i];
            double fitted = 0.0;
            for (int b = 0; b < M; ++b) fitted += sol[seq.digit(k, b) * M + b];
            worst = std::max(worst, std::fabs(policy.cond_at(k, a) -
                                              policy.mix[k] * std::exp(fitted)));
        }
        if (worst > residual_tol && policy.prior.rho[a] > 0.0)
            throw Error("extract_certificate: stationarity equations for state " +
                        std::to_string(a) + " are inconsistent (residual " +
                        std::to_string(worst) + "); the primal solve has not converged enough");

        for (int s = 0; s < S; ++s)
            for (int b = 0; b < M; ++b)
                cert.at(s, a, b) = box.at(s, a, b) > 0.0 ? sol[s * M + b] : kNegInf;
    }
    return cert;
}

} // namespace ccbound
