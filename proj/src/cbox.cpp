#include "ccbound/cbox.hpp"

#include <cmath>
#include <cstdio>

#include "ccbound/sequences.hpp"

namespace ccbound {

SequenceSpace SequenceSpace::make(int S, int M, std::uint64_t max_sequences) {
    if (S <= 0 || M <= 0)
        throw ValidationError("sequence space: outcome and measurement counts must be positive");
    std::uint64_t n = 1;
    for (int b = 0; b < M; ++b) {
        if (n > max_sequences / static_cast<std::uint64_t>(S))
            throw BudgetError("sequence space " + std::to_string(S) + "^" + std::to_string(M) +
                              " exceeds budget of " + std::to_string(max_sequences) +
                              " sequences");
        n *= static_cast<std::uint64_t>(S);
    }
    return SequenceSpace{S, M};
}

std::string fnv1a64_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return std::string(buf);
}

InputPrior InputPrior::uniform(int num_states) {
    if (num_states <= 0) throw ValidationError("prior: num_states must be positive");
    return InputPrior{std::vector<double>(num_states, 1.0 / num_states)};
}

ValidationResult validate_cbox(const CBox& box, double tol) {
    ValidationResult r;
    const int S = box.num_outcomes, A = box.num_states, M = box.num_measurements;
    if (S <= 0 || A <= 0 || M <= 0) {
        r.valid = false;
        r.message = "box dimensions must be positive";
        return r;
    }
    const std::size_t expected = static_cast<std::size_t>(S) * A * M;
    if (box.prob.size() != expected) {
        r.valid = false;
        r.message = "probability tensor has " + std::to_string(box.prob.size()) +
                    " entries, expected " + std::to_string(expected);
        return r;
    }
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a)
            for (int b = 0; b < M; ++b) {
                const double p = box.at(s, a, b);
                if (!std::isfinite(p)) {
                    r.valid = false;
                    r.s = s; r.a = a; r.b = b;
                    r.message = "non-finite probability at (s=" + std::to_string(s) +
                                ",a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
                    return r;
                }
                if (p < -r.violation) {
                    r.violation = -p;
                    r.s = s; r.a = a; r.b = b;
                }
            }
    if (r.violation > 0.0) {
        r.valid = false;
        r.message = "negative probability " + std::to_string(-r.violation) + " at (s=" +
                    std::to_string(r.s) + ",a=" + std::to_string(r.a) + ",b=" +
                    std::to_string(r.b) + ")";
        return r;
    }
    for (int a = 0; a < A; ++a)
        for (int b = 0; b < M; ++b) {
            double sum = 0.0;
            for (int s = 0; s < S; ++s) sum += box.at(s, a, b);
            const double dev = std::fabs(sum - 1.0);
            if (dev > r.violation) {
                r.violation = dev;
                r.s = -1; r.a = a; r.b = b;
            }
        }
    if (r.violation > tol) {
        r.valid = false;
        r.message = "outcome column (a=" + std::to_string(r.a) + ",b=" + std::to_string(r.b) +
                    ") sums to 1 " + (r.violation > 0 ? "+/- " : "") +
                    std::to_string(r.violation) + ", beyond tolerance " + std::to_string(tol);
    }
    return r;
}

ValidationResult validate_prior(const InputPrior& prior, double tol) {
    ValidationResult r;
    if (prior.rho.empty()) {
        r.valid = false;
        r.message = "prior is empty";
        return r;
    }
    double sum = 0.0;
    for (std::size_t a = 0; a < prior.rho.size(); ++a) {
        const double p = prior.rho[a];
        if (!std::isfinite(p) || p < 0.0) {
            r.valid = false;
            r.a = static_cast<int>(a);
            r.message = "prior entry " + std::to_string(a) + " is " + std::to_string(p);
            return r;
        }
        sum += p;
    }
    if (std::fabs(sum - 1.0) > tol) {
        r.valid = false;
        r.violation = std::fabs(sum - 1.0);
        r.message = "prior sums to " + std::to_string(sum);
    }
    return r;
}

namespace {

std::complex<double> inner(const std::vector<std::complex<double>>& x,
                           const std::vector<std::complex<double>>& y) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

} // namespace

ValidationResult validate_ensemble(const QuantumEnsemble& ens) {
    ValidationResult r;
    const int N = ens.dimension;
    if (N < 2) {
        r.valid = false;
        r.message = "ensemble dimension must be at least 2";
        return r;
    }
    if (ens.states.empty() || ens.measurements.empty()) {
        r.valid = false;
        r.message = "ensemble needs at least one state and one measurement";
        return r;
    }
    for (std::size_t a = 0; a < ens.states.size(); ++a) {
        if (static_cast<int>(ens.states[a].size()) != N) {
            r.valid = false;
            r.message = "state " + std::to_string(a) + " has wrong dimension";
            return r;
        }
        const double norm = std::abs(inner(ens.states[a], ens.states[a]));
        if (std::fabs(norm - 1.0) > 1e-12) {
            r.valid = false;
            r.violation = std::fabs(norm - 1.0);
            r.message = "state " + std::to_string(a) + " norm deviates by " +
                        std::to_string(r.violation);
            return r;
        }
    }
    for (std::size_t m = 0; m < ens.measurements.size(); ++m) {
        const auto& meas = ens.measurements[m];
        const std::size_t want =
            meas.kind == QuantumEnsemble::MeasurementKind::basis ? static_cast<std::size_t>(N) : 1;
        if (meas.vectors.size() != want) {
            r.valid = false;
            r.message = "measurement " + std::to_string(m) + " has " +
                        std::to_string(meas.vectors.size()) + " vectors, expected " +
                        std::to_string(want);
            return r;
        }
        for (std::size_t i = 0; i < meas.vectors.size(); ++i) {
            if (static_cast<int>(meas.vectors[i].size()) != N) {
                r.valid = false;
                r.message = "measurement " + std::to_string(m) + " vector " + std::to_string(i) +
                            " has wrong dimension";
                return r;
            }
            for (std::size_t j = 0; j <= i; ++j) {
                const double target = (i == j) ? 1.0 : 0.0;
                const double tol = (i == j) ? 1e-12 : 1e-10;
                const double dev = std::abs(inner(meas.vectors[i], meas.vectors[j]) - target);
                if (dev > tol) {
                    r.valid = false;
                    r.violation = dev;
                    r.message = "measurement " + std::to_string(m) + " vectors " +
                                std::to_string(i) + "," + std::to_string(j) +
                                " deviate from orthonormal by " + std::to_string(dev);
                    return r;
                }
            }
        }
    }
    return r;
}

CBox born_cbox(const QuantumEnsemble& ens) {
    const ValidationResult v = validate_ensemble(ens);
    if (!v.valid) throw ValidationError("born_cbox: " + v.message);

    const int N = ens.dimension;
    const int A = static_cast<int>(ens.states.size());
    const int M = static_cast<int>(ens.measurements.size());
    int S = -1;
    for (const auto& meas : ens.measurements) {
        const int outcomes =
            meas.kind == QuantumEnsemble::MeasurementKind::basis ? N : 2;
        if (S == -1) S = outcomes;
        if (outcomes != S)
            throw ValidationError(
                "born_cbox: measurements have mixed outcome counts (" + std::to_string(S) +
                " vs " + std::to_string(outcomes) + "); a box needs one outcome count");
    }

    CBox box;
    box.num_outcomes = S;
    box.num_states = A;
    box.num_measurements = M;
    box.prob.assign(static_cast<std::size_t>(S) * A * M, 0.0);
    for (int a = 0; a < A; ++a)
        for (int b = 0; b < M; ++b) {
            const auto& meas = ens.measurements[b];
            if (meas.kind == QuantumEnsemble::MeasurementKind::two_outcome_vector) {
                const double p = std::norm(inner(meas.vectors[0], ens.states[a]));
                box.at(0, a, b) = p;
                box.at(1, a, b) = 1.0 - p;
            } else {
                for (int s = 0; s < S; ++s)
                    box.at(s, a, b) = std::norm(inner(meas.vectors[s], ens.states[a]));
            }
        }
    return box;
}

} // namespace ccbound
