#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ccbound/common.hpp"

namespace ccbound {

/// Finite conditional probability table P(s|a,b): s = outcome, a = sender's
/// preparation choice, b = receiver's measurement choice.
struct CBox {
    int num_outcomes = 0;     // S
    int num_states = 0;       // A
    int num_measurements = 0; // M
    std::vector<double> prob; // indexed (s, a, b) row-major

    double at(int s, int a, int b) const {
        return prob[(static_cast<std::size_t>(s) * num_states + a) * num_measurements + b];
    }
    double& at(int s, int a, int b) {
        return prob[(static_cast<std::size_t>(s) * num_states + a) * num_measurements + b];
    }
};

/// Distribution rho(a) over the sender's preparation choices.
struct InputPrior {
    std::vector<double> rho;

    static InputPrior uniform(int num_states);
    int num_states() const { return static_cast<int>(rho.size()); }
};

/// Quantum model that induces a CBox through the Born rule: unit states
/// measured either by full orthonormal bases or by rank-1 two-outcome tests
/// {|phi><phi|, 1 - |phi><phi|}.
struct QuantumEnsemble {
    enum class MeasurementKind { basis, two_outcome_vector };
    struct Measurement {
        MeasurementKind kind;
        // one vector for two_outcome_vector, N orthonormal vectors for basis
        std::vector<std::vector<std::complex<double>>> vectors;
    };

    int dimension = 0; // N
    std::vector<std::vector<std::complex<double>>> states;
    std::vector<Measurement> measurements;
};

struct ValidationResult {
    bool valid = true;
    std::string message;
    // worst-violating index for tensor checks; -1 where not applicable
    int s = -1, a = -1, b = -1;
    double violation = 0.0;
};

/// Checks both CBox invariants: entrywise nonnegativity and unit column sums
/// per (a,b) within tol. Reports the worst violation found.
ValidationResult validate_cbox(const CBox& box, double tol = 1e-9);

ValidationResult validate_prior(const InputPrior& prior, double tol = 1e-9);

/// Unit-norm states within 1e-12, orthonormal bases within 1e-10.
ValidationResult validate_ensemble(const QuantumEnsemble& ensemble);

/// Born-rule table of the ensemble. Two-outcome measurements produce S=2 with
/// outcome 0 the rank-1 click |<psi|phi>|^2 and outcome 1 its complement;
/// full bases produce S=N. Mixing both kinds requires equal outcome counts.
CBox born_cbox(const QuantumEnsemble& ensemble);

} // namespace ccbound
