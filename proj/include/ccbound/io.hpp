#pragma once

#include <string>

#include "ccbound/cbox.hpp"
#include "ccbound/dual.hpp"
#include "ccbound/policy.hpp"

namespace ccbound {

// All files are JSON documents; schemas are described in docs/formats.md with
// canonical examples under data/. Doubles round-trip exactly (shortest
// representation that restores the value). The certificate format encodes
// negative infinity as the literal string "-inf".

CBox load_cbox(const std::string& path);
void save_cbox(const CBox& box, const std::string& path);

InputPrior load_prior(const std::string& path);
void save_prior(const InputPrior& prior, const std::string& path);

/// Resolves a CLI prior spec: "uniform" or a path to a prior file.
/// Validates length against num_states.
InputPrior resolve_prior(const std::string& spec, int num_states);

QuantumEnsemble load_ensemble(const std::string& path);
void save_ensemble(const QuantumEnsemble& ensemble, const std::string& path);

SimulationPolicy load_policy(const std::string& path);
void save_policy(const SimulationPolicy& policy, const std::string& path);

DualCertificate load_certificate(const std::string& path);
void save_certificate(const DualCertificate& cert, const std::string& path);

/// FNV-1a digest of a file's bytes, as "fnv1a64:<16 hex digits>"; stamped
/// into result files so outputs are traceable to exact inputs.
std::string file_content_hash(const std::string& path);

} // namespace ccbound
