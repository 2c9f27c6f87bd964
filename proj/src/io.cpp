#include "ccbound/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace ccbound {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_file(const json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed while writing " + path);
}

template <class T>
T require(const json& doc, const char* key, const std::string& path) {
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw IoError(path + ": field '" + key + "': " + e.what());
    }
}

constexpr const char* kSequenceEncodingNote =
    "cond[k][a] is the probability of outcome sequence k given preparation a; "
    "the base-S digit b of k is the outcome of measurement b, k = sum_b s_b S^b";

} // namespace

CBox load_cbox(const std::string& path) {
    const json doc = parse_file(path);
    CBox box;
    box.num_outcomes = require<int>(doc, "num_outcomes", path);
    box.num_states = require<int>(doc, "num_states", path);
    box.num_measurements = require<int>(doc, "num_measurements", path);
    const auto probs = require<std::vector<std::vector<std::vector<double>>>>(
        doc, "probabilities", path);
    if (static_cast<int>(probs.size()) != box.num_outcomes)
        throw IoError(path + ": probabilities has " + std::to_string(probs.size()) +
                      " outcome rows, expected " + std::to_string(box.num_outcomes));
    box.prob.assign(static_cast<std::size_t>(box.num_outcomes) * box.num_states *
                        box.num_measurements,
                    0.0);
    for (int s = 0; s < box.num_outcomes; ++s) {
        if (static_cast<int>(probs[s].size()) != box.num_states)
            throw IoError(path + ": probabilities[" + std::to_string(s) + "] has " +
                          std::to_string(probs[s].size()) + " state rows, expected " +
                          std::to_string(box.num_states));
        for (int a = 0; a < box.num_states; ++a) {
            if (static_cast<int>(probs[s][a].size()) != box.num_measurements)
                throw IoError(path + ": probabilities[" + std::to_string(s) + "][" +
                              std::to_string(a) + "] has " + std::to_string(probs[s][a].size()) +
                              " entries, expected " + std::to_string(box.num_measurements));
            for (int b = 0; b < box.num_measurements; ++b) box.at(s, a, b) = probs[s][a][b];
        }
    }
    const ValidationResult v = validate_cbox(box);
    if (!v.valid) throw ValidationError(path + ": " + v.message);
    return box;
}

void save_cbox(const CBox& box, const std::string& path) {
    const ValidationResult v = validate_cbox(box);
    if (!v.valid) throw ValidationError("save_cbox: " + v.message);
    std::vector<std::vector<std::vector<double>>> probs(
        box.num_outcomes,
        std::vector<std::vector<double>>(box.num_states,
                                         std::vector<double>(box.num_measurements)));
    for (int s = 0; s < box.num_outcomes; ++s)
        for (int a = 0; a < box.num_states; ++a)
            for (int b = 0; b < box.num_measurements; ++b) probs[s][a][b] = box.at(s, a, b);
    write_file(json{{"num_outcomes", box.num_outcomes},
                    {"num_states", box.num_states},
                    {"num_measurements", box.num_measurements},
                    {"probabilities", probs}},
               path);
}

InputPrior load_prior(const std::string& path) {
    const json doc = parse_file(path);
    InputPrior prior{require<std::vector<double>>(doc, "rho", path)};
    const ValidationResult v = validate_prior(prior);
    if (!v.valid) throw ValidationError(path + ": " + v.message);
    return prior;
}

void save_prior(const InputPrior& prior, const std::string& path) {
    const ValidationResult v = validate_prior(prior);
    if (!v.valid) throw ValidationError("save_prior: " + v.message);
    write_file(json{{"rho", prior.rho}}, path);
}

InputPrior resolve_prior(const std::string& spec, int num_states) {
    if (spec == "uniform") return InputPrior::uniform(num_states);
    InputPrior prior = load_prior(spec);
    if (prior.num_states() != num_states)
        throw ValidationError(spec + ": prior has " + std::to_string(prior.num_states()) +
                              " entries for a problem with " + std::to_string(num_states) +
                              " preparations");
    return prior;
}

namespace {

std::vector<std::complex<double>> decode_vector(const std::vector<double>& flat,
                                                const std::string& path) {
    if (flat.size() % 2 != 0)
        throw IoError(path + ": complex vectors interleave re,im and need even length");
    std::vector<std::complex<double>> v(flat.size() / 2);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = {flat[2 * i], flat[2 * i + 1]};
    return v;
}

std::vector<double> encode_vector(const std::vector<std::complex<double>>& v) {
    std::vector<double> flat(2 * v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        flat[2 * i] = v[i].real();
        flat[2 * i + 1] = v[i].imag();
    }
    return flat;
}

} // namespace

QuantumEnsemble load_ensemble(const std::string& path) {
    const json doc = parse_file(path);
    QuantumEnsemble ens;
    ens.dimension = require<int>(doc, "dimension", path);
    for (const auto& flat : require<std::vector<std::vector<double>>>(doc, "states", path))
        ens.states.push_back(decode_vector(flat, path));
    if (!doc.contains("measurements") || !doc["measurements"].is_array())
        throw IoError(path + ": field 'measurements': expected an array");
    for (const auto& m : doc["measurements"]) {
        QuantumEnsemble::Measurement meas;
        const std::string kind = require<std::string>(m, "kind", path);
        if (kind == "basis")
            meas.kind = QuantumEnsemble::MeasurementKind::basis;
        else if (kind == "two_outcome_vector")
            meas.kind = QuantumEnsemble::MeasurementKind::two_outcome_vector;
        else
            throw IoError(path + ": unknown measurement kind '" + kind +
                          "' (expected 'basis' or 'two_outcome_vector')");
        for (const auto& flat : require<std::vector<std::vector<double>>>(m, "vectors", path))
            meas.vectors.push_back(decode_vector(flat, path));
        ens.measurements.push_back(std::move(meas));
    }
    const ValidationResult v = validate_ensemble(ens);
    if (!v.valid) throw ValidationError(path + ": " + v.message);
    return ens;
}

void save_ensemble(const QuantumEnsemble& ens, const std::string& path) {
    const ValidationResult v = validate_ensemble(ens);
    if (!v.valid) throw ValidationError("save_ensemble: " + v.message);
    json measurements = json::array();
    for (const auto& m : ens.measurements) {
        json vectors = json::array();
        for (const auto& vec : m.vectors) vectors.push_back(encode_vector(vec));
        measurements.push_back(
            {{"kind", m.kind == QuantumEnsemble::MeasurementKind::basis ? "basis"
                                                                        : "two_outcome_vector"},
             {"vectors", vectors}});
    }
    json states = json::array();
    for (const auto& s : ens.states) states.push_back(encode_vector(s));
    write_file(json{{"dimension", ens.dimension},
                    {"states", states},
                    {"measurements", measurements}},
               path);
}

SimulationPolicy load_policy(const std::string& path) {
    const json doc = parse_file(path);
    SimulationPolicy policy;
    policy.num_outcomes = require<int>(doc, "num_outcomes", path);
    policy.num_states = require<int>(doc, "num_states", path);
    policy.num_measurements = require<int>(doc, "num_measurements", path);
    policy.prior = InputPrior{require<std::vector<double>>(doc, "prior", path)};
    const ValidationResult v = validate_prior(policy.prior);
    if (!v.valid) throw ValidationError(path + ": " + v.message);
    if (policy.num_outcomes <= 0 || policy.num_states <= 0 || policy.num_measurements <= 0)
        throw IoError(path + ": policy dimensions must be positive");
    if (policy.prior.num_states() != policy.num_states)
        throw IoError(path + ": prior length does not match num_states");

    const std::uint64_t K =
        SequenceSpace::make(policy.num_outcomes, policy.num_measurements, kDefaultTableBudget)
            .size();
    const auto cond = require<std::vector<std::vector<double>>>(doc, "cond", path);
    if (cond.size() != K)
        throw IoError(path + ": cond has " + std::to_string(cond.size()) +
                      " sequence rows, expected " + std::to_string(K));
    policy.cond.assign(K * static_cast<std::uint64_t>(policy.num_states), 0.0);
    for (std::uint64_t k = 0; k < K; ++k) {
        if (static_cast<int>(cond[k].size()) != policy.num_states)
            throw IoError(path + ": cond[" + std::to_string(k) + "] has " +
                          std::to_string(cond[k].size()) + " entries, expected " +
                          std::to_string(policy.num_states));
        for (int a = 0; a < policy.num_states; ++a) policy.cond_at(k, a) = cond[k][a];
    }
    policy.recompute_mix();
    return policy;
}

void save_policy(const SimulationPolicy& policy, const std::string& path) {
    const std::uint64_t K = policy.num_sequences();
    std::vector<std::vector<double>> cond(K, std::vector<double>(policy.num_states));
    for (std::uint64_t k = 0; k < K; ++k)
        for (int a = 0; a < policy.num_states; ++a) cond[k][a] = policy.cond_at(k, a);
    write_file(json{{"num_outcomes", policy.num_outcomes},
                    {"num_states", policy.num_states},
                    {"num_measurements", policy.num_measurements},
                    {"prior", policy.prior.rho},
                    {"cond", cond},
                    {"sequence_encoding", kSequenceEncodingNote}},
               path);
}

DualCertificate load_certificate(const std::string& path) {
    const json doc = parse_file(path);
    DualCertificate cert;
    cert.num_outcomes = require<int>(doc, "num_outcomes", path);
    cert.num_states = require<int>(doc, "num_states", path);
    cert.num_measurements = require<int>(doc, "num_measurements", path);
    if (cert.num_outcomes <= 0 || cert.num_states <= 0 || cert.num_measurements <= 0)
        throw IoError(path + ": certificate dimensions must be positive");
    cert.lambda.assign(static_cast<std::size_t>(cert.num_outcomes) * cert.num_states *
                           cert.num_measurements,
                       0.0);
    if (!doc.contains("lambda") || !doc["lambda"].is_array())
        throw IoError(path + ": field 'lambda': expected an array");
    const json& rows = doc["lambda"];
    if (static_cast<int>(rows.size()) != cert.num_outcomes)
        throw IoError(path + ": lambda has " + std::to_string(rows.size()) +
                      " outcome rows, expected " + std::to_string(cert.num_outcomes));
    for (int s = 0; s < cert.num_outcomes; ++s) {
        if (!rows[s].is_array() || static_cast<int>(rows[s].size()) != cert.num_states)
            throw IoError(path + ": lambda[" + std::to_string(s) + "] must have " +
                          std::to_string(cert.num_states) + " state rows");
        for (int a = 0; a < cert.num_states; ++a) {
            const json& row = rows[s][a];
            if (!row.is_array() || static_cast<int>(row.size()) != cert.num_measurements)
                throw IoError(path + ": lambda[" + std::to_string(s) + "][" + std::to_string(a) +
                              "] must have " + std::to_string(cert.num_measurements) +
                              " entries");
            for (int b = 0; b < cert.num_measurements; ++b) {
                const json& cell = row[b];
                if (cell.is_number())
                    cert.at(s, a, b) = cell.get<double>();
                else if (cell.is_string() && cell.get<std::string>() == "-inf")
                    cert.at(s, a, b) = -std::numeric_limits<double>::infinity();
                else
                    throw IoError(path + ": lambda entries are numbers or the string \"-inf\"");
            }
        }
    }
    validate_certificate(cert);
    return cert;
}

void save_certificate(const DualCertificate& cert, const std::string& path) {
    validate_certificate(cert);
    json rows = json::array();
    for (int s = 0; s < cert.num_outcomes; ++s) {
        json state_rows = json::array();
        for (int a = 0; a < cert.num_states; ++a) {
            json row = json::array();
            for (int b = 0; b < cert.num_measurements; ++b) {
                const double v = cert.at(s, a, b);
                if (v == -std::numeric_limits<double>::infinity())
                    row.push_back("-inf");
                else
                    row.push_back(v);
            }
            state_rows.push_back(row);
        }
        rows.push_back(state_rows);
    }
    write_file(json{{"num_outcomes", cert.num_outcomes},
                    {"num_states", cert.num_states},
                    {"num_measurements", cert.num_measurements},
                    {"lambda", rows}},
               path);
}

std::string file_content_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return "fnv1a64:" + fnv1a64_hex(buf.str());
}

} // namespace ccbound
