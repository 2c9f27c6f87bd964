#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

#include "ccbound/io.hpp"
#include "ccbound/primal.hpp"
#include "support.hpp"

using namespace ccbound;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "ccbound_tests";
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args, const fs::path& capture = {}) {
    std::string cmd = std::string(CCBOUND_CLI_PATH) + " " + args;
    if (capture.empty())
        cmd += " > /dev/null 2>&1";
    else
        cmd += " > " + capture.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json load_json(const fs::path& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    return nlohmann::json::parse(f);
}

} // namespace

TEST_SUITE("io_cli") {

    TEST_CASE("box round trip preserves every double") {
        const fs::path path = scratch_dir() / "box_roundtrip.json";
        std::mt19937_64 rng(71);
        const CBox box = testsupport::random_cbox(3, 2, 2, rng);
        save_cbox(box, path.string());
        const CBox loaded = load_cbox(path.string());
        REQUIRE(loaded.prob.size() == box.prob.size());
        for (std::size_t i = 0; i < box.prob.size(); ++i) CHECK(loaded.prob[i] == box.prob[i]);
    }

    TEST_CASE("shipped ensemble generates the shipped qubit pair box") {
        const std::string data = CCBOUND_DATA_DIR;
        const QuantumEnsemble ens = load_ensemble(data + "/qubit_ensemble.json");
        const CBox born = born_cbox(ens);
        const CBox shipped = load_cbox(data + "/qubit_pair_box.json");
        REQUIRE(born.prob.size() == shipped.prob.size());
        for (std::size_t i = 0; i < shipped.prob.size(); ++i)
            CHECK(std::fabs(born.prob[i] - shipped.prob[i]) <= 1e-12);
    }

    TEST_CASE("prior round trip and resolution") {
        const fs::path path = scratch_dir() / "prior.json";
        save_prior(InputPrior{{0.7, 0.3}}, path.string());
        const InputPrior loaded = load_prior(path.string());
        CHECK(loaded.rho[0] == 0.7);
        CHECK(loaded.rho[1] == 0.3);
        CHECK(resolve_prior(path.string(), 2).rho[0] == 0.7);
        CHECK(resolve_prior("uniform", 4).rho[2] == 0.25);
        CHECK_THROWS_AS(resolve_prior(path.string(), 3), ValidationError);
    }

    TEST_CASE("ensemble round trip keeps complex amplitudes") {
        const double r = 1.0 / std::sqrt(2.0);
        QuantumEnsemble ens;
        ens.dimension = 2;
        ens.states = {{{0.0, r}, {r, 0.0}}, {{1.0, 0.0}, {0.0, 0.0}}};
        QuantumEnsemble::Measurement m;
        m.kind = QuantumEnsemble::MeasurementKind::two_outcome_vector;
        m.vectors = {{{r, 0.0}, {0.0, -r}}};
        ens.measurements = {m};
        const fs::path path = scratch_dir() / "ensemble.json";
        save_ensemble(ens, path.string());
        const QuantumEnsemble loaded = load_ensemble(path.string());
        REQUIRE(loaded.states.size() == 2);
        CHECK(loaded.states[0][0].imag() == r);
        CHECK(loaded.states[0][1].real() == r);
        CHECK(loaded.measurements[0].kind == QuantumEnsemble::MeasurementKind::two_outcome_vector);
        CHECK(loaded.measurements[0].vectors[0][1].imag() == -r);
        const CBox box = born_cbox(loaded);
        CHECK(validate_cbox(box).valid);
    }

    TEST_CASE("policy round trip recomputes the mixture") {
        std::mt19937_64 rng(72);
        const CBox box = testsupport::random_cbox(2, 2, 2, rng);
        const SimulationPolicy policy = product_policy(box, InputPrior::uniform(2));
        const fs::path path = scratch_dir() / "policy.json";
        save_policy(policy, path.string());
        const SimulationPolicy loaded = load_policy(path.string());
        REQUIRE(loaded.num_sequences() == policy.num_sequences());
        for (std::uint64_t k = 0; k < policy.num_sequences(); ++k) {
            CHECK(loaded.mix[k] == doctest::Approx(policy.mix[k]).epsilon(1e-15));
            for (int a = 0; a < 2; ++a) CHECK(loaded.cond_at(k, a) == policy.cond_at(k, a));
        }
    }

    TEST_CASE("certificate round trip keeps minus-infinity sentinels") {
        DualCertificate cert = DualCertificate::zeros(2, 2, 2);
        cert.at(0, 0, 0) = -std::numeric_limits<double>::infinity();
        cert.at(1, 1, 1) = 0.125;
        const fs::path path = scratch_dir() / "certificate.json";
        save_certificate(cert, path.string());
        const std::string text = read_text(path);
        CHECK(text.find("\"-inf\"") != std::string::npos);
        const DualCertificate loaded = load_certificate(path.string());
        CHECK(loaded.at(0, 0, 0) == -std::numeric_limits<double>::infinity());
        CHECK(loaded.at(1, 1, 1) == 0.125);
    }

    TEST_CASE("schema and file errors are reported as such") {
        const fs::path dir = scratch_dir();
        CHECK_THROWS_AS(load_cbox((dir / "missing.json").string()), IoError);
        write_text(dir / "garbage.json", "not json {{{");
        CHECK_THROWS_AS(load_cbox((dir / "garbage.json").string()), IoError);
        write_text(dir / "short.json",
                   R"({"num_outcomes":2,"num_states":2,"num_measurements":1,)"
                   R"("probabilities":[[[1.0],[0.0]]]})");
        CHECK_THROWS_AS(load_cbox((dir / "short.json").string()), IoError);
        write_text(dir / "negative.json",
                   R"({"num_outcomes":2,"num_states":1,"num_measurements":1,)"
                   R"("probabilities":[[[1.5]],[[-0.5]]]})");
        CHECK_THROWS_AS(load_cbox((dir / "negative.json").string()), ValidationError);
        write_text(dir / "badcert.json",
                   R"({"num_outcomes":1,"num_states":1,"num_measurements":1,)"
                   R"("lambda":[[["oops"]]]})");
        CHECK_THROWS_AS(load_certificate((dir / "badcert.json").string()), IoError);
    }

    TEST_CASE("file hashes are stable and content addressed") {
        const fs::path path = scratch_dir() / "hashed.bin";
        write_text(path, "a");
        CHECK(file_content_hash(path.string()) == "fnv1a64:af63dc4c8601ec8c");
        write_text(path, "");
        CHECK(file_content_hash(path.string()) == "fnv1a64:cbf29ce484222325");
        CHECK_THROWS_AS(file_content_hash((scratch_dir() / "nope.bin").string()), IoError);
    }

    TEST_CASE("cli round trip: solve, certify, check on every shipped box") {
        const fs::path dir = scratch_dir();
        const std::string data = CCBOUND_DATA_DIR;
        for (const std::string name :
             {"identity_binary_box", "constant_box", "qubit_pair_box"}) {
            CAPTURE(name);
            const std::string box = data + "/" + name + ".json";
            const fs::path policy = dir / (name + "_policy.json");
            const fs::path cert = dir / (name + "_cert.json");
            const fs::path solved = dir / (name + "_solve.json");

            CHECK(run_cli("solve-primal --input " + box + " --save-policy " + policy.string() +
                          " --save-certificate " + cert.string() + " --out " +
                          solved.string()) == 0);
            const nlohmann::json result = load_json(solved);
            CHECK(result["result"]["converged"].get<bool>());
            CHECK(result["config"]["input_hash"].get<std::string>() ==
                  file_content_hash(box));

            CHECK(run_cli("certify --input " + box + " --certificate " + cert.string() +
                          " --tol 1e-6") == 0);
            CHECK(run_cli("check --policy " + policy.string() + " --certificate " +
                          cert.string() + " --input " + box + " --tol 1e-6") == 0);
        }
    }

    TEST_CASE("cli primal value matches the library on the identity box") {
        const fs::path out = scratch_dir() / "identity_solve.json";
        const std::string box = std::string(CCBOUND_DATA_DIR) + "/identity_binary_box.json";
        REQUIRE(run_cli("solve-primal --input " + box + " --out " + out.string()) == 0);
        const nlohmann::json doc = load_json(out);
        CHECK(std::fabs(doc["result"]["value_nats"].get<double>() - std::log(2.0)) <= 1e-9);
        CHECK(std::fabs(doc["result"]["value_bits"].get<double>() - 1.0) <= 1e-9);
    }

    TEST_CASE("cli analytic prints the headline value") {
        const fs::path out = scratch_dir() / "analytic_stdout.txt";
        REQUIRE(run_cli("analytic --dimension 2 --exact", out) == 0);
        const std::string text = read_text(out);
        CHECK(text.find("1.14602 bits") != std::string::npos);
        CHECK(text.find("small_N_exact") != std::string::npos);
    }

    TEST_CASE("cli sweep emits the documented csv") {
        const fs::path csv = scratch_dir() / "sweep.csv";
        REQUIRE(run_cli("sweep --from 2 --to 6 --out " + csv.string()) == 0);
        std::ifstream f(csv);
        std::string line;
        REQUIRE(std::getline(f, line));
        CHECK(line.rfind("# verb=sweep", 0) == 0);
        REQUIRE(std::getline(f, line));
        CHECK(line ==
              "N,branch,alpha,beta,theta_m,bound_nats,bound_bits,asymptotic_bits,"
              "bound_bits_conjectured");
        int rows = 0;
        bool saw_small = false, saw_large = false;
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            ++rows;
            saw_small = saw_small || line.find(",small_N_exact,") != std::string::npos;
            saw_large = saw_large || line.find(",large_N,") != std::string::npos;
        }
        CHECK(rows == 5);
        CHECK(saw_small);
        CHECK(saw_large);
    }

    TEST_CASE("cli verify runs the sampling checks") {
        const fs::path out = scratch_dir() / "verify.json";
        REQUIRE(run_cli("verify --dimension 2 --samples 20000 --checks moments --out " +
                        out.string()) == 0);
        const nlohmann::json doc = load_json(out);
        CHECK(doc["result"]["passed"].get<bool>());
        CHECK(doc["result"]["moments"]["samples"].get<std::uint64_t>() == 20000);
    }

    TEST_CASE("cli conjecture output carries the dependence flag") {
        const fs::path out = scratch_dir() / "conjecture.json";
        REQUIRE(run_cli("conjecture --dimension 16 --out " + out.string()) == 0);
        const nlohmann::json doc = load_json(out);
        CHECK(doc["result"]["conjecture_dependent"].get<bool>());
        CHECK_FALSE(doc["result"]["hypotheses"].get<std::string>().empty());
    }

    TEST_CASE("cli exit codes distinguish failure kinds") {
        const fs::path dir = scratch_dir();
        // usage and input problems: exit 2
        CHECK(run_cli("frobnicate") == 2);
        CHECK(run_cli("solve-primal") == 2);
        CHECK(run_cli("solve-primal --input " + (dir / "missing_box.json").string()) == 2);
        CHECK(run_cli("sandwich --bits 1.0 --dimension 2") == 2);

        // computed but failed verdict: exit 1
        const std::string box = std::string(CCBOUND_DATA_DIR) + "/identity_binary_box.json";
        DualCertificate loose = DualCertificate::zeros(2, 2, 1);
        for (double& v : loose.lambda) v = 1.0;
        const fs::path cert = dir / "infeasible_cert.json";
        save_certificate(loose, cert.string());
        CHECK(run_cli("certify --input " + box + " --certificate " + cert.string()) == 1);

        // success: exit 0
        CHECK(run_cli("sandwich --bits 1.0") == 0);
        CHECK(run_cli("sandwich --dimension 3") == 0);
    }
}
