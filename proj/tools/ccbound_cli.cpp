#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ccbound/analytic.hpp"
#include "ccbound/cbox.hpp"
#include "ccbound/common.hpp"
#include "ccbound/dual.hpp"
#include "ccbound/io.hpp"
#include "ccbound/mc.hpp"
#include "ccbound/optimality.hpp"
#include "ccbound/policy.hpp"
#include "ccbound/primal.hpp"

namespace {

using nlohmann::json;
using namespace ccbound;

json num_or_token(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? json("inf") : json("-inf");
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void emit_machine(const json& doc, const std::string& out) {
    if (out.empty()) return;
    if (out == "-") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) throw IoError("cannot open " + out + " for writing");
    f << doc.dump(2) << '\n';
    if (!f) throw IoError("failed while writing " + out);
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json solution_json(const TwoOutcomeSolution& sol) {
    return json{{"dimension", sol.dimension},
                {"branch", branch_name(sol.branch)},
                {"alpha", sol.alpha},
                {"beta", sol.beta},
                {"theta_m", sol.theta_m},
                {"bound_nats", sol.bound_nats},
                {"bound_bits", sol.bound_bits},
                {"diagnostics",
                 {{"scan_min_theta", sol.diagnostics.scan_min_theta},
                  {"scan_min_value", sol.diagnostics.scan_min_value},
                  {"newton_iterations", sol.diagnostics.newton_iterations},
                  {"defining_residual", sol.diagnostics.defining_residual}}}};
}

json report_json(const OptimalityReport& r) {
    return json{{"residual_map_eq", r.residual_map_eq},
                {"residual_slack", r.residual_slack},
                {"residual_marginal", r.residual_marginal},
                {"residual_nonneg", r.residual_nonneg},
                {"residual_fixedpoint", r.residual_fixedpoint},
                {"tolerance", r.tolerance},
                {"passed", r.passed}};
}

TwoOutcomeSolution analytic_solution(int dimension, bool exact) {
    if (dimension <= 4) return exact ? refine_alpha_newton(dimension) : bound_smallN_approx(dimension);
    return bound_largeN(dimension);
}

struct SolvePrimalArgs {
    std::string input, prior = "uniform", out, save_policy_path, save_certificate_path;
    double tol = 1e-9;
    int max_iter = 2000;
};

int run_solve_primal(const SolvePrimalArgs& a) {
    const CBox box = load_cbox(a.input);
    const InputPrior prior = resolve_prior(a.prior, box.num_states);
    PrimalOptions opt;
    opt.tol = a.tol;
    opt.max_iter = a.max_iter;
    const auto t0 = std::chrono::steady_clock::now();
    const PrimalResult res = solve_primal(box, prior, opt);
    const double dt = elapsed_since(t0);
    if (!a.save_policy_path.empty()) save_policy(res.policy, a.save_policy_path);
    if (!a.save_certificate_path.empty())
        save_certificate(shrink_to_feasible(extract_certificate(res, box), prior),
                         a.save_certificate_path);

    json cfg{{"verb", "solve-primal"}, {"input", a.input},
             {"input_hash", file_content_hash(a.input)}, {"prior", a.prior},
             {"tol", a.tol},           {"max_iter", a.max_iter}};
    if (a.prior != "uniform") cfg["prior_hash"] = file_content_hash(a.prior);
    emit_machine(json{{"config", cfg},
                      {"result",
                       {{"value_nats", res.value_nats},
                        {"value_bits", nats_to_bits(res.value_nats)},
                        {"iterations", res.iterations},
                        {"max_constraint_violation", res.max_constraint_violation},
                        {"converged", res.converged},
                        {"elapsed_seconds", dt}}}},
                 a.out);
    std::printf("value %.6f nats (%.6f bits) iterations %d violation %.3e converged %s\n",
                res.value_nats, nats_to_bits(res.value_nats), res.iterations,
                res.max_constraint_violation, res.converged ? "yes" : "no");
    return res.converged ? 0 : 1;
}

struct SolveDualArgs {
    std::string input, prior = "uniform", out, save_certificate_path;
    double tol = 1e-6, feas_tol = 1e-9, mu = 20.0;
    int max_iter = 500;
    bool no_polish = false;
};

int run_solve_dual(const SolveDualArgs& a) {
    const CBox box = load_cbox(a.input);
    const InputPrior prior = resolve_prior(a.prior, box.num_states);
    DualOptions opt;
    opt.tol = a.tol;
    opt.max_iter = a.max_iter;
    opt.feas_tol = a.feas_tol;
    opt.barrier_mu = a.mu;
    opt.polish = !a.no_polish;
    const auto t0 = std::chrono::steady_clock::now();
    const DualResult res = solve_dual(box, prior, opt);
    const double dt = elapsed_since(t0);
    if (!a.save_certificate_path.empty()) save_certificate(res.certificate, a.save_certificate_path);

    json cfg{{"verb", "solve-dual"},   {"input", a.input},
             {"input_hash", file_content_hash(a.input)}, {"prior", a.prior},
             {"tol", a.tol},           {"feas_tol", a.feas_tol},
             {"max_iter", a.max_iter}, {"barrier_mu", a.mu},
             {"polish", !a.no_polish}};
    if (a.prior != "uniform") cfg["prior_hash"] = file_content_hash(a.prior);
    emit_machine(json{{"config", cfg},
                      {"result",
                       {{"value_nats", num_or_token(res.value_nats)},
                        {"value_bits", num_or_token(nats_to_bits(res.value_nats))},
                        {"feasible", res.feasible},
                        {"worst_sequence", res.worst_sequence},
                        {"worst_slack", res.worst_slack},
                        {"iterations", res.iterations},
                        {"converged", res.converged},
                        {"elapsed_seconds", dt}}}},
                 a.out);
    std::printf("value %.6f nats (%.6f bits) iterations %d feasible %s converged %s\n",
                res.value_nats, nats_to_bits(res.value_nats), res.iterations,
                res.feasible ? "yes" : "no", res.converged ? "yes" : "no");
    return (res.feasible && res.converged) ? 0 : 1;
}

struct CertifyArgs {
    std::string input, certificate, prior = "uniform", out;
    double tol = 1e-9;
    bool serial = false;
};

int run_certify(const CertifyArgs& a) {
    const CBox box = load_cbox(a.input);
    const DualCertificate cert = load_certificate(a.certificate);
    const InputPrior prior = resolve_prior(a.prior, box.num_states);
    const auto t0 = std::chrono::steady_clock::now();
    const DualResult res = certify_lower_bound(cert, box, prior, a.tol, kDefaultTableBudget,
                                               a.serial ? Exec::serial : Exec::parallel);
    const double dt = elapsed_since(t0);

    json cfg{{"verb", "certify"},
             {"input", a.input},
             {"input_hash", file_content_hash(a.input)},
             {"certificate", a.certificate},
             {"certificate_hash", file_content_hash(a.certificate)},
             {"prior", a.prior},
             {"tol", a.tol}};
    if (a.prior != "uniform") cfg["prior_hash"] = file_content_hash(a.prior);
    emit_machine(json{{"config", cfg},
                      {"result",
                       {{"feasible", res.feasible},
                        {"bound_nats", num_or_token(res.value_nats)},
                        {"bound_bits", num_or_token(nats_to_bits(res.value_nats))},
                        {"worst_sequence", res.worst_sequence},
                        {"worst_slack", res.worst_slack},
                        {"elapsed_seconds", dt}}}},
                 a.out);
    std::printf("bound %.6f nats (%.6f bits) feasible %s worst slack %.12f at sequence %llu\n",
                res.value_nats, nats_to_bits(res.value_nats), res.feasible ? "yes" : "no",
                res.worst_slack, static_cast<unsigned long long>(res.worst_sequence));
    return res.feasible ? 0 : 1;
}

struct CheckArgs {
    std::string policy, certificate, input, out;
    double tol = 1e-6;
};

int run_check(const CheckArgs& a) {
    const SimulationPolicy policy = load_policy(a.policy);
    const DualCertificate cert = load_certificate(a.certificate);
    const CBox box = load_cbox(a.input);
    const OptimalityReport full = check_conditions(policy, cert, box, policy.prior, a.tol);
    const OptimalityReport reduced =
        check_conditions_reduced(policy.mix, cert, box, policy.prior, a.tol);
    const bool passed = full.passed && reduced.passed;

    emit_machine(json{{"config",
                       {{"verb", "check"},
                        {"policy", a.policy},
                        {"policy_hash", file_content_hash(a.policy)},
                        {"certificate", a.certificate},
                        {"certificate_hash", file_content_hash(a.certificate)},
                        {"input", a.input},
                        {"input_hash", file_content_hash(a.input)},
                        {"tol", a.tol}}},
                      {"result",
                       {{"full", report_json(full)},
                        {"reduced", report_json(reduced)},
                        {"passed", passed}}}},
                 a.out);
    std::printf("map_eq %.3e slack %.3e marginal %.3e nonneg %.3e fixedpoint %.3e : full %s\n",
                full.residual_map_eq, full.residual_slack, full.residual_marginal,
                full.residual_nonneg, full.residual_fixedpoint, full.passed ? "pass" : "FAIL");
    std::printf("reduced %s at tol %.1e : overall %s\n", reduced.passed ? "pass" : "FAIL", a.tol,
                passed ? "pass" : "FAIL");
    return passed ? 0 : 1;
}

struct AnalyticArgs {
    int dimension = 2;
    bool exact = false;
    std::string out;
};

int run_analytic(const AnalyticArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const TwoOutcomeSolution sol = analytic_solution(a.dimension, a.exact);
    const double dt = elapsed_since(t0);
    json doc{{"config", {{"verb", "analytic"}, {"dimension", a.dimension}, {"exact", a.exact}}},
             {"result", solution_json(sol)}};
    doc["result"]["elapsed_seconds"] = dt;
    emit_machine(doc, a.out);
    std::printf("dimension %d branch %s bound %.5f bits (%.6f nats)\n", sol.dimension,
                branch_name(sol.branch).c_str(), sol.bound_bits, sol.bound_nats);
    return 0;
}

struct SweepArgs {
    int from = 2, to = 100;
    std::string out;
    bool serial = false;
};

int run_sweep(const SweepArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<SweepRow> rows = sweep(a.from, a.to, a.serial ? Exec::serial : Exec::parallel);
    const double dt = elapsed_since(t0);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!a.out.empty() && a.out != "-") {
        file.open(a.out);
        if (!file) throw IoError("cannot open " + a.out + " for writing");
        os = &file;
    }
    *os << "# verb=sweep from=" << a.from << " to=" << a.to
        << " exec=" << (a.serial ? "serial" : "parallel") << '\n';
    *os << "N,branch,alpha,beta,theta_m,bound_nats,bound_bits,asymptotic_bits,"
           "bound_bits_conjectured\n";
    int failures = 0;
    for (const SweepRow& row : rows) {
        if (!row.ok) {
            ++failures;
            *os << row.dimension << ",error,,,,,,,\n";
            std::cerr << "N=" << row.dimension << " failed: " << row.error << '\n';
            continue;
        }
        const TwoOutcomeSolution& s = row.solution;
        *os << row.dimension << ',' << branch_name(s.branch) << ',' << format_g17(s.alpha) << ','
            << format_g17(s.beta) << ',' << format_g17(s.theta_m) << ','
            << format_g17(s.bound_nats) << ',' << format_g17(s.bound_bits) << ','
            << format_g17(row.asymptotic_bits) << ',' << format_g17(row.conjectured_bits) << '\n';
    }
    if (os != &std::cout) {
        if (!file) throw IoError("failed while writing " + a.out);
        std::printf("swept N=%d..%d: %zu rows, %d failed, %.2f s -> %s\n", a.from, a.to,
                    rows.size(), failures, dt, a.out.c_str());
    }
    return failures == 0 ? 0 : 1;
}

struct VerifyArgs {
    int dimension = 2;
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 1;
    std::vector<std::string> checks{"moments", "cap"};
    double theta = 0.7;
    std::string out;
    bool serial = false;
};

int run_verify(const VerifyArgs& a) {
    const Exec exec = a.serial ? Exec::serial : Exec::parallel;
    bool all_passed = true;
    json result;
    const auto t0 = std::chrono::steady_clock::now();
    for (const std::string& check : a.checks) {
        if (check == "moments") {
            const MomentReport r = moment_checks(a.dimension, a.samples, a.seed, exec);
            result["moments"] = {{"samples", r.samples},
                                 {"mean_second", r.mean_second},
                                 {"se_second", r.se_second},
                                 {"target_second", r.target_second},
                                 {"mean_fourth", r.mean_fourth},
                                 {"se_fourth", r.se_fourth},
                                 {"target_fourth", r.target_fourth},
                                 {"passed", r.passed}};
            all_passed = all_passed && r.passed;
            std::printf("moments: second %.6f vs %.6f fourth %.6f vs %.6f : %s\n", r.mean_second,
                        r.target_second, r.mean_fourth, r.target_fourth,
                        r.passed ? "pass" : "FAIL");
        } else if (check == "cap") {
            HaarSampler fixed{a.dimension, a.seed, 0};
            const auto psi = sample_state(fixed);
            const auto chi = sample_state(fixed);
            const CapOverlapReport r =
                cap_overlap_check(a.dimension, a.theta, psi, chi, a.samples, a.seed + 1, exec);
            result["cap"] = {{"theta", r.theta},
                             {"samples", r.samples},
                             {"mean", r.mean},
                             {"se", r.se},
                             {"target", r.target},
                             {"acceptance_fraction", r.acceptance_fraction},
                             {"passed", r.passed}};
            all_passed = all_passed && r.passed;
            std::printf("cap: mean %.6e vs %.6e (acceptance %.4f) : %s\n", r.mean, r.target,
                        r.acceptance_fraction, r.passed ? "pass" : "FAIL");
        } else if (check == "grid") {
            const GridSearchResult r = grid_search_bound(a.dimension, GridSpec{}, a.samples,
                                                         a.seed, exec);
            const TwoOutcomeSolution sol = analytic_solution(a.dimension, true);
            const double delta_bits = std::fabs(r.bound_bits - sol.bound_bits);
            const bool passed = r.mc_passed && delta_bits <= 1e-2;
            result["grid"] = {{"bound_bits", r.bound_bits},
                              {"alpha", r.alpha},
                              {"beta", r.beta},
                              {"analytic_bits", sol.bound_bits},
                              {"delta_bits", delta_bits},
                              {"mc_worst_sigma", r.mc_worst_sigma},
                              {"mc_passed", r.mc_passed},
                              {"passed", passed}};
            all_passed = all_passed && passed;
            std::printf("grid: %.5f bits vs analytic %.5f (delta %.2e, mc %.2f sigma) : %s\n",
                        r.bound_bits, sol.bound_bits, delta_bits, r.mc_worst_sigma,
                        passed ? "pass" : "FAIL");
        } else {
            throw ValidationError("unknown check '" + check +
                                  "' (expected moments, cap, or grid)");
        }
    }
    result["passed"] = all_passed;
    result["elapsed_seconds"] = elapsed_since(t0);
    emit_machine(json{{"config",
                       {{"verb", "verify"},
                        {"dimension", a.dimension},
                        {"samples", a.samples},
                        {"seed", a.seed},
                        {"checks", a.checks},
                        {"theta", a.theta}}},
                      {"result", result}},
                 a.out);
    std::printf("verify %s\n", all_passed ? "pass" : "FAIL");
    return all_passed ? 0 : 1;
}

struct SandwichArgs {
    double bits = -1.0;
    int dimension = 0;
    std::string out;
};

int run_sandwich(const SandwichArgs& a) {
    if ((a.bits < 0) == (a.dimension == 0))
        throw ValidationError("sandwich needs exactly one of --bits or --dimension");
    json cfg{{"verb", "sandwich"}};
    double lower_bits = a.bits;
    if (a.dimension != 0) {
        const TwoOutcomeSolution sol = analytic_solution(a.dimension, true);
        lower_bits = sol.bound_bits;
        cfg["dimension"] = a.dimension;
        cfg["branch"] = branch_name(sol.branch);
    } else {
        cfg["bits"] = a.bits;
    }
    const double upper_bits = sandwich_upper(lower_bits);
    emit_machine(json{{"config", cfg},
                      {"result",
                       {{"lower_bits", lower_bits},
                        {"lower_nats", bits_to_nats(lower_bits)},
                        {"upper_bits", upper_bits},
                        {"upper_nats", bits_to_nats(upper_bits)}}}},
                 a.out);
    std::printf("asymptotic lower %.5f bits -> one-shot upper %.5f bits\n", lower_bits,
                upper_bits);
    return 0;
}

struct ConjectureArgs {
    int dimension = 2;
    std::string out;
};

int run_conjecture(const ConjectureArgs& a) {
    const ConjecturedBound b = conjectured_bound(a.dimension);
    emit_machine(json{{"config", {{"verb", "conjecture"}, {"dimension", a.dimension}}},
                      {"result",
                       {{"dimension", b.dimension},
                        {"bound_nats", b.bound_nats},
                        {"bound_bits", b.bound_bits},
                        {"half_n_log_n_bits", b.half_n_log_n_bits},
                        {"conjecture_dependent", b.conjecture_dependent},
                        {"hypotheses", b.hypotheses}}}},
                 a.out);
    std::printf("dimension %d conjectured bound %.5f bits, (1/2) N log2 N = %.5f bits "
                "[conjecture-dependent, not a proven bound]\n",
                b.dimension, b.bound_bits, b.half_n_log_n_bits);
    return 0;
}

const char* kOutHelp = "machine-readable JSON result file (\"-\" for standard output)";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounds on the classical communication cost of simulating quantum processes"};
    app.require_subcommand(1);
    int rc = 0;

    SolvePrimalArgs primal_args;
    auto* sp = app.add_subcommand("solve-primal",
                                  "Minimize mutual information over marginal-matching policies");
    sp->add_option("--input", primal_args.input, "C-box JSON file")->required();
    sp->add_option("--prior", primal_args.prior, "\"uniform\" or a prior JSON file");
    sp->add_option("--tol", primal_args.tol, "convergence tolerance (nats)");
    sp->add_option("--max-iter", primal_args.max_iter, "outer iteration cap");
    sp->add_option("--save-policy", primal_args.save_policy_path, "write the solved policy here");
    sp->add_option("--save-certificate", primal_args.save_certificate_path,
                   "extract a dual certificate from the solved policy and write it here");
    sp->add_option("--out", primal_args.out, kOutHelp);
    sp->callback([&] { rc = run_solve_primal(primal_args); });

    SolveDualArgs dual_args;
    auto* sd = app.add_subcommand("solve-dual",
                                  "Maximize the certified lower bound over dual multipliers");
    sd->add_option("--input", dual_args.input, "C-box JSON file")->required();
    sd->add_option("--prior", dual_args.prior, "\"uniform\" or a prior JSON file");
    sd->add_option("--tol", dual_args.tol, "optimality gap target (nats)");
    sd->add_option("--feas-tol", dual_args.feas_tol, "feasibility tolerance for the verdict");
    sd->add_option("--max-iter", dual_args.max_iter, "Newton iteration cap");
    sd->add_option("--mu", dual_args.mu, "barrier stage multiplier");
    sd->add_flag("--no-polish", dual_args.no_polish, "skip the active-set equality polish");
    sd->add_option("--save-certificate", dual_args.save_certificate_path,
                   "write the solved certificate here");
    sd->add_option("--out", dual_args.out, kOutHelp);
    sd->callback([&] { rc = run_solve_dual(dual_args); });

    CertifyArgs certify_args;
    auto* ce = app.add_subcommand("certify",
                                  "Verify a certificate's feasibility and report its bound");
    ce->add_option("--input", certify_args.input, "C-box JSON file")->required();
    ce->add_option("--certificate", certify_args.certificate, "certificate JSON file")->required();
    ce->add_option("--prior", certify_args.prior, "\"uniform\" or a prior JSON file");
    ce->add_option("--tol", certify_args.tol, "slack tolerance");
    ce->add_flag("--serial", certify_args.serial, "single-threaded constraint scan");
    ce->add_option("--out", certify_args.out, kOutHelp);
    ce->callback([&] { rc = run_certify(certify_args); });

    CheckArgs check_args;
    auto* ch = app.add_subcommand("check",
                                  "Evaluate the joint optimality conditions on a policy and "
                                  "certificate pair");
    ch->add_option("--policy", check_args.policy, "policy JSON file")->required();
    ch->add_option("--certificate", check_args.certificate, "certificate JSON file")->required();
    ch->add_option("--input", check_args.input, "C-box JSON file")->required();
    ch->add_option("--tol", check_args.tol, "residual tolerance");
    ch->add_option("--out", check_args.out, kOutHelp);
    ch->callback([&] { rc = run_check(check_args); });

    AnalyticArgs analytic_args;
    auto* an = app.add_subcommand("analytic",
                                  "Closed-form lower bound for the noiseless N-dimensional "
                                  "channel with two-outcome measurements");
    an->add_option("--dimension", analytic_args.dimension, "Hilbert space dimension N >= 2")
        ->required();
    an->add_flag("--exact", analytic_args.exact,
                 "Newton-refined small-N branch instead of the closed-form approximation");
    an->add_option("--out", analytic_args.out, kOutHelp);
    an->callback([&] { rc = run_analytic(analytic_args); });

    SweepArgs sweep_args;
    auto* sw = app.add_subcommand("sweep", "Per-dimension bound table as CSV");
    sw->add_option("--from", sweep_args.from, "first dimension")->required();
    sw->add_option("--to", sweep_args.to, "last dimension")->required();
    sw->add_option("--out", sweep_args.out, "CSV output file (default: standard output)");
    sw->add_flag("--serial", sweep_args.serial, "single-threaded row computation");
    sw->callback([&] { rc = run_sweep(sweep_args); });

    VerifyArgs verify_args;
    auto* ve = app.add_subcommand("verify", "Monte Carlo cross-checks of the analytic pipeline");
    ve->add_option("--dimension", verify_args.dimension, "Hilbert space dimension N >= 2");
    ve->add_option("--samples", verify_args.samples, "Monte Carlo sample count");
    ve->add_option("--seed", verify_args.seed, "random stream seed");
    ve->add_option("--checks", verify_args.checks,
                   "checks to run: moments, cap, grid (comma separated)")
        ->delimiter(',');
    ve->add_option("--theta", verify_args.theta, "cap aperture for the cap check (radians)");
    ve->add_flag("--serial", verify_args.serial, "single-threaded sampling");
    ve->add_option("--out", verify_args.out, kOutHelp);
    ve->callback([&] { rc = run_verify(verify_args); });

    SandwichArgs sandwich_args;
    auto* sa = app.add_subcommand("sandwich",
                                  "One-shot upper bound implied by an asymptotic lower bound");
    sa->add_option("--bits", sandwich_args.bits, "asymptotic lower bound in bits");
    sa->add_option("--dimension", sandwich_args.dimension,
                   "compute the lower bound for this dimension first");
    sa->add_option("--out", sandwich_args.out, kOutHelp);
    sa->callback([&] { rc = run_sandwich(sandwich_args); });

    ConjectureArgs conjecture_args;
    auto* co = app.add_subcommand("conjecture",
                                  "Conjecture-dependent support-shrinking bound (not proven)");
    co->add_option("--dimension", conjecture_args.dimension, "Hilbert space dimension N >= 2")
        ->required();
    co->add_option("--out", conjecture_args.out, kOutHelp);
    co->callback([&] { rc = run_conjecture(conjecture_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
