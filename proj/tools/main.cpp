// usnc: plan, audit, and verify universal strongly secure network coding
// precoders. See README.md for the report formats.

#include <CLI11.hpp>

#include <iostream>

#include "usnc/cli.hpp"
#include "usnc/errors.hpp"
#include "usnc/version.hpp"

namespace {

using usnc::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& cfg, std::string& preset_name) {
    sub->add_option("--preset", preset_name, "load a named preset configuration");
    sub->add_option("--out", cfg.out_path, "write the report to this path");
    sub->add_option("--format", cfg.format, "json or text");
}

void add_scenario_dist(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--scenario", cfg.scenario_path, "scenario JSON path");
    sub->add_option("--dist", cfg.dist_path, "message distribution JSON path");
}

// Applies a preset first, then any explicitly passed flags on top of it.
RunConfig merge_preset(const CLI::App* sub, const RunConfig& parsed,
                       const std::string& preset_name, const std::string& command) {
    if (preset_name.empty()) {
        RunConfig cfg = parsed;
        cfg.command = command;
        return cfg;
    }
    RunConfig cfg = usnc::cli::preset(preset_name);
    if (cfg.command != command)
        throw usnc::UsageError("preset '" + preset_name + "' belongs to command '" +
                               cfg.command + "'");
    auto passed = [&](const std::string& flag) { return sub->count(flag) > 0; };
    if (passed("--scenario")) {
        cfg.scenario_path = parsed.scenario_path;
        cfg.scenario_inline.reset();
    }
    if (passed("--dist")) {
        cfg.dist_path = parsed.dist_path;
        cfg.dist_inline.reset();
    }
    if (passed("--precoder")) cfg.precoder_path = parsed.precoder_path;
    if (passed("--out")) cfg.out_path = parsed.out_path;
    if (passed("--format")) cfg.format = parsed.format;
    if (passed("--rho")) cfg.rho = parsed.rho;
    if (passed("--eps-leak")) cfg.eps_leak = parsed.eps_leak;
    if (passed("--eps-fail")) cfg.eps_fail = parsed.eps_fail;
    if (passed("--leak-tol")) cfg.leak_tol = parsed.leak_tol;
    if (passed("--delta")) cfg.delta = parsed.delta;
    if (passed("--mu")) cfg.mu = parsed.mu;
    if (passed("--max-mu")) cfg.max_mu = parsed.max_mu;
    if (passed("--budget")) cfg.budget = parsed.budget;
    if (passed("--seed")) cfg.seed = parsed.seed;
    if (passed("--rho-grid")) cfg.rho_grid = parsed.rho_grid;
    if (passed("--eta-target")) cfg.eta_target = parsed.eta_target;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal strongly secure network coding toolkit"};
    app.set_version_flag("--version",
                         std::string(usnc::kToolName) + " " + usnc::kToolVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    std::string preset_name;
    std::string eta_target;

    auto* plan = app.add_subcommand("plan", "solve for the block length m");
    add_common(plan, cfg, preset_name);
    add_scenario_dist(plan, cfg);
    plan->add_option("--mu", cfg.mu, "eavesdropped links");
    plan->add_option("--delta", cfg.delta, "non-uniformity parameter delta_rho");
    plan->add_option("--rho", cfg.rho, "Renyi order parameter in (0,1]");
    plan->add_option("--eps-leak", cfg.eps_leak, "per-subset leakage target, nats");
    plan->add_option("--eps-fail", cfg.eps_fail, "precoder failure probability");
    plan->add_flag("--rho-grid", cfg.rho_grid, "grid-search rho for the smallest m");

    auto* audit = app.add_subcommand("audit", "exhaustive strong-security audit");
    add_common(audit, cfg, preset_name);
    add_scenario_dist(audit, cfg);
    audit->add_option("--precoder", cfg.precoder_path, "precoder matrix JSON path");
    audit->add_option("--leak-tol", cfg.leak_tol, "leakage tolerance, nats; 0 = exact");
    audit->add_option("--max-mu", cfg.max_mu, "restrict the audit to mu <= max-mu");
    audit->add_option("--seed", cfg.seed, "seed for sampling a precoder");
    audit->add_option("--eta-target", eta_target, "target eta as a rational");

    auto* search = app.add_subcommand("search", "sample precoders until one passes");
    add_common(search, cfg, preset_name);
    add_scenario_dist(search, cfg);
    search->add_option("--leak-tol", cfg.leak_tol, "leakage tolerance, nats; 0 = exact");
    search->add_option("--budget", cfg.budget, "number of draws before giving up");
    search->add_option("--seed", cfg.seed, "rng seed");
    search->add_option("--eta-target", eta_target, "target eta as a rational");

    auto* count = app.add_subcommand("count-classes", "wiretap class counts");
    add_common(count, cfg, preset_name);
    count->add_option("--q", cfg.q, "field size")->required();
    count->add_option("--n", cfg.n, "source outgoing links")->required();

    auto* verify = app.add_subcommand("verify-hash", "two-universality check");
    add_common(verify, cfg, preset_name);
    verify->add_option("--field", cfg.field_text, "field, e.g. GF(2)")->required();
    verify->add_option("--mn", cfg.mn, "domain dimension")->required();
    verify->add_option("--family", cfg.family, "full-gl or frobenius");
    verify->add_option("--rank", cfg.b_rank, "canonical outer matrix rank");
    verify->add_option("--b-json", cfg.b_json_path, "explicit outer matrix JSON");

    auto* bnd = app.add_subcommand("bounds", "evaluate the bound catalogue");
    add_common(bnd, cfg, preset_name);
    add_scenario_dist(bnd, cfg);
    bnd->add_option("--mu", cfg.mu, "eavesdropped links");
    bnd->add_option("--rho", cfg.rho, "Renyi order parameter in (0,1]");
    bnd->add_option("--eps-fail", cfg.eps_fail, "failure target used to derive C1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (sub->count("--eta-target") > 0) cfg.eta_target = eta_target;
        const RunConfig merged = merge_preset(sub, cfg, preset_name, sub->get_name());
        return usnc::cli::run(merged, std::cout);
    } catch (const usnc::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const usnc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
