#include "usnc/cli.hpp"

#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "usnc/hashcheck.hpp"
#include "usnc/secbounds.hpp"
#include "usnc/serialize.hpp"
#include "usnc/version.hpp"

namespace usnc::cli {

using nlohmann::ordered_json;
using netcode::Scenario;

namespace {

ordered_json config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = cfg.command;
    if (!cfg.preset_name.empty()) j["preset"] = cfg.preset_name;
    if (!cfg.scenario_path.empty()) j["scenario_path"] = cfg.scenario_path;
    if (cfg.scenario_inline) j["scenario"] = *cfg.scenario_inline;
    if (!cfg.dist_path.empty()) j["dist_path"] = cfg.dist_path;
    if (cfg.dist_inline) j["dist"] = *cfg.dist_inline;
    if (!cfg.precoder_path.empty()) j["precoder_path"] = cfg.precoder_path;
    j["format"] = cfg.format;
    j["rho"] = cfg.rho;
    j["eps_leak"] = cfg.eps_leak;
    j["eps_fail"] = cfg.eps_fail;
    j["leak_tol"] = cfg.leak_tol;
    j["delta"] = cfg.delta;
    if (cfg.mu >= 0) j["mu"] = cfg.mu;
    if (cfg.max_mu >= 0) j["max_mu"] = cfg.max_mu;
    j["budget"] = cfg.budget;
    j["seed"] = cfg.seed;
    j["rho_grid"] = cfg.rho_grid;
    if (cfg.eta_target) j["eta_target"] = *cfg.eta_target;
    if (cfg.q > 0) j["q"] = cfg.q;
    if (cfg.n > 0) j["n"] = cfg.n;
    if (!cfg.field_text.empty()) j["field"] = cfg.field_text;
    if (cfg.mn > 0) j["mn"] = cfg.mn;
    if (cfg.command == "verify-hash") j["family"] = cfg.family;
    if (cfg.b_rank >= 0) j["b_rank"] = cfg.b_rank;
    if (!cfg.b_json_path.empty()) j["b_json_path"] = cfg.b_json_path;
    return j;
}

ordered_json report_shell(const RunConfig& cfg) {
    ordered_json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["config"] = config_to_json(cfg);
    return j;
}

Scenario load_scenario(const RunConfig& cfg) {
    if (cfg.scenario_inline)
        return serialize::scenario_from_json(*cfg.scenario_inline);
    if (cfg.scenario_path.empty()) throw UsageError("missing scenario");
    return serialize::scenario_from_json(serialize::load_json_file(cfg.scenario_path));
}

infoprob::MessageDist load_dist(const RunConfig& cfg, const Scenario& sc) {
    if (cfg.dist_inline) return serialize::dist_from_json(sc, *cfg.dist_inline);
    if (cfg.dist_path.empty()) throw UsageError("missing distribution");
    return serialize::dist_from_json(sc, serialize::load_json_file(cfg.dist_path));
}

netcode::Precoder load_or_sample_precoder(const RunConfig& cfg, const Scenario& sc) {
    if (!cfg.precoder_path.empty()) {
        const auto j = serialize::load_json_file(cfg.precoder_path);
        return netcode::Precoder::make(sc, serialize::matrix_from_json(sc.field, j));
    }
    std::mt19937_64 rng(cfg.seed);
    return netcode::Precoder::make(sc, gf::sample_invertible(sc.field, sc.mn(), rng));
}

std::optional<Rational> parse_eta(const RunConfig& cfg) {
    if (!cfg.eta_target) return std::nullopt;
    return rational_from_str(*cfg.eta_target);
}

std::vector<uint32_t> mask_indices(netcode::SubsetMask mask) {
    return netcode::subset_indices(mask);
}

ordered_json audit_report_json(const Scenario& sc, const bounds::AuditReport& rep) {
    ordered_json j;
    j["leak_tol"] = rep.leak_tol;
    j["exact_mode"] = rep.exact_mode;
    j["max_leak_nats"] = rep.max_leak_nats;
    j["eta_target"] = rational_str(rep.eta_target);
    if (rep.eta_def3)
        j["eta_def3"] = rational_str(*rep.eta_def3);
    else
        j["eta_def3"] = "unbounded";
    if (rep.def2_applicable && rep.eta_def2)
        j["eta_def2"] = *rep.eta_def2;
    j["pass"] = rep.pass;
    ordered_json entries = ordered_json::array();
    for (const auto& e : rep.entries) {
        ordered_json je;
        je["mu"] = e.mu;
        je["class"] = e.class_index;
        je["kernel"] = e.kernel_basis;
        je["I"] = mask_indices(e.I);
        je["leak_nats"] = e.leak_nats;
        je["zero"] = e.exactly_zero;
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    (void)sc;
    return j;
}

void render_text(const ordered_json& j, std::ostream& out, int indent = 0) {
    const std::string pad(static_cast<size_t>(indent) * 2, ' ');
    for (const auto& [key, val] : j.items()) {
        if (val.is_object()) {
            out << pad << key << ":\n";
            render_text(val, out, indent + 1);
        } else if (val.is_array() && !val.empty() && val[0].is_object()) {
            out << pad << key << ":\n";
            for (const auto& item : val) {
                out << pad << "  -\n";
                render_text(item, out, indent + 2);
            }
        } else {
            out << pad << std::left << std::setw(18) << (key + ":") << val.dump()
                << "\n";
        }
    }
}

void emit(const RunConfig& cfg, const ordered_json& report, std::ostream& fallback) {
    std::ostringstream buf;
    if (cfg.format == "text") {
        render_text(report, buf);
    } else if (cfg.format == "json") {
        buf << report.dump(2) << "\n";
    } else {
        throw UsageError("unknown format: " + cfg.format);
    }
    if (cfg.out_path.empty()) {
        fallback << buf.str();
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw UsageError("cannot write report to " + cfg.out_path);
    out << buf.str();
}

int run_plan(const RunConfig& cfg, std::ostream& fallback) {
    const Scenario sc = load_scenario(cfg);
    if (cfg.mu < 0) throw UsageError("plan needs --mu");

    bounds::PlannerInput in;
    in.q = sc.field->q();
    in.n = sc.n;
    in.T = sc.T;
    in.mu = static_cast<uint32_t>(cfg.mu);
    for (uint32_t k : sc.k) in.rates.emplace_back(k, sc.m);
    in.delta = Real(cfg.delta);
    in.rho = cfg.rho;
    in.eps_leak = cfg.eps_leak;
    in.eps_fail = cfg.eps_fail;
    in.rho_grid = cfg.rho_grid;

    const bounds::PlannerReport rep = bounds::plan_block_length(in);

    ordered_json j = report_shell(cfg);
    j["feasible"] = rep.feasible;
    if (!rep.feasible) {
        j["infeasible_reason"] = rep.infeasible_reason;
        emit(cfg, j, fallback);
        return 1;
    }
    j["ln_C1"] = static_cast<double>(rep.ln_C1);
    j["log10_C1"] = static_cast<double>(rep.ln_C1 / log(Real(10)));
    j["m_real"] = rep.m_real;
    j["m"] = rep.m;
    j["precoder_dim"] = rep.precoder_dim;
    j["precoder_shape"] =
        std::to_string(rep.precoder_dim) + "x" + std::to_string(rep.precoder_dim);
    j["success_prob"] = rep.success_prob;
    j["rho_used"] = rep.rho_used;
    j["bound_at_m_nats"] = rep.bound_at_m_nats;
    j["binding_rate"] = rational_str(rep.binding_rate);
    emit(cfg, j, fallback);
    return 0;
}

int run_audit(const RunConfig& cfg, std::ostream& fallback) {
    const Scenario sc = load_scenario(cfg);
    const auto dist = load_dist(cfg, sc);
    const auto pre = load_or_sample_precoder(cfg, sc);
    const auto rep = bounds::strong_security_audit(sc, dist, pre, cfg.leak_tol,
                                                   parse_eta(cfg), cfg.max_mu);
    ordered_json j = report_shell(cfg);
    j["precoder"] = serialize::matrix_to_json(pre.matrix());
    j["audit"] = audit_report_json(sc, rep);
    emit(cfg, j, fallback);
    return rep.pass ? 0 : 1;
}

int run_search(const RunConfig& cfg, std::ostream& fallback) {
    const Scenario sc = load_scenario(cfg);
    const auto dist = load_dist(cfg, sc);
    std::mt19937_64 rng(cfg.seed);
    const auto result = bounds::search_precoder(sc, dist, cfg.leak_tol, cfg.budget,
                                                rng, parse_eta(cfg));
    ordered_json j = report_shell(cfg);
    j["found"] = result.found;
    j["draws"] = result.draws;
    if (result.found) {
        j["precoder"] = serialize::matrix_to_json(result.precoder->matrix());
        j["audit"] = audit_report_json(sc, *result.report);
    }
    emit(cfg, j, fallback);
    return result.found ? 0 : 1;
}

int run_count_classes(const RunConfig& cfg, std::ostream& fallback) {
    if (cfg.q < 2 || cfg.n < 1) throw UsageError("count-classes needs --q and --n");
    const auto q = static_cast<uint64_t>(cfg.q);
    const auto n = static_cast<uint32_t>(cfg.n);

    ordered_json j = report_shell(cfg);
    ordered_json per_mu = ordered_json::array();
    for (uint32_t mu = 1; mu <= n; ++mu) {
        const auto gc = bounds::grassmann_count(q, n, mu);
        ordered_json row;
        row["mu"] = mu;
        row["count"] = gc.exact.str();
        row["lower"] = gc.lower.str();
        row["upper_power"] = gc.upper_power.str();
        row["upper_uniform"] = static_cast<double>(gc.upper_uniform);
        per_mu.push_back(std::move(row));
    }
    j["per_mu"] = std::move(per_mu);
    const auto total = bounds::total_classes_bound(q, n);
    j["total"] = total.exact.str();
    j["total_bound"] = static_cast<double>(total.bound);
    emit(cfg, j, fallback);
    return 0;
}

int run_verify_hash(const RunConfig& cfg, std::ostream& fallback) {
    if (cfg.field_text.empty() || cfg.mn < 1)
        throw UsageError("verify-hash needs --field and --mn");
    const auto spec = gf::FieldSpec::parse(cfg.field_text);
    const auto mn = static_cast<uint32_t>(cfg.mn);

    gf::Matrix outer = [&] {
        if (!cfg.b_json_path.empty())
            return serialize::matrix_from_json(spec,
                                               serialize::load_json_file(cfg.b_json_path));
        const int r = cfg.b_rank < 0 ? cfg.mn : cfg.b_rank;
        if (r > cfg.mn) throw UsageError("rank cannot exceed mn");
        gf::Matrix b(spec, static_cast<size_t>(r), mn);
        for (int i = 0; i < r; ++i) b.set(static_cast<size_t>(i), static_cast<size_t>(i), 1);
        return b;
    }();

    hashcheck::FamilyKind kind;
    hashcheck::HashFamily fam = [&] {
        if (cfg.family == "full-gl") {
            kind = hashcheck::FamilyKind::FullGL;
            return hashcheck::full_gl_family(spec, mn, outer);
        }
        if (cfg.family == "frobenius") {
            kind = hashcheck::FamilyKind::Frobenius;
            return hashcheck::frobenius_family(spec, mn, outer);
        }
        throw UsageError("unknown family kind: " + cfg.family);
    }();

    const auto direct = hashcheck::verify_two_universal(fam);
    const auto orbit = hashcheck::orbit_collision_prob(kind, spec, mn, outer);

    ordered_json j = report_shell(cfg);
    j["max_collision"] = rational_str(direct.max_collision);
    j["threshold"] = rational_str(direct.threshold);
    j["pass"] = direct.pass;
    j["pairs_checked"] = direct.pairs_checked;
    ordered_json jo;
    jo["pass"] = orbit.pass;
    jo["threshold"] = rational_str(orbit.threshold);
    jo["closed_form_verified"] = orbit.closed_form_verified;
    ordered_json profiles = ordered_json::array();
    for (const auto& p : orbit.profiles) {
        ordered_json jp;
        jp["orbit_size"] = p.orbit_size.str();
        jp["kernel_hits"] = p.kernel_hits.str();
        jp["ratio"] = rational_str(p.ratio);
        profiles.push_back(std::move(jp));
    }
    jo["profiles"] = std::move(profiles);
    j["orbit"] = std::move(jo);
    j["checkers_agree"] = direct.pass == orbit.pass;
    emit(cfg, j, fallback);
    return direct.pass && orbit.pass ? 0 : 1;
}

int run_bounds(const RunConfig& cfg, std::ostream& fallback) {
    const Scenario sc = load_scenario(cfg);
    const auto dist = load_dist(cfg, sc);
    if (cfg.mu < 0) throw UsageError("bounds needs --mu");
    const auto mu = static_cast<uint32_t>(cfg.mu);
    if (mu > sc.n) throw UsageError("mu cannot exceed n");

    const Real ln_C1 = log(Real(2)) + log(Real(bigint_pow(2, sc.T) - 1)) +
                       log(Real(sc.n)) +
                       Real((uint64_t{sc.n} + 1) * (uint64_t{sc.n} + 1)) / 4 *
                           log(Real(sc.field->q())) -
                       log(Real(cfg.eps_fail));

    ordered_json j = report_shell(cfg);
    j["ln_C1"] = static_cast<double>(ln_C1);
    const Real delta = infoprob::delta_rho(dist, cfg.rho);
    j["delta_rho"] = static_cast<double>(delta);

    ordered_json per_subset = ordered_json::array();
    for (netcode::SubsetMask I = 1; I < (1u << sc.T); ++I) {
        const Real ps = infoprob::power_sum(dist, I, cfg.rho);
        const Real ln_ps = log(ps);
        const Rational rate(netcode::subset_total_len(sc, I), sc.m);
        const Real avg_ln =
            bounds::avg_leak_bound_ln(cfg.rho, sc.field->q(), sc.m, mu, ln_ps);
        const Real ub5_ln = bounds::realization_bound_ub5_ln(ln_C1, cfg.rho,
                                                             sc.field->q(), sc.m, mu,
                                                             ln_ps);
        const Real ub7 = bounds::realization_bound_ub7(ln_C1, cfg.rho, sc.field->q(),
                                                       sc.m, mu, ln_ps);
        const auto rate_report =
            bounds::asymptotic_rate(sc.field->q(), sc.n, mu, rate, delta);

        ordered_json row;
        row["I"] = mask_indices(I);
        row["power_sum"] = static_cast<double>(ps);
        row["avg_bound_ln"] = static_cast<double>(avg_ln);
        row["ub5_ln"] = static_cast<double>(ub5_ln);
        row["ub5_per_symbol"] = static_cast<double>(exp(ub5_ln) / sc.m);
        row["ub7_per_symbol"] = static_cast<double>(ub7);
        row["min_per_symbol"] =
            std::min(static_cast<double>(exp(ub5_ln) / sc.m), static_cast<double>(ub7));
        row["zero_condition"] = bounds::zero_condition(sc.n, mu, rate, delta);
        row["asymptotic_rate_raw"] = rate_report.raw;
        row["asymptotic_rate"] = rate_report.clamped;
        per_subset.push_back(std::move(row));
    }
    j["per_subset"] = std::move(per_subset);
    j["success_prob"] =
        bounds::success_prob(ln_C1, sc.T, sc.n, sc.field->q()).value;
    emit(cfg, j, fallback);
    return 0;
}

}  // namespace

RunConfig preset(const std::string& name) {
    if (name == "paper-3.4") {
        RunConfig cfg;
        cfg.command = "plan";
        cfg.preset_name = name;
        cfg.scenario_inline = ordered_json{{"field", "GF(2^8)/poly=11b"},
                                           {"m", 18},
                                           {"n", 10},
                                           {"T", 5},
                                           {"k", {36, 36, 36, 36, 36, 0}}};
        cfg.mu = 3;
        cfg.delta = 0.5;
        cfg.rho = 0.5;
        cfg.eps_leak = 1e-6;
        cfg.eps_fail = 1e-12;
        return cfg;
    }
    if (name == "tiny-audit") {
        RunConfig cfg;
        cfg.command = "audit";
        cfg.preset_name = name;
        cfg.scenario_inline = ordered_json{
            {"field", "GF(2)"}, {"m", 1}, {"n", 2}, {"T", 2}, {"k", {1, 1, 0}}};
        cfg.dist_inline = ordered_json{{"form", "uniform"}};
        cfg.leak_tol = 1e-9;
        cfg.seed = 0;
        return cfg;
    }
    throw UsageError("unknown preset '" + name +
                     "'; known presets: paper-3.4, tiny-audit");
}

int run(const RunConfig& cfg, std::ostream& fallback) {
    if (cfg.command == "plan") return run_plan(cfg, fallback);
    if (cfg.command == "audit") return run_audit(cfg, fallback);
    if (cfg.command == "search") return run_search(cfg, fallback);
    if (cfg.command == "count-classes") return run_count_classes(cfg, fallback);
    if (cfg.command == "verify-hash") return run_verify_hash(cfg, fallback);
    if (cfg.command == "bounds") return run_bounds(cfg, fallback);
    throw UsageError("unknown command: " + cfg.command);
}

}  // namespace usnc::cli
