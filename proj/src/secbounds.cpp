#include "usnc/secbounds.hpp"

#include <boost/math/special_functions/log1p.hpp>

#include <algorithm>
#include <cmath>

namespace usnc::bounds {

namespace {

void check_rho(double rho) {
    if (!(rho > 0.0) || rho > 1.0) throw DomainError("rho must lie in (0, 1]");
}

Real ln_q(uint64_t q) { return log(Real(q)); }

// (n+1)^2 / 4 as an exact rational exponent.
Real uniform_exponent(uint32_t n) {
    return Real((uint64_t{n} + 1) * (uint64_t{n} + 1)) / 4;
}

Real ln_2T_minus_1(uint32_t T) { return log(Real(bigint_pow(2, T) - 1)); }

}  // namespace

Real pa_bound_ln(double rho, const Real& ln_codomain, const Real& power_sum) {
    check_rho(rho);
    if (power_sum < 0) throw DomainError("power sum must be nonnegative");
    if (power_sum == 0) return Real(0);  // bound is exactly 1
    const Real x = exp(Real(rho) * ln_codomain + log(power_sum));
    return boost::math::log1p(x);
}

Real avg_leak_bound_ln(double rho, uint64_t q, uint64_t m, uint32_t mu,
                       const Real& ln_power_sum) {
    check_rho(rho);
    return Real(m) * Real(rho) * Real(mu) * ln_q(q) + ln_power_sum - log(Real(rho));
}

Real realization_bound_ub5_ln(const Real& ln_C1, double rho, uint64_t q, uint64_t m,
                              uint32_t mu, const Real& ln_power_sum) {
    return ln_C1 + avg_leak_bound_ln(rho, q, m, mu, ln_power_sum);
}

Real realization_bound_ub7(const Real& ln_C1, double rho, uint64_t q, uint64_t m,
                           uint32_t mu, const Real& ln_power_sum) {
    check_rho(rho);
    if (m < 1) throw DomainError("m must be >= 1");
    const Real mrho = Real(m) * Real(rho);
    const Real inner = Real(mu) * ln_q(q) + (Real(1) + ln_power_sum) / mrho;
    const Real positive_part = inner > 0 ? inner : Real(0);
    return ln_C1 / mrho + positive_part;
}

GrassmannCount grassmann_count(uint64_t q, uint32_t n, uint32_t mu) {
    if (mu > n) throw UsageError("mu cannot exceed n");
    GrassmannCount out;
    out.exact = gaussian_binomial(q, n, mu);
    out.lower = bigint_pow(q, uint64_t{mu} * (n - mu));
    out.upper_power = bigint_pow(q, uint64_t{mu} * (n - mu + 1));
    out.upper_uniform = exp(uniform_exponent(n) * ln_q(q));
    return out;
}

TotalClasses total_classes_bound(uint64_t q, uint32_t n) {
    if (n < 1) throw UsageError("n must be >= 1");
    TotalClasses out;
    out.exact = 0;
    for (uint32_t mu = 1; mu <= n; ++mu) out.exact += gaussian_binomial(q, n, mu);
    out.bound = Real(n) * exp(uniform_exponent(n) * ln_q(q));
    if (real_of(out.exact) > out.bound)
        throw Error("class-count bound violated");  // would indicate a formula bug
    return out;
}

SuccessProb success_prob(const Real& ln_C1, uint32_t T, uint32_t n, uint64_t q) {
    const Real ln_bad = log(Real(2)) + ln_2T_minus_1(T) + log(Real(n)) +
                        uniform_exponent(n) * ln_q(q) - ln_C1;
    const Real value = Real(1) - exp(ln_bad);
    SuccessProb out;
    out.value = static_cast<double>(value);
    out.useful = value > 0;
    return out;
}

bool zero_condition(uint32_t n, uint32_t mu, const Rational& kI_rate,
                    const Real& delta) {
    return Real(mu) < Real(n) - real_of(kI_rate) - delta;
}

AsymptoticRate asymptotic_rate(uint64_t q, uint32_t n, uint32_t mu,
                               const Rational& kI_rate, const Real& delta) {
    const Real raw = (Real(mu) + delta - (Real(n) - real_of(kI_rate))) * ln_q(q);
    AsymptoticRate out;
    out.raw = static_cast<double>(raw);
    out.clamped = out.raw > 0 ? out.raw : 0.0;
    return out;
}

namespace {

struct PlanAtRho {
    bool feasible = false;
    double m_real = 0;
    uint64_t m = 0;
    double bound_at_m = 0;
};

PlanAtRho plan_at_rho(const PlannerInput& in, const Real& ln_C1,
                      const Rational& rate, double rho) {
    PlanAtRho out;
    const Real margin = Real(in.n) - Real(in.mu) - real_of(rate) - in.delta;
    if (margin <= 0) return out;

    // Solve C1 q^{m rho (mu - n + k_I/m + delta)} / rho < eps_leak for m.
    const Real num = ln_C1 - log(Real(in.eps_leak)) - log(Real(rho));
    const Real m_exact = num / (Real(rho) * margin * ln_q(in.q));
    out.m_real = static_cast<double>(m_exact);
    uint64_t m = m_exact <= 1 ? 1 : static_cast<uint64_t>(ceil(m_exact));

    // The real-valued solve is a sufficient direction only; re-check the
    // actual bound at the integer m and bump if needed.
    for (;;) {
        const Real exponent = Real(rho) * Real(m) *
                              (Real(in.mu) - Real(in.n) + real_of(rate) + in.delta) *
                              ln_q(in.q);
        const Real ub5_ln = ln_C1 + exponent - log(Real(rho));
        if (ub5_ln < log(Real(in.eps_leak))) {
            out.bound_at_m = static_cast<double>(exp(ub5_ln));
            break;
        }
        ++m;
    }
    out.m = m;
    out.feasible = true;
    return out;
}

}  // namespace

PlannerReport plan_block_length(const PlannerInput& in) {
    if (!(in.eps_leak > 0 && in.eps_leak < 1))
        throw UsageError("leakage target must lie in (0, 1)");
    if (!(in.eps_fail > 0 && in.eps_fail < 1))
        throw UsageError("failure target must lie in (0, 1)");
    check_rho(in.rho);
    if (in.rates.size() != static_cast<size_t>(in.T) + 1)
        throw UsageError("planner needs T+1 rates");
    if (in.mu > in.n) throw UsageError("mu cannot exceed n");

    PlannerReport report;
    report.ln_C1 = log(Real(2)) + ln_2T_minus_1(in.T) + log(Real(in.n)) +
                   uniform_exponent(in.n) * ln_q(in.q) - log(Real(in.eps_fail));

    // The largest per-message rate binds: its singleton subset has the
    // largest bound among all I that the example protects.
    Rational rate = 0;
    for (uint32_t i = 0; i < in.T; ++i) rate = std::max(rate, in.rates[i]);
    report.binding_rate = rate;

    std::vector<double> rhos;
    if (in.rho_grid) {
        for (int i = 1; i <= 10; ++i) rhos.push_back(i / 10.0);
    } else {
        rhos.push_back(in.rho);
    }

    PlanAtRho best;
    double best_rho = in.rho;
    for (double rho : rhos) {
        PlanAtRho cand = plan_at_rho(in, report.ln_C1, rate, rho);
        if (!cand.feasible) continue;
        if (!best.feasible || cand.m < best.m) {
            best = cand;
            best_rho = rho;
        }
    }

    if (!best.feasible) {
        report.feasible = false;
        report.infeasible_reason =
            "zero condition fails: mu >= n - k_I/m - delta for the binding rate";
        return report;
    }

    report.feasible = true;
    report.m_real = best.m_real;
    report.m = best.m;
    report.precoder_dim = best.m * in.n;
    report.rho_used = best_rho;
    report.bound_at_m_nats = best.bound_at_m;
    report.success_prob = success_prob(report.ln_C1, in.T, in.n, in.q).value;
    return report;
}

namespace {

Rational def3_complement_len(const Scenario& sc, SubsetMask I) {
    // sum of k_i over i in {1..T+1} outside I, as written in the definition.
    uint32_t kI = netcode::subset_total_len(sc, I);
    return Rational(uint64_t{sc.mn()} - kI);
}

bool entry_leaks(const AuditEntry& e, bool exact_mode, double leak_tol) {
    return exact_mode ? !e.exactly_zero : e.leak_nats > leak_tol;
}

}  // namespace

AuditReport strong_security_audit(const Scenario& sc, const MessageDist& dist,
                                  const Precoder& pre, double leak_tol,
                                  std::optional<Rational> eta_target, int max_mu) {
    if (sc.T > 20) throw GuardExceededError("2^T exceeds subset guard");
    const uint32_t mu_hi = max_mu < 0 ? sc.n : std::min<uint32_t>(max_mu, sc.n);

    AuditReport report;
    report.leak_tol = leak_tol;
    report.exact_mode = leak_tol == 0;
    report.eta_target = eta_target ? *eta_target : Rational(sc.k.back(), sc.m);

    for (uint32_t mu = 0; mu <= mu_hi; ++mu) {
        const auto classes = netcode::enumerate_wiretap_classes(sc.field, sc.n, mu);
        for (size_t ci = 0; ci < classes.size(); ++ci) {
            for (SubsetMask I = 1; I < (1u << sc.T); ++I) {
                const auto leak = infoprob::exact_leakage(dist, pre, classes[ci], I);
                AuditEntry e;
                e.mu = mu;
                e.class_index = ci;
                const gf::Matrix& kb = classes[ci].kernel().basis();
                for (size_t r = 0; r < kb.rows(); ++r) e.kernel_basis.push_back(kb.row(r));
                e.I = I;
                e.leak_nats = static_cast<double>(leak.nats);
                e.exactly_zero = leak.exactly_zero;
                report.entries.push_back(std::move(e));
            }
        }
    }

    report.max_leak_nats = 0;
    bool any_leak = false;
    Rational eta3;
    int64_t eta2 = 0;
    bool eta2_any = false;
    for (const AuditEntry& e : report.entries) {
        report.max_leak_nats = std::max(report.max_leak_nats, e.leak_nats);
        if (!entry_leaks(e, report.exact_mode, leak_tol)) continue;
        // A leaking pair must not qualify: eta <= mu - k_comp/m (strict
        // condition) and eta <= mu - (T - |I|) - 1 (non-strict, m = 1).
        const Rational cap3 =
            Rational(e.mu) - def3_complement_len(sc, e.I) / Rational(sc.m);
        if (!any_leak || cap3 < eta3) eta3 = cap3;
        const int64_t cap2 = static_cast<int64_t>(e.mu) -
                             static_cast<int64_t>(sc.T - netcode::subset_indices(e.I).size()) - 1;
        if (!eta2_any || cap2 < eta2) eta2 = cap2;
        any_leak = true;
        eta2_any = true;
    }
    if (any_leak) report.eta_def3 = eta3;
    report.def2_applicable = sc.m == 1;
    if (report.def2_applicable && eta2_any) report.eta_def2 = eta2;

    report.pass = !report.eta_def3 || *report.eta_def3 >= report.eta_target;
    return report;
}

SearchResult search_precoder(const Scenario& sc, const MessageDist& dist,
                             double leak_tol, uint64_t budget, std::mt19937_64& rng,
                             std::optional<Rational> eta_target) {
    const Rational target = eta_target ? *eta_target : Rational(sc.k.back(), sc.m);
    const bool exact_mode = leak_tol == 0;

    // Qualifying (mu, I) pairs at the target eta, and their classes,
    // enumerated once and reused across draws.
    struct Pair {
        uint32_t mu;
        SubsetMask I;
    };
    std::vector<Pair> qualifying;
    for (uint32_t mu = 0; mu <= sc.n; ++mu)
        for (SubsetMask I = 1; I < (1u << sc.T); ++I) {
            const Rational lhs = Rational(sc.m) * (Rational(mu) - target);
            if (lhs < def3_complement_len(sc, I)) qualifying.push_back({mu, I});
        }
    std::vector<std::vector<EavesdropClass>> classes_by_mu(sc.n + 1);
    for (uint32_t mu = 0; mu <= sc.n; ++mu)
        classes_by_mu[mu] = netcode::enumerate_wiretap_classes(sc.field, sc.n, mu);

    SearchResult result;
    for (uint64_t draw = 0; draw < budget; ++draw) {
        gf::Matrix l = gf::sample_invertible(sc.field, sc.mn(), rng);
        Precoder pre = Precoder::make(sc, std::move(l));
        ++result.draws;
        bool clean = true;
        for (const Pair& pr : qualifying) {
            for (const EavesdropClass& cls : classes_by_mu[pr.mu]) {
                const auto leak = infoprob::exact_leakage(dist, pre, cls, pr.I);
                const bool leaking = exact_mode
                                         ? !leak.exactly_zero
                                         : static_cast<double>(leak.nats) > leak_tol;
                if (leaking) {
                    clean = false;
                    break;
                }
            }
            if (!clean) break;
        }
        if (clean) {
            result.found = true;
            result.report = strong_security_audit(sc, dist, pre, leak_tol, target);
            result.precoder = std::move(pre);
            return result;
        }
    }
    return result;
}

}  // namespace usnc::bounds
