#pragma once

// The bound catalogue: privacy-amplification bound, average and realization
// leakage bounds, Grassmannian class counting, the success-probability
// guarantee, the zero-leakage condition, the asymptotic leakage rate, the
// block-length planner, and the strong-security auditor.
//
// Quantities that overflow doubles (C_1 is of order q^{(n+1)^2/4}) are
// carried in the natural-log domain as 50-digit floats.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "usnc/infoprob.hpp"
#include "usnc/netcode.hpp"
#include "usnc/numeric.hpp"

namespace usnc::bounds {

using infoprob::MessageDist;
using netcode::EavesdropClass;
using netcode::Precoder;
using netcode::Scenario;
using netcode::SubsetMask;

// ln(1 + |A3|^rho * E[P^rho]), the privacy-amplification bound on
// E_f[exp(rho I(F(A1); A2 | F=f))] for a two-universal family F.
Real pa_bound_ln(double rho, const Real& ln_codomain, const Real& power_sum);

// ln of the average-leakage bound q^{m rho mu} E[P^rho] / rho.
Real avg_leak_bound_ln(double rho, uint64_t q, uint64_t m, uint32_t mu,
                       const Real& ln_power_sum);

// ln of C1 * q^{m rho mu} E[P^rho] / rho, the per-realization bound that a
// 1 - 2(2^T-1)/C1 fraction of precoders satisfies for every subset.
Real realization_bound_ub5_ln(const Real& ln_C1, double rho, uint64_t q, uint64_t m,
                              uint32_t mu, const Real& ln_power_sum);

// Per-symbol realization bound ln(C1)/(m rho) + |mu ln q + (1+ln E[P^rho])/(m rho)|^+.
Real realization_bound_ub7(const Real& ln_C1, double rho, uint64_t q, uint64_t m,
                           uint32_t mu, const Real& ln_power_sum);

struct GrassmannCount {
    BigInt exact;        // prod_{i<mu} (q^n - q^i)/(q^mu - q^i)
    BigInt lower;        // q^{mu(n-mu)}
    BigInt upper_power;  // q^{mu(n-mu+1)}
    Real upper_uniform;  // q^{(n+1)^2/4}
};
GrassmannCount grassmann_count(uint64_t q, uint32_t n, uint32_t mu);

struct TotalClasses {
    BigInt exact;  // sum over mu = 1..n of the class counts
    Real bound;    // n * q^{(n+1)^2/4}
};
TotalClasses total_classes_bound(uint64_t q, uint32_t n);

struct SuccessProb {
    double value;  // 1 - 2(2^T-1) n q^{(n+1)^2/4} / C1, possibly negative
    bool useful;   // value > 0
};
SuccessProb success_prob(const Real& ln_C1, uint32_t T, uint32_t n, uint64_t q);

// mu < (n - k_I/m) - delta_rho, the condition under which the average bound
// vanishes as m grows.
bool zero_condition(uint32_t n, uint32_t mu, const Rational& kI_rate,
                    const Real& delta);

struct AsymptoticRate {
    double raw;      // (mu + delta - (n - k_I/m)) ln q
    double clamped;  // max(raw, 0)
};
AsymptoticRate asymptotic_rate(uint64_t q, uint32_t n, uint32_t mu,
                               const Rational& kI_rate, const Real& delta);

struct PlannerInput {
    uint64_t q = 0;
    uint32_t n = 0;
    uint32_t T = 0;
    uint32_t mu = 0;
    std::vector<Rational> rates;  // k_i/m for i = 1..T+1, constant in m
    Real delta = 0;               // delta_rho, supplied or measured
    double rho = 0.5;
    double eps_leak = 1e-6;  // per-subset leakage target, nats
    double eps_fail = 1e-12; // probability that a sampled precoder misses
    bool rho_grid = false;   // search rho in {0.1,...,1.0} for the smallest m
};

struct PlannerReport {
    bool feasible = false;
    std::string infeasible_reason;
    Real ln_C1 = 0;
    double m_real = 0;       // exact real solution of the bound inequality
    uint64_t m = 0;          // ceiling, bumped until the bound clears eps_leak
    uint64_t precoder_dim = 0;  // m * n
    double success_prob = 0;
    double rho_used = 0;
    double bound_at_m_nats = 0;  // ub5 evaluated at the integer m
    Rational binding_rate;       // largest singleton k_i/m
};

PlannerReport plan_block_length(const PlannerInput& in);

struct AuditEntry {
    uint32_t mu = 0;
    size_t class_index = 0;  // within the mu-level enumeration
    std::vector<std::vector<uint64_t>> kernel_basis;
    SubsetMask I = 0;
    double leak_nats = 0;
    bool exactly_zero = false;
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    double max_leak_nats = 0;
    // Largest eta such that every (mu, I) pair qualifying under the strict
    // size condition m(mu - eta) < sum_{i not in I} k_i is clean. Unset
    // means unbounded (no leaking pair at all).
    std::optional<Rational> eta_def3;
    // m = 1 classification under the non-strict condition mu - eta <= T - |I|.
    bool def2_applicable = false;
    std::optional<int64_t> eta_def2;
    Rational eta_target;
    bool pass = false;
    double leak_tol = 0;
    bool exact_mode = false;  // leak_tol == 0 uses the exact rational zero test
};

// Exhaustive audit over mu = 0..max_mu, every wiretap class, every nonempty
// I. leak_tol = 0 requests exact rational zero testing. max_mu < 0 means n.
AuditReport strong_security_audit(const Scenario& sc, const MessageDist& dist,
                                  const Precoder& pre, double leak_tol,
                                  std::optional<Rational> eta_target = {},
                                  int max_mu = -1);

struct SearchResult {
    bool found = false;
    std::optional<Precoder> precoder;
    std::optional<AuditReport> report;
    uint64_t draws = 0;
};

// Samples precoders until one passes the audit at leak_tol for every
// qualifying (mu, I) pair at eta_target (default k_{T+1}/m); fails after
// budget draws, which signals parameters too tight rather than absence.
SearchResult search_precoder(const Scenario& sc, const MessageDist& dist,
                             double leak_tol, uint64_t budget, std::mt19937_64& rng,
                             std::optional<Rational> eta_target = {});

}  // namespace usnc::bounds
