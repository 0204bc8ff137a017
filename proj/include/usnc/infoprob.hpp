#pragma once

// Probability distributions over message spaces and exact information
// measures: Shannon entropy, mutual information, conditional Renyi entropy
// of order 1+rho, and the non-uniformity parameter delta_rho.
//
// Probabilities are exact rationals; entropies are evaluated in 50-digit
// floats so that the multiple-of-ln(q) structure of leakage values can be
// checked to well below 1e-9.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "usnc/netcode.hpp"
#include "usnc/numeric.hpp"

namespace usnc::infoprob {

using netcode::Scenario;
using netcode::SubsetMask;

enum class DistForm { Uniform, Product, Table };

// Joint distribution of S = (S_1, ..., S_{T+1}). Message vectors are packed
// base q, coordinate 0 least significant. Explicit forms are guarded by
// q^mn <= 2^20.
class MessageDist {
public:
    static MessageDist uniform(Scenario sc);
    // tables[i] has q^{k_{i+1}} entries; messages are independent.
    static MessageDist product(Scenario sc, std::vector<std::vector<Rational>> tables);
    static MessageDist table(Scenario sc, std::map<uint64_t, Rational> probs);

    const Scenario& scenario() const { return sc_; }
    DistForm form() const { return form_; }
    uint64_t space_size() const { return space_; }

    Rational prob(uint64_t code) const;

    // Visits (code, probability) for every outcome with positive mass.
    template <typename F>
    void for_each_support(F&& fn) const {
        if (form_ == DistForm::Table) {
            for (const auto& [code, p] : table_)
                if (p > 0) fn(code, p);
            return;
        }
        for (uint64_t code = 0; code < space_; ++code) {
            const Rational p = prob(code);
            if (p > 0) fn(code, p);
        }
    }

    const std::map<uint64_t, Rational>& raw_table() const { return table_; }
    const std::vector<std::vector<Rational>>& raw_tables() const { return tables_; }

private:
    explicit MessageDist(Scenario sc);
    Scenario sc_;
    DistForm form_ = DistForm::Uniform;
    uint64_t space_ = 0;
    Rational uniform_p_;
    std::vector<std::vector<Rational>> tables_;  // product form
    std::map<uint64_t, Rational> table_;         // explicit form
};

struct EntropyValue {
    Real nats;
    Real in_logq(uint64_t q) const { return nats / log(Real(q)); }
};

struct RenyiValue {
    Real logq_units;
    Real nats;
};

// Generic finite joint table P(x, y), x-major. Used directly by the hash
// and privacy-amplification checks and behind the MessageDist measures.
struct JointTable {
    uint64_t nx = 0;
    uint64_t ny = 0;
    std::vector<Rational> p;  // size nx*ny

    const Rational& at(uint64_t x, uint64_t y) const { return p[x * ny + y]; }
    Rational& at(uint64_t x, uint64_t y) { return p[x * ny + y]; }
    std::vector<Rational> marginal_x() const;
    std::vector<Rational> marginal_y() const;
};

Real mutual_information_nats(const JointTable& j);
Real cond_entropy_nats(const JointTable& j);  // H(X|Y)
Real entropy_nats(const std::vector<Rational>& dist);
bool factorizes_exactly(const JointTable& j);  // I(X;Y) == 0, rational test

// H_{1+rho}(X|Y) = -log_q E[P_{X|Y}(X|Y)^rho] / rho for rho in (0,1].
RenyiValue renyi_cond_entropy(const JointTable& j, double rho, uint64_t base_q);

// H_{1+rho}(S_comp(I) | S_I) where comp(I) is {1..T+1} minus I; the mask may
// be empty (entropy of the whole vector, no conditioning).
RenyiValue renyi_cond_entropy(const MessageDist& dist, SubsetMask I, double rho);

struct RenyiLimitResult {
    Real shannon_nats;
    std::array<Real, 3> renyi_nats;  // rho = 1e-3, 1e-4, 1e-5
    bool converged;                  // differences to Shannon shrink monotonically
};

RenyiLimitResult renyi_limit_check(const JointTable& j);
RenyiLimitResult renyi_limit_check(const MessageDist& dist, SubsetMask I);

struct LeakageResult {
    Real nats;
    bool exactly_zero;  // exact rational independence test
};

// I(S_I ; B l S^t) for a fixed precoder realization, by exhaustive
// enumeration of the joint distribution of (S_I, observation).
LeakageResult exact_leakage(const MessageDist& dist, const netcode::Precoder& pre,
                            const netcode::EavesdropClass& cls, SubsetMask I);

// E[P_{S_comp(I)|S_I}(.)^rho]; the empty mask conditions on nothing.
Real power_sum(const MessageDist& dist, SubsetMask I, double rho);

// Tight non-uniformity parameter at this m: the max over nonempty I of
// n - k_I/m - H_{1+rho}(S_comp(I)|S_I)/(m ln q), clamped at zero.
Real delta_rho(const MessageDist& dist, double rho);

// Shannon entropy H(S_I) in nats, I a nonempty subset of {1..T}.
Real entropy_of_slice(const MessageDist& dist, SubsetMask I);

// Builds the joint table of (S_I, S_comp(I)); either side may be empty.
JointTable joint_of_split(const MessageDist& dist, SubsetMask I);

}  // namespace usnc::infoprob
