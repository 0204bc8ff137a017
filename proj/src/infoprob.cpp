#include "usnc/infoprob.hpp"

#include <algorithm>
#include <cmath>

namespace usnc::infoprob {

namespace {

constexpr uint64_t kMaxExplicitSpace = uint64_t{1} << 20;
constexpr uint32_t kMaxSubsetBits = 20;

uint64_t checked_space(const Scenario& sc) {
    const BigInt space = bigint_pow(sc.field->q(), sc.mn());
    if (space > kMaxExplicitSpace)
        throw GuardExceededError("message space exceeds q^mn guard");
    return static_cast<uint64_t>(space);
}

std::vector<uint64_t> unpack(const Scenario& sc, uint64_t code) {
    std::vector<uint64_t> sym(sc.mn());
    const uint64_t q = sc.field->q();
    for (uint32_t i = 0; i < sc.mn(); ++i) {
        sym[i] = code % q;
        code /= q;
    }
    return sym;
}

uint64_t pack(const Scenario& sc, std::span<const uint64_t> sym) {
    const uint64_t q = sc.field->q();
    uint64_t code = 0;
    for (size_t i = sym.size(); i > 0; --i) code = code * q + sym[i - 1];
    return code;
}

// Packed code of the blocks listed in indices (ascending), from a full code.
uint64_t slice_code(const Scenario& sc, uint64_t code,
                    const std::vector<uint32_t>& indices) {
    const uint64_t q = sc.field->q();
    const std::vector<uint64_t> sym = unpack(sc, code);
    uint64_t out = 0;
    uint64_t mult = 1;
    for (uint32_t idx : indices) {
        const uint32_t off = sc.block_offset(idx);
        for (uint32_t j = 0; j < sc.block_len(idx); ++j) {
            out += sym[off + j] * mult;
            mult *= q;
        }
    }
    return out;
}

std::vector<uint32_t> complement_indices(const Scenario& sc, SubsetMask I) {
    std::vector<uint32_t> out;
    for (uint32_t i = 1; i <= sc.T + 1; ++i) {
        const bool in_I = i <= sc.T && (I & (1u << (i - 1)));
        if (!in_I) out.push_back(i);
    }
    return out;
}

void check_rho(double rho) {
    if (!(rho > 0.0) || rho > 1.0) throw DomainError("rho must lie in (0, 1]");
}

void check_mask(const Scenario& sc, SubsetMask I, bool allow_empty) {
    if (!allow_empty && I == 0) throw UsageError("message subset must be nonempty");
    if (I >= (1u << sc.T)) throw UsageError("message subset out of range");
}

}  // namespace

MessageDist::MessageDist(Scenario sc) : sc_(std::move(sc)) {
    space_ = checked_space(sc_);
}

MessageDist MessageDist::uniform(Scenario sc) {
    MessageDist d(std::move(sc));
    d.form_ = DistForm::Uniform;
    d.uniform_p_ = Rational(1, BigInt(d.space_));
    return d;
}

MessageDist MessageDist::product(Scenario sc,
                                 std::vector<std::vector<Rational>> tables) {
    MessageDist d(std::move(sc));
    d.form_ = DistForm::Product;
    const Scenario& s = d.sc_;
    if (tables.size() != static_cast<size_t>(s.T) + 1)
        throw UsageError("product form needs one table per message");
    for (uint32_t i = 0; i <= s.T; ++i) {
        const uint64_t block_space =
            static_cast<uint64_t>(bigint_pow(s.field->q(), s.k[i]));
        if (tables[i].size() != block_space)
            throw UsageError("product table size must be q^k_i");
        Rational sum = 0;
        for (const Rational& p : tables[i]) {
            if (p < 0) throw UsageError("negative probability");
            sum += p;
        }
        if (sum != 1) throw UsageError("product table must sum to 1");
    }
    d.tables_ = std::move(tables);
    return d;
}

MessageDist MessageDist::table(Scenario sc, std::map<uint64_t, Rational> probs) {
    MessageDist d(std::move(sc));
    d.form_ = DistForm::Table;
    Rational sum = 0;
    for (const auto& [code, p] : probs) {
        if (code >= d.space_) throw UsageError("outcome code out of range");
        if (p < 0) throw UsageError("negative probability");
        sum += p;
    }
    if (sum != 1) throw UsageError("explicit table must sum to 1");
    d.table_ = std::move(probs);
    return d;
}

Rational MessageDist::prob(uint64_t code) const {
    if (code >= space_) throw UsageError("outcome code out of range");
    switch (form_) {
        case DistForm::Uniform:
            return uniform_p_;
        case DistForm::Product: {
            Rational p = 1;
            for (uint32_t i = 1; i <= sc_.T + 1; ++i) {
                const uint64_t block = slice_code(sc_, code, {i});
                p *= tables_[i - 1][block];
                if (p == 0) return p;
            }
            return p;
        }
        case DistForm::Table: {
            const auto it = table_.find(code);
            return it == table_.end() ? Rational(0) : it->second;
        }
    }
    return 0;
}

std::vector<Rational> JointTable::marginal_x() const {
    std::vector<Rational> out(nx, Rational(0));
    for (uint64_t x = 0; x < nx; ++x)
        for (uint64_t y = 0; y < ny; ++y) out[x] += at(x, y);
    return out;
}

std::vector<Rational> JointTable::marginal_y() const {
    std::vector<Rational> out(ny, Rational(0));
    for (uint64_t x = 0; x < nx; ++x)
        for (uint64_t y = 0; y < ny; ++y) out[y] += at(x, y);
    return out;
}

Real entropy_nats(const std::vector<Rational>& dist) {
    Real h = 0;
    for (const Rational& p : dist)
        if (p > 0) h -= real_of(p) * ln_of(p);
    return h;
}

Real mutual_information_nats(const JointTable& j) {
    const auto px = j.marginal_x();
    const auto py = j.marginal_y();
    Real mi = 0;
    for (uint64_t x = 0; x < j.nx; ++x)
        for (uint64_t y = 0; y < j.ny; ++y) {
            const Rational& pxy = j.at(x, y);
            if (pxy == 0) continue;
            mi += real_of(pxy) * (ln_of(pxy) - ln_of(px[x]) - ln_of(py[y]));
        }
    return mi < 0 ? Real(0) : mi;
}

Real cond_entropy_nats(const JointTable& j) {
    const auto py = j.marginal_y();
    Real h = 0;
    for (uint64_t x = 0; x < j.nx; ++x)
        for (uint64_t y = 0; y < j.ny; ++y) {
            const Rational& pxy = j.at(x, y);
            if (pxy == 0) continue;
            h += real_of(pxy) * (ln_of(py[y]) - ln_of(pxy));
        }
    return h < 0 ? Real(0) : h;
}

bool factorizes_exactly(const JointTable& j) {
    const auto px = j.marginal_x();
    const auto py = j.marginal_y();
    for (uint64_t x = 0; x < j.nx; ++x)
        for (uint64_t y = 0; y < j.ny; ++y)
            if (j.at(x, y) != px[x] * py[y]) return false;
    return true;
}

RenyiValue renyi_cond_entropy(const JointTable& j, double rho, uint64_t base_q) {
    check_rho(rho);
    const auto py = j.marginal_y();
    Real expectation = 0;
    for (uint64_t x = 0; x < j.nx; ++x)
        for (uint64_t y = 0; y < j.ny; ++y) {
            const Rational& pxy = j.at(x, y);
            if (pxy == 0) continue;
            const Rational cond = pxy / py[y];
            expectation += real_of(pxy) * pow(real_of(cond), Real(rho));
        }
    const Real nats = -log(expectation) / Real(rho);
    return {nats / log(Real(base_q)), nats};
}

JointTable joint_of_split(const MessageDist& dist, SubsetMask I) {
    const Scenario& sc = dist.scenario();
    check_mask(sc, I, true);
    const std::vector<uint32_t> yi = netcode::subset_indices(I);
    const std::vector<uint32_t> xi = complement_indices(sc, I);
    uint32_t kx = 0, ky = 0;
    for (uint32_t i : xi) kx += sc.block_len(i);
    for (uint32_t i : yi) ky += sc.block_len(i);
    JointTable j;
    j.nx = static_cast<uint64_t>(bigint_pow(sc.field->q(), kx));
    j.ny = static_cast<uint64_t>(bigint_pow(sc.field->q(), ky));
    j.p.assign(j.nx * j.ny, Rational(0));
    dist.for_each_support([&](uint64_t code, const Rational& p) {
        j.at(slice_code(sc, code, xi), slice_code(sc, code, yi)) += p;
    });
    return j;
}

RenyiValue renyi_cond_entropy(const MessageDist& dist, SubsetMask I, double rho) {
    return renyi_cond_entropy(joint_of_split(dist, I), rho,
                              dist.scenario().field->q());
}

RenyiLimitResult renyi_limit_check(const JointTable& j) {
    RenyiLimitResult out;
    out.shannon_nats = cond_entropy_nats(j);
    const double rhos[3] = {1e-3, 1e-4, 1e-5};
    for (int i = 0; i < 3; ++i)
        out.renyi_nats[i] = renyi_cond_entropy(j, rhos[i], 2).nats;
    const Real slack = Real("1e-30");
    out.converged = true;
    Real prev = abs(out.renyi_nats[0] - out.shannon_nats);
    for (int i = 1; i < 3; ++i) {
        const Real cur = abs(out.renyi_nats[i] - out.shannon_nats);
        if (cur > prev + slack) out.converged = false;
        prev = cur;
    }
    return out;
}

RenyiLimitResult renyi_limit_check(const MessageDist& dist, SubsetMask I) {
    return renyi_limit_check(joint_of_split(dist, I));
}

LeakageResult exact_leakage(const MessageDist& dist, const netcode::Precoder& pre,
                            const netcode::EavesdropClass& cls, SubsetMask I) {
    const Scenario& sc = dist.scenario();
    check_mask(sc, I, false);
    if (!pre.scenario().field->same(*sc.field))
        throw SpecMismatchError("precoder and distribution fields differ");
    const std::vector<uint32_t> yi = netcode::subset_indices(I);

    // Observation map as one matrix product, computed once.
    const gf::Matrix obs = expand_eavesdrop(cls, sc.m).mul(pre.matrix());
    const uint64_t q = sc.field->q();

    std::map<std::pair<uint64_t, uint64_t>, Rational> joint;
    dist.for_each_support([&](uint64_t code, const Rational& p) {
        const std::vector<uint64_t> sym = unpack(sc, code);
        const std::vector<uint64_t> z = obs.mul_vec(sym);
        uint64_t zcode = 0;
        for (size_t i = z.size(); i > 0; --i) zcode = zcode * q + z[i - 1];
        joint[{slice_code(sc, code, yi), zcode}] += p;
    });

    std::map<uint64_t, Rational> ps, pz;
    for (const auto& [key, p] : joint) {
        ps[key.first] += p;
        pz[key.second] += p;
    }

    bool zero = true;
    for (const auto& [key, p] : joint)
        if (p != ps[key.first] * pz[key.second]) {
            zero = false;
            break;
        }
    if (zero) return {Real(0), true};

    Real mi = 0;
    for (const auto& [key, p] : joint)
        mi += real_of(p) * (ln_of(p) - ln_of(ps[key.first]) - ln_of(pz[key.second]));
    return {mi < 0 ? Real(0) : mi, false};
}

Real power_sum(const MessageDist& dist, SubsetMask I, double rho) {
    check_rho(rho);
    const JointTable j = joint_of_split(dist, I);
    const auto py = j.marginal_y();
    Real expectation = 0;
    for (uint64_t x = 0; x < j.nx; ++x)
        for (uint64_t y = 0; y < j.ny; ++y) {
            const Rational& pxy = j.at(x, y);
            if (pxy == 0) continue;
            expectation += real_of(pxy) * pow(real_of(pxy / py[y]), Real(rho));
        }
    return expectation;
}

Real delta_rho(const MessageDist& dist, double rho) {
    check_rho(rho);
    const Scenario& sc = dist.scenario();
    if (sc.T > kMaxSubsetBits)
        throw GuardExceededError("2^T exceeds subset enumeration guard");
    Real best = 0;  // clamped below at zero
    for (SubsetMask I = 1; I < (1u << sc.T); ++I) {
        const RenyiValue h = renyi_cond_entropy(dist, I, rho);
        const uint32_t kI = netcode::subset_total_len(sc, I);
        const Real lhs = Real(sc.n) - Real(kI) / Real(sc.m) - h.logq_units / Real(sc.m);
        if (lhs > best) best = lhs;
    }
    return best;
}

Real entropy_of_slice(const MessageDist& dist, SubsetMask I) {
    const Scenario& sc = dist.scenario();
    check_mask(sc, I, false);
    const std::vector<uint32_t> yi = netcode::subset_indices(I);
    std::map<uint64_t, Rational> marg;
    dist.for_each_support([&](uint64_t code, const Rational& p) {
        marg[slice_code(sc, code, yi)] += p;
    });
    Real h = 0;
    for (const auto& [code, p] : marg)
        if (p > 0) h -= real_of(p) * ln_of(p);
    return h;
}

}  // namespace usnc::infoprob
