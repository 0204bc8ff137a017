#include "usnc/netcode.hpp"

#include <numeric>

namespace usnc::netcode {

Scenario Scenario::make(gf::FieldSpecPtr field, uint32_t m, uint32_t n, uint32_t T,
                        std::vector<uint32_t> k) {
    if (!field) throw UsageError("scenario needs a field");
    if (m < 1 || n < 1 || T < 1) throw UsageError("scenario needs m, n, T >= 1");
    if (k.size() != static_cast<size_t>(T) + 1)
        throw UsageError("scenario needs T+1 block lengths");
    const uint64_t total = std::accumulate(k.begin(), k.end(), uint64_t{0});
    if (total != uint64_t{m} * n)
        throw UsageError("block lengths must sum to m*n");
    Scenario sc;
    sc.field = std::move(field);
    sc.m = m;
    sc.n = n;
    sc.T = T;
    sc.k = std::move(k);
    return sc;
}

uint32_t Scenario::block_offset(uint32_t index_1based) const {
    if (index_1based < 1 || index_1based > T + 1)
        throw UsageError("message index out of range");
    uint32_t off = 0;
    for (uint32_t i = 0; i + 1 < index_1based; ++i) off += k[i];
    return off;
}

std::vector<uint32_t> subset_indices(SubsetMask mask) {
    std::vector<uint32_t> out;
    for (uint32_t i = 0; mask >> i; ++i)
        if (mask & (1u << i)) out.push_back(i + 1);
    return out;
}

uint32_t subset_total_len(const Scenario& sc, SubsetMask mask) {
    uint32_t total = 0;
    for (uint32_t i : subset_indices(mask)) total += sc.block_len(i);
    return total;
}

std::vector<uint64_t> message_slice(std::span<const uint64_t> s, const Scenario& sc,
                                    SubsetMask mask) {
    if (mask == 0) throw UsageError("message subset must be nonempty");
    if (mask >= (1u << sc.T)) throw UsageError("message subset out of range");
    if (s.size() != sc.mn()) throw DimensionError("message vector length mismatch");
    std::vector<uint64_t> out;
    for (uint32_t i : subset_indices(mask)) {
        const uint32_t off = sc.block_offset(i);
        for (uint32_t j = 0; j < sc.block_len(i); ++j) out.push_back(s[off + j]);
    }
    return out;
}

Precoder::Precoder(Scenario sc, gf::Matrix mat, gf::Matrix inv)
    : sc_(std::move(sc)), mat_(std::move(mat)), inv_(std::move(inv)) {}

Precoder Precoder::make(Scenario sc, gf::Matrix l) {
    if (l.rows() != sc.mn() || l.cols() != sc.mn())
        throw DimensionError("precoder must be mn x mn");
    if (!l.spec()->same(*sc.field))
        throw SpecMismatchError("precoder field differs from scenario field");
    gf::Matrix inv = gf::mat_inverse(l);  // throws SingularMatrixError
    return Precoder(std::move(sc), std::move(l), std::move(inv));
}

EavesdropClass::EavesdropClass(gf::Matrix base, uint32_t mu, gf::Subspace kernel)
    : base_(std::move(base)), mu_(mu), kernel_(std::move(kernel)) {}

EavesdropClass EavesdropClass::from_base(gf::Matrix base) {
    const auto mu = static_cast<uint32_t>(base.rows());
    if (base.rows() > base.cols())
        throw UsageError("wiretap base cannot have more rows than links");
    if (gf::mat_rank(base) != base.rows())
        throw UsageError("wiretap base must have full row rank");
    gf::Subspace kernel = gf::mat_kernel(base);
    return EavesdropClass(std::move(base), mu, std::move(kernel));
}

gf::Matrix expand_eavesdrop(const EavesdropClass& cls, uint32_t m) {
    if (m < 1) throw UsageError("expand_eavesdrop needs m >= 1");
    const gf::Matrix& b = cls.base();
    const size_t n = b.cols();
    gf::Matrix out(b.spec(), cls.mu() * static_cast<size_t>(m), n * m);
    for (size_t r = 0; r < cls.mu(); ++r)
        for (size_t c = 0; c < n; ++c) {
            const uint64_t v = b.at(r, c);
            if (v == 0) continue;
            for (uint32_t t = 0; t < m; ++t) out.set(r * m + t, c * m + t, v);
        }
    return out;
}

PacketSet encode(const Precoder& pre, std::span<const uint64_t> s) {
    const Scenario& sc = pre.scenario();
    if (s.size() != sc.mn()) throw DimensionError("message vector length mismatch");
    const std::vector<uint64_t> coded = pre.matrix().mul_vec(s);
    PacketSet ps;
    ps.packets.resize(sc.n);
    for (uint32_t i = 0; i < sc.n; ++i)
        ps.packets[i].assign(coded.begin() + static_cast<long>(i) * sc.m,
                             coded.begin() + static_cast<long>(i + 1) * sc.m);
    return ps;
}

std::vector<uint64_t> decode(const Precoder& pre, const PacketSet& ps) {
    const Scenario& sc = pre.scenario();
    if (ps.packets.size() != sc.n) throw DimensionError("packet count mismatch");
    std::vector<uint64_t> coded;
    coded.reserve(sc.mn());
    for (const auto& p : ps.packets) {
        if (p.size() != sc.m) throw DimensionError("packet length mismatch");
        coded.insert(coded.end(), p.begin(), p.end());
    }
    return pre.inverse().mul_vec(coded);
}

std::vector<uint64_t> observe(const EavesdropClass& cls, const Precoder& pre,
                              std::span<const uint64_t> s) {
    const Scenario& sc = pre.scenario();
    if (cls.base().cols() != sc.n)
        throw DimensionError("wiretap base width differs from link count");
    const gf::Matrix expanded = expand_eavesdrop(cls, sc.m);
    return expanded.mul_vec(pre.matrix().mul_vec(s));
}

std::vector<EavesdropClass> enumerate_wiretap_classes(const gf::FieldSpecPtr& field,
                                                      uint32_t n, uint32_t mu) {
    if (mu > n) throw UsageError("mu cannot exceed the number of links");
    std::vector<EavesdropClass> out;
    for (const gf::Subspace& kernel : gf::enumerate_subspaces(field, n, n - mu)) {
        // Rows spanning the dual complement of the kernel: a full-rank
        // mu x n matrix whose right null space is exactly the kernel.
        const gf::Subspace dual = gf::mat_kernel(kernel.basis());
        gf::Matrix base = dual.basis();
        out.push_back(EavesdropClass::from_base(std::move(base)));
    }
    return out;
}

}  // namespace usnc::netcode
