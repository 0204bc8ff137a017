#pragma once

// Source-node coding scheme: message layout, invertible precoder, packet
// split, receiver decode, wiretap observation, and enumeration of wiretap
// equivalence classes (one per kernel).

#include <cstdint>
#include <vector>

#include "usnc/gf.hpp"

namespace usnc::netcode {

// Message layout (S_1, ..., S_{T+1}) over the field, with sum(k) = m*n.
// S_{T+1} is supplementary randomness and may have length zero.
struct Scenario {
    gf::FieldSpecPtr field;
    uint32_t m = 0;  // symbols per packet
    uint32_t n = 0;  // source outgoing links
    uint32_t T = 0;  // number of secret messages
    std::vector<uint32_t> k;  // T+1 block lengths

    static Scenario make(gf::FieldSpecPtr field, uint32_t m, uint32_t n, uint32_t T,
                         std::vector<uint32_t> k);

    uint32_t mn() const { return m * n; }
    uint32_t block_offset(uint32_t index_1based) const;
    uint32_t block_len(uint32_t index_1based) const { return k.at(index_1based - 1); }
};

// Subsets of {1..T} as bitmasks: bit i-1 stands for message i.
using SubsetMask = uint32_t;
std::vector<uint32_t> subset_indices(SubsetMask mask);
uint32_t subset_total_len(const Scenario& sc, SubsetMask mask);

// Coordinates of [S_i : i in I] in ascending index order.
std::vector<uint64_t> message_slice(std::span<const uint64_t> s, const Scenario& sc,
                                    SubsetMask mask);

// Invertible mn x mn linear map applied to the concatenated messages.
class Precoder {
public:
    static Precoder make(Scenario sc, gf::Matrix l);  // throws if l is singular

    const Scenario& scenario() const { return sc_; }
    const gf::Matrix& matrix() const { return mat_; }
    const gf::Matrix& inverse() const { return inv_; }

private:
    Precoder(Scenario sc, gf::Matrix mat, gf::Matrix inv);
    Scenario sc_;
    gf::Matrix mat_;
    gf::Matrix inv_;
};

// A wiretap pattern: a full-row-rank mu x n base matrix together with its
// canonical kernel. Two patterns with equal kernels leak identically, so
// the kernel is the class representative.
class EavesdropClass {
public:
    static EavesdropClass from_base(gf::Matrix base);  // requires rank == rows

    const gf::Matrix& base() const { return base_; }
    uint32_t mu() const { return mu_; }
    const gf::Subspace& kernel() const { return kernel_; }

private:
    EavesdropClass(gf::Matrix base, uint32_t mu, gf::Subspace kernel);
    gf::Matrix base_;
    uint32_t mu_;
    gf::Subspace kernel_;
};

struct PacketSet {
    std::vector<std::vector<uint64_t>> packets;  // n packets of m symbols
};

// Kronecker product base (x) I_m under packet-major symbol ordering:
// symbol j of packet i is coordinate (i-1)*m + j.
gf::Matrix expand_eavesdrop(const EavesdropClass& cls, uint32_t m);

PacketSet encode(const Precoder& pre, std::span<const uint64_t> s);
std::vector<uint64_t> decode(const Precoder& pre, const PacketSet& ps);

// Eve's view: (base (x) I_m) * l * s^t, a vector of m*mu symbols.
std::vector<uint64_t> observe(const EavesdropClass& cls, const Precoder& pre,
                              std::span<const uint64_t> s);

// One representative per kernel class; count is the Gaussian binomial
// [n choose n-mu]_q. Guarded at desk scale.
std::vector<EavesdropClass> enumerate_wiretap_classes(const gf::FieldSpecPtr& field,
                                                      uint32_t n, uint32_t mu);

}  // namespace usnc::netcode
