#pragma once

// Two-universality verification machinery: the direct collision-counting
// check, the orbit-based criterion for group-generated families, and the
// field-multiplication (Frobenius) subgroup family.

#include <cstdint>
#include <optional>
#include <vector>

#include "usnc/gf.hpp"
#include "usnc/numeric.hpp"

namespace usnc::hashcheck {

enum class FamilyKind { FullGL, Frobenius, ExplicitList };

// A family of linear hash functions on F_q^mn, optionally composed with a
// fixed outer matrix B. Members are f = B * inner for inner in the group,
// or the explicit function list itself.
struct HashFamily {
    gf::FieldSpecPtr spec;
    uint32_t mn = 0;
    FamilyKind kind = FamilyKind::ExplicitList;
    std::optional<gf::Matrix> outer;    // B; maps F_q^mn onto im(B)
    std::vector<gf::Matrix> inner;      // group elements (GL or Frobenius)
    std::vector<gf::Matrix> functions;  // explicit list when no group
    uint64_t declared_codomain = 0;     // |S_2| for explicit lists

    uint64_t size() const;
    uint64_t codomain_size() const;  // q^rank(outer), or declared/full space
    std::vector<uint64_t> eval(size_t member, std::span<const uint64_t> x) const;
};

// The full bijective group composed with B; GL is enumerated (guarded).
HashFamily full_gl_family(const gf::FieldSpecPtr& spec, uint32_t mn,
                          std::optional<gf::Matrix> outer = {});

// The q^mn - 1 linear maps given by multiplication in F_{q^mn}, built over
// the lexicographically smallest monic irreducible polynomial of degree mn.
// A commutative subgroup of GL that acts transitively on nonzero vectors.
HashFamily frobenius_family(const gf::FieldSpecPtr& spec, uint32_t mn,
                            std::optional<gf::Matrix> outer = {});

HashFamily explicit_family(const gf::FieldSpecPtr& spec, uint32_t mn,
                           std::vector<gf::Matrix> functions,
                           uint64_t declared_codomain);

struct TwoUniversalReport {
    Rational max_collision;
    Rational threshold;  // 1 / |codomain|
    bool pass = false;
    uint64_t pairs_checked = 0;
};

// Exhaustive Definition-style check: max over x1 != x2 of Pr[f(x1) = f(x2)]
// with exact rationals, compared against 1/|codomain|.
TwoUniversalReport verify_two_universal(const HashFamily& fam);

struct OrbitProfile {
    std::vector<uint64_t> representative;
    BigInt orbit_size;
    BigInt kernel_hits;  // |O(v) n ker(B)|
    Rational ratio;
};

struct OrbitReport {
    std::vector<OrbitProfile> profiles;
    Rational threshold;  // 1 / |im(B)|
    bool pass = false;
    bool closed_form_verified = false;  // enumeration confirmed the closed forms
};

// Orbit criterion: the family {B l} is two-universal iff
// |O(v) n ker(B)| / |O(v)| <= 1 / |im(B)| for every nonzero v. For the full
// GL group and the Frobenius subgroup the single orbit is all nonzero
// vectors, giving |O| = q^mn - 1 and |O n ker| = q^mn / |im(B)| - 1; the
// closed forms are asserted against enumeration when the group is small
// enough to enumerate.
OrbitReport orbit_collision_prob(FamilyKind kind, const gf::FieldSpecPtr& spec,
                                 uint32_t mn, const gf::Matrix& outer);

}  // namespace usnc::hashcheck
