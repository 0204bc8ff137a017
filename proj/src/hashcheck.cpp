#include "usnc/hashcheck.hpp"

#include <algorithm>
#include <set>

namespace usnc::hashcheck {

namespace {

constexpr uint64_t kMaxPairWork = uint64_t{1} << 26;

uint64_t space_size(const gf::FieldSpecPtr& spec, uint32_t mn) {
    const BigInt s = bigint_pow(spec->q(), mn);
    if (s > (uint64_t{1} << 20)) throw GuardExceededError("q^mn too large");
    return static_cast<uint64_t>(s);
}

std::vector<uint64_t> unpack(const gf::FieldSpecPtr& spec, uint64_t code, uint32_t mn) {
    std::vector<uint64_t> v(mn);
    for (uint32_t i = 0; i < mn; ++i) {
        v[i] = code % spec->q();
        code /= spec->q();
    }
    return v;
}

uint64_t pack(const gf::FieldSpecPtr& spec, std::span<const uint64_t> v) {
    uint64_t code = 0;
    for (size_t i = v.size(); i > 0; --i) code = code * spec->q() + v[i - 1];
    return code;
}

}  // namespace

uint64_t HashFamily::size() const {
    return kind == FamilyKind::ExplicitList ? functions.size() : inner.size();
}

uint64_t HashFamily::codomain_size() const {
    if (outer) return static_cast<uint64_t>(bigint_pow(spec->q(), gf::mat_rank(*outer)));
    if (kind == FamilyKind::ExplicitList) return declared_codomain;
    return static_cast<uint64_t>(bigint_pow(spec->q(), mn));
}

std::vector<uint64_t> HashFamily::eval(size_t member, std::span<const uint64_t> x) const {
    const gf::Matrix& f =
        kind == FamilyKind::ExplicitList ? functions.at(member) : inner.at(member);
    std::vector<uint64_t> y = f.mul_vec(x);
    if (outer) y = outer->mul_vec(y);
    return y;
}

HashFamily full_gl_family(const gf::FieldSpecPtr& spec, uint32_t mn,
                          std::optional<gf::Matrix> outer) {
    HashFamily fam;
    fam.spec = spec;
    fam.mn = mn;
    fam.kind = FamilyKind::FullGL;
    fam.outer = std::move(outer);
    fam.inner = gf::enumerate_invertible(spec, mn);
    return fam;
}

HashFamily frobenius_family(const gf::FieldSpecPtr& spec, uint32_t mn,
                            std::optional<gf::Matrix> outer) {
    if (mn < 1) throw UsageError("frobenius_family needs mn >= 1");
    const std::vector<uint64_t> poly = gf::find_irreducible_poly(*spec, mn);

    // Companion matrix of the irreducible polynomial: multiplication by the
    // residue class of x in F_q[x]/(poly).
    gf::Matrix companion(spec, mn, mn);
    for (uint32_t i = 1; i < mn; ++i) companion.set(i, i - 1, 1);
    for (uint32_t i = 0; i < mn; ++i) companion.set(i, mn - 1, spec->neg(poly[i]));

    std::vector<gf::Matrix> powers;
    powers.push_back(gf::Matrix::identity(spec, mn));
    for (uint32_t i = 1; i < mn; ++i) powers.push_back(powers.back().mul(companion));

    const uint64_t total = space_size(spec, mn);
    HashFamily fam;
    fam.spec = spec;
    fam.mn = mn;
    fam.kind = FamilyKind::Frobenius;
    fam.outer = std::move(outer);
    for (uint64_t code = 1; code < total; ++code) {
        // Multiplication by the element with coordinates code: sum of
        // coordinate-scaled powers of the companion matrix.
        const std::vector<uint64_t> coords = unpack(spec, code, mn);
        gf::Matrix member(spec, mn, mn);
        for (uint32_t j = 0; j < mn; ++j) {
            if (coords[j] == 0) continue;
            for (size_t r = 0; r < mn; ++r)
                for (size_t c = 0; c < mn; ++c)
                    member.set(r, c,
                               spec->add(member.at(r, c),
                                         spec->mul(coords[j], powers[j].at(r, c))));
        }
        fam.inner.push_back(std::move(member));
    }
    return fam;
}

HashFamily explicit_family(const gf::FieldSpecPtr& spec, uint32_t mn,
                           std::vector<gf::Matrix> functions,
                           uint64_t declared_codomain) {
    if (functions.empty()) throw UsageError("hash family must be nonempty");
    if (declared_codomain < 1) throw UsageError("codomain must be nonempty");
    HashFamily fam;
    fam.spec = spec;
    fam.mn = mn;
    fam.kind = FamilyKind::ExplicitList;
    fam.functions = std::move(functions);
    fam.declared_codomain = declared_codomain;
    return fam;
}

TwoUniversalReport verify_two_universal(const HashFamily& fam) {
    const uint64_t domain = space_size(fam.spec, fam.mn);
    const uint64_t members = fam.size();
    if (members * domain * domain > kMaxPairWork)
        throw GuardExceededError("two-universal pair check exceeds guard");

    // Tabulate every member once; collisions are then table lookups.
    std::vector<std::vector<uint64_t>> value(members, std::vector<uint64_t>(domain));
    for (uint64_t m = 0; m < members; ++m)
        for (uint64_t x = 0; x < domain; ++x)
            value[m][x] = pack(fam.spec, fam.eval(m, unpack(fam.spec, x, fam.mn)));

    TwoUniversalReport report;
    report.threshold = Rational(1, BigInt(fam.codomain_size()));
    report.max_collision = 0;
    for (uint64_t x1 = 0; x1 < domain; ++x1)
        for (uint64_t x2 = x1 + 1; x2 < domain; ++x2) {
            uint64_t hits = 0;
            for (uint64_t m = 0; m < members; ++m)
                if (value[m][x1] == value[m][x2]) ++hits;
            const Rational p{BigInt(hits), BigInt(members)};
            if (p > report.max_collision) report.max_collision = p;
            ++report.pairs_checked;
        }
    report.pass = report.max_collision <= report.threshold;
    return report;
}

OrbitReport orbit_collision_prob(FamilyKind kind, const gf::FieldSpecPtr& spec,
                                 uint32_t mn, const gf::Matrix& outer) {
    if (kind == FamilyKind::ExplicitList)
        throw UsageError("orbit criterion needs a group-generated family");
    const uint64_t domain = space_size(spec, mn);
    const size_t rank = gf::mat_rank(outer);
    const gf::Subspace kernel = gf::mat_kernel(outer);
    const BigInt image = bigint_pow(spec->q(), rank);

    OrbitReport report;
    report.threshold = Rational(1, image);

    // Both groups act transitively on nonzero vectors, so there is a single
    // orbit with the closed forms below.
    OrbitProfile profile;
    profile.representative = unpack(spec, 1, mn);
    profile.orbit_size = BigInt(domain) - 1;
    profile.kernel_hits = BigInt(domain) / image - 1;
    profile.ratio = Rational(profile.kernel_hits, profile.orbit_size);

    // Confirm the closed forms against actual group enumeration when small.
    const BigInt gl_space = bigint_pow(spec->q(), uint64_t{mn} * mn);
    const bool enumerable =
        kind == FamilyKind::Frobenius || gl_space <= (uint64_t{1} << 24);
    if (enumerable) {
        std::vector<gf::Matrix> group;
        if (kind == FamilyKind::FullGL) {
            group = gf::enumerate_invertible(spec, mn);
        } else {
            group = frobenius_family(spec, mn).inner;
        }
        std::set<uint64_t> orbit;
        const std::vector<uint64_t> v = profile.representative;
        for (const gf::Matrix& g : group) orbit.insert(pack(spec, g.mul_vec(v)));
        BigInt hits = 0;
        for (uint64_t code : orbit) {
            const std::vector<uint64_t> w = unpack(spec, code, mn);
            if (kernel.contains(w)) ++hits;
        }
        if (BigInt(orbit.size()) != profile.orbit_size || hits != profile.kernel_hits)
            throw Error("orbit closed form disagrees with enumeration");
        report.closed_form_verified = true;
    }

    report.profiles.push_back(std::move(profile));
    report.pass = report.profiles[0].ratio <= report.threshold;
    return report;
}

}  // namespace usnc::hashcheck
