#include <doctest.h>

#include <random>

#include "usnc/netcode.hpp"
#include "usnc/numeric.hpp"

using namespace usnc;
using namespace usnc::netcode;

namespace {

Scenario tiny_scenario() {
    return Scenario::make(gf::FieldSpec::make(2, 1), 1, 2, 2, {1, 1, 0});
}

Precoder precoder_of(const Scenario& sc,
                     const std::vector<std::vector<uint64_t>>& rows) {
    return Precoder::make(sc, gf::Matrix::from_rows(sc.field, rows));
}

}  // namespace

TEST_CASE("scenario validation") {
    auto f = gf::FieldSpec::make(2, 1);
    CHECK_THROWS_AS((void)Scenario::make(f, 1, 2, 2, {1, 1, 1}), UsageError);
    CHECK_THROWS_AS((void)Scenario::make(f, 1, 2, 2, {1, 1}), UsageError);
    const Scenario sc = Scenario::make(f, 2, 3, 1, {4, 2});
    CHECK(sc.mn() == 6);
    CHECK(sc.block_offset(2) == 4);
}

TEST_CASE("message_slice picks blocks in ascending order") {
    auto f = gf::FieldSpec::make(5, 1);
    const Scenario sc = Scenario::make(f, 1, 4, 3, {2, 1, 1, 0});
    const std::vector<uint64_t> s{1, 2, 3, 4};
    CHECK(message_slice(s, sc, 0b010) == std::vector<uint64_t>{3});
    CHECK(message_slice(s, sc, 0b011) == std::vector<uint64_t>{1, 2, 3});
    CHECK(message_slice(s, sc, 0b111) == std::vector<uint64_t>{1, 2, 3, 4});
    CHECK_THROWS_AS((void)message_slice(s, sc, 0), UsageError);
    CHECK_THROWS_AS((void)message_slice(s, sc, 0b1000), UsageError);
}

TEST_CASE("expand_eavesdrop is the Kronecker product with I_m") {
    auto f = gf::FieldSpec::make(2, 1);
    const auto cls =
        EavesdropClass::from_base(gf::Matrix::from_rows(f, {{1, 0}}));
    const gf::Matrix big = expand_eavesdrop(cls, 2);
    CHECK(big == gf::Matrix::from_rows(
                     f, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
    CHECK(gf::mat_rank(big) == 2);  // m * mu

    const auto empty = EavesdropClass::from_base(gf::Matrix(f, 0, 2));
    CHECK(expand_eavesdrop(empty, 3).rows() == 0);
    CHECK(expand_eavesdrop(empty, 3).cols() == 6);

    const auto full = EavesdropClass::from_base(gf::Matrix::identity(f, 2));
    CHECK(expand_eavesdrop(full, 3) == gf::Matrix::identity(f, 6));
}

TEST_CASE("encode splits l*s packet-major; decode inverts") {
    const Scenario sc = tiny_scenario();
    const Precoder id = precoder_of(sc, {{1, 0}, {0, 1}});
    const std::vector<uint64_t> s{1, 0};
    const PacketSet raw = encode(id, s);
    CHECK(raw.packets == std::vector<std::vector<uint64_t>>{{1}, {0}});

    const Precoder pre = precoder_of(sc, {{1, 1}, {0, 1}});
    const PacketSet coded = encode(pre, s);
    CHECK(coded.packets == std::vector<std::vector<uint64_t>>{{1}, {0}});
    CHECK(decode(pre, coded) == s);
}

TEST_CASE("encode/decode round-trip over random precoders") {
    std::mt19937_64 rng(5150);
    for (uint32_t q : {2, 3, 4}) {
        auto f = q == 4 ? gf::FieldSpec::make(2, 2) : gf::FieldSpec::make(q, 1);
        const Scenario sc = Scenario::make(f, 2, 3, 1, {6, 0});
        for (int trial = 0; trial < 100; ++trial) {
            const Precoder pre =
                Precoder::make(sc, gf::sample_invertible(f, sc.mn(), rng));
            std::vector<uint64_t> s(sc.mn());
            for (auto& x : s) x = uniform_below(rng, f->q());
            CHECK(decode(pre, encode(pre, s)) == s);
        }
    }
}

TEST_CASE("observe applies the expanded wiretap matrix to l*s") {
    const Scenario sc = tiny_scenario();
    const Precoder pre = precoder_of(sc, {{1, 1}, {0, 1}});
    const auto cls =
        EavesdropClass::from_base(gf::Matrix::from_rows(sc.field, {{1, 0}}));
    const std::vector<uint64_t> s{1, 1};
    CHECK(observe(cls, pre, s) == std::vector<uint64_t>{0});

    const auto empty = EavesdropClass::from_base(gf::Matrix(sc.field, 0, 2));
    CHECK(observe(empty, pre, s).empty());

    const auto full = EavesdropClass::from_base(gf::Matrix::identity(sc.field, 2));
    const Precoder id = precoder_of(sc, {{1, 0}, {0, 1}});
    CHECK(observe(full, id, s) == std::vector<uint64_t>{1, 1});
}

TEST_CASE("observation depends on s only through ker(B) cosets of l*s") {
    std::mt19937_64 rng(77);
    auto f = gf::FieldSpec::make(2, 1);
    const Scenario sc = Scenario::make(f, 1, 3, 1, {3, 0});
    for (const auto& cls : enumerate_wiretap_classes(f, 3, 1)) {
        for (int trial = 0; trial < 20; ++trial) {
            const Precoder pre = Precoder::make(sc, gf::sample_invertible(f, 3, rng));
            std::vector<uint64_t> s1(3), s2(3);
            for (auto& x : s1) x = uniform_below(rng, 2);
            // s2 = s1 + l^{-1} kernel vector, so l(s1-s2) lies in ker(B)
            if (cls.kernel().dim() == 0) continue;
            const auto kv = cls.kernel().basis().row(0);
            const auto shift = pre.inverse().mul_vec(kv);
            for (size_t i = 0; i < 3; ++i) s2[i] = f->add(s1[i], shift[i]);
            CHECK(observe(cls, pre, s1) == observe(cls, pre, s2));
        }
    }
}

TEST_CASE("wiretap class counts match the Grassmannian") {
    auto f2 = gf::FieldSpec::make(2, 1);
    CHECK(enumerate_wiretap_classes(f2, 2, 1).size() == 3);
    CHECK(enumerate_wiretap_classes(f2, 3, 1).size() == 7);
    CHECK(enumerate_wiretap_classes(f2, 3, 3).size() == 1);
    CHECK(enumerate_wiretap_classes(f2, 3, 0).size() == 1);

    for (uint64_t q : {2, 3}) {
        auto f = gf::FieldSpec::make(static_cast<uint32_t>(q), 1);
        for (uint32_t n = 1; n <= 4; ++n)
            for (uint32_t mu = 0; mu <= n; ++mu)
                CHECK(BigInt(enumerate_wiretap_classes(f, n, mu).size()) ==
                      gaussian_binomial(q, n, n - mu));
    }
}

TEST_CASE("class representatives have the requested kernel and full rank") {
    for (uint64_t q : {2, 3}) {
        auto f = gf::FieldSpec::make(static_cast<uint32_t>(q), 1);
        for (uint32_t mu = 0; mu <= 3; ++mu)
            for (const auto& cls : enumerate_wiretap_classes(f, 3, mu)) {
                CHECK(cls.mu() == mu);
                CHECK(gf::mat_rank(cls.base()) == mu);
                CHECK(gf::mat_kernel(cls.base()) == cls.kernel());
            }
    }
}

TEST_CASE("equal kernels leak the same: ker(B1 l) == ker(B2 l) for all l") {
    auto f = gf::FieldSpec::make(2, 1);
    // two different full-rank bases with the same kernel span{(1,1)}
    const auto b1 = gf::Matrix::from_rows(f, {{1, 1}});
    const auto b2 = gf::Matrix::from_rows(f, {{1, 1}});  // over GF(2) only scaling
    const auto c1 = EavesdropClass::from_base(b1);
    for (const auto& l : gf::enumerate_invertible(f, 2)) {
        CHECK(gf::mat_kernel(b1.mul(l)) == gf::mat_kernel(b2.mul(l)));
    }
    // over GF(3) the representatives genuinely differ
    auto f3 = gf::FieldSpec::make(3, 1);
    const auto d1 = gf::Matrix::from_rows(f3, {{1, 2}});
    const auto d2 = gf::Matrix::from_rows(f3, {{2, 1}});  // scaled by 2
    REQUIRE(gf::mat_kernel(d1) == gf::mat_kernel(d2));
    for (const auto& l : gf::enumerate_invertible(f3, 2))
        CHECK(gf::mat_kernel(d1.mul(l)) == gf::mat_kernel(d2.mul(l)));
    CHECK(c1.mu() == 1);
}

TEST_CASE("precoder construction rejects singular and mis-sized matrices") {
    const Scenario sc = tiny_scenario();
    CHECK_THROWS_AS(
        (void)Precoder::make(sc, gf::Matrix::from_rows(sc.field, {{1, 1}, {1, 1}})),
        SingularMatrixError);
    CHECK_THROWS_AS(
        (void)Precoder::make(sc, gf::Matrix::identity(sc.field, 3)),
        DimensionError);
}
