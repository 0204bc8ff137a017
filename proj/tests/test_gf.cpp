#include <doctest.h>

#include <random>
#include <set>

#include "usnc/gf.hpp"
#include "usnc/numeric.hpp"

using namespace usnc;
using namespace usnc::gf;

namespace {

FieldSpecPtr gf2() { return FieldSpec::make(2, 1); }
FieldSpecPtr gf4() { return FieldSpec::make(2, 2, {1, 1, 1}); }  // x^2+x+1

Matrix mat(const FieldSpecPtr& f, const std::vector<std::vector<uint64_t>>& rows) {
    return Matrix::from_rows(f, rows);
}

}  // namespace

TEST_CASE("field axioms hold exhaustively for small fields") {
    const std::vector<std::pair<uint32_t, uint32_t>> fields = {
        {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4}};
    for (auto [p, e] : fields) {
        auto f = FieldSpec::make(p, e);
        const uint64_t q = f->q();
        CAPTURE(p);
        CAPTURE(e);
        for (uint64_t a = 0; a < q; ++a) {
            CHECK(f->add(a, 0) == a);
            CHECK(f->mul(a, 1) == a);
            CHECK(f->mul(a, 0) == 0);
            CHECK(f->add(a, f->neg(a)) == 0);
            if (a != 0) CHECK(f->mul(a, f->inv(a)) == 1);
            for (uint64_t b = 0; b < q; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                for (uint64_t c = 0; c < q; ++c) {
                    CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
                    CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                    CHECK(f->mul(a, f->add(b, c)) ==
                          f->add(f->mul(a, b), f->mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("GF(4) with x^2+x+1: x*x = x+1 and inv(x) = x+1") {
    auto f = gf4();
    CHECK(f->mul(2, 2) == 3);  // x * x reduces to x + 1
    CHECK(f->inv(2) == 3);
    CHECK(f->inv(1) == 1);
    CHECK(f->mul(2, 3) == 1);
    CHECK_THROWS_AS((void)f->inv(0), DomainError);
}

TEST_CASE("GF(2) multiplicative identities") {
    auto f = gf2();
    CHECK(f->mul(1, 1) == 1);
    CHECK(f->inv(1) == 1);
}

TEST_CASE("element operations reject mismatched specs") {
    FieldElement a(gf2(), 1);
    FieldElement b(gf4(), 1);
    CHECK_THROWS_AS((void)(a * b), SpecMismatchError);
    CHECK((FieldElement(gf4(), 2) * FieldElement(gf4(), 2)) ==
          FieldElement(gf4(), 3));
}

TEST_CASE("field spec serialization round-trips") {
    auto f256 = FieldSpec::make(2, 8);
    CHECK(f256->to_string() == "GF(2^8)/poly=11b");
    auto parsed = FieldSpec::parse("GF(2^8)/poly=11b");
    CHECK(parsed->same(*f256));
    CHECK(FieldSpec::parse("GF(2)")->same(*gf2()));
    CHECK(FieldSpec::parse("GF(2^2)/poly=7")->same(*gf4()));
    CHECK_THROWS_AS((void)FieldSpec::parse("GF(4)"), UsageError);  // 4 is not prime
    CHECK_THROWS_AS((void)FieldSpec::make(2, 2, {1, 0, 1}), UsageError);  // (x+1)^2
}

TEST_CASE("matrix rank on hand-reduced cases") {
    auto f = gf2();
    CHECK(mat_rank(mat(f, {{0, 0}, {0, 0}})) == 0);
    CHECK(mat_rank(Matrix::identity(f, 3)) == 3);
    CHECK(mat_rank(mat(f, {{1, 0}, {1, 0}})) == 1);
}

TEST_CASE("kernel basis cases") {
    auto f = gf2();
    CHECK(mat_kernel(Matrix::identity(f, 2)).dim() == 0);
    CHECK(mat_kernel(Matrix(f, 2, 3)).dim() == 3);  // zero matrix, full kernel

    const Subspace k = mat_kernel(mat(f, {{1, 0}}));
    CHECK(k.dim() == 1);
    const std::vector<uint64_t> v{0, 1};
    CHECK(k.contains(v));
    CHECK(k.basis() == mat(f, {{0, 1}}));
}

TEST_CASE("matrix inverse") {
    auto f = gf2();
    CHECK(mat_inverse(Matrix::identity(f, 3)) == Matrix::identity(f, 3));
    const Matrix m = mat(f, {{1, 1}, {0, 1}});
    CHECK(mat_inverse(m) == m);  // self-inverse
    CHECK(mat_inverse(m).mul(m) == Matrix::identity(f, 2));
    CHECK_THROWS_AS((void)mat_inverse(mat(f, {{1, 1}, {1, 1}})), SingularMatrixError);
    CHECK_THROWS_AS((void)mat_inverse(mat(f, {{1, 0, 0}, {0, 1, 0}})), DimensionError);
}

TEST_CASE("inverse and rank-nullity over random matrices") {
    std::mt19937_64 rng(12345);
    for (uint64_t q_case : {2, 3, 4, 256}) {
        FieldSpecPtr f;
        if (q_case == 2) f = gf2();
        if (q_case == 3) f = FieldSpec::make(3, 1);
        if (q_case == 4) f = gf4();
        if (q_case == 256) f = FieldSpec::make(2, 8);
        for (int trial = 0; trial < 250; ++trial) {
            const size_t dim = 1 + uniform_below(rng, 8);
            const Matrix m = sample_invertible(f, dim, rng);
            CHECK(mat_inverse(m).mul(m) == Matrix::identity(f, dim));
            CHECK(mat_rank(m) == dim);

            Matrix r(f, 1 + uniform_below(rng, 5), 1 + uniform_below(rng, 5));
            for (size_t i = 0; i < r.rows(); ++i)
                for (size_t j = 0; j < r.cols(); ++j)
                    r.set(i, j, uniform_below(rng, f->q()));
            CHECK(mat_kernel(r).dim() + mat_rank(r) == r.cols());
        }
    }
}

TEST_CASE("kernel vectors are annihilated") {
    std::mt19937_64 rng(99);
    auto f = FieldSpec::make(3, 1);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix m(f, 2 + uniform_below(rng, 3), 2 + uniform_below(rng, 4));
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j) m.set(i, j, uniform_below(rng, 3));
        const Subspace k = mat_kernel(m);
        for (size_t r = 0; r < k.dim(); ++r) {
            const auto v = k.basis().row(r);
            for (uint64_t y : m.mul_vec(v)) CHECK(y == 0);
        }
    }
}

TEST_CASE("GL(1,2) sampling is the single element") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
        const Matrix m = sample_invertible(gf2(), 1, rng);
        CHECK(m == Matrix::identity(gf2(), 1));
    }
}

TEST_CASE("GL(2,2) sampling is uniform within 3 sigma over 60000 draws") {
    auto f = gf2();
    const auto all = enumerate_invertible(f, 2);
    REQUIRE(all.size() == 6);
    std::map<std::vector<uint64_t>, int> counts;
    std::mt19937_64 rng(2024);
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) counts[sample_invertible(f, 2, rng).codes()]++;
    CHECK(counts.size() == 6);
    // sigma = sqrt(N p (1-p)) with p = 1/6
    const double sigma = std::sqrt(draws * (1.0 / 6) * (5.0 / 6));
    for (const auto& [codes, count] : counts)
        CHECK(std::abs(count - draws / 6.0) <= 3 * sigma);
}

TEST_CASE("enumerate_invertible counts match the GL order formula") {
    CHECK(enumerate_invertible(gf2(), 2).size() == 6);    // (4-1)(4-2)
    CHECK(enumerate_invertible(gf2(), 3).size() == 168);  // (8-1)(8-2)(8-4)
    CHECK(enumerate_invertible(FieldSpec::make(3, 1), 1).size() == 2);
    CHECK(enumerate_invertible(FieldSpec::make(3, 1), 2).size() == 48);

    for (uint64_t q : {2, 3}) {
        auto f = FieldSpec::make(static_cast<uint32_t>(q), 1);
        for (size_t d = 1; d <= (q == 2 ? 3u : 2u); ++d) {
            BigInt expected = 1;
            for (size_t i = 0; i < d; ++i)
                expected *= bigint_pow(q, d) - bigint_pow(q, i);
            CHECK(BigInt(enumerate_invertible(f, d).size()) == expected);
        }
    }
}

TEST_CASE("subspace enumeration counts and canonical representatives") {
    CHECK(enumerate_subspaces(gf2(), 2, 1).size() == 3);
    CHECK(enumerate_subspaces(gf2(), 3, 2).size() == 7);
    CHECK(enumerate_subspaces(gf2(), 3, 0).size() == 1);
    CHECK(enumerate_subspaces(FieldSpec::make(3, 1), 3, 0).size() == 1);

    for (uint64_t q : {2, 3}) {
        auto f = FieldSpec::make(static_cast<uint32_t>(q), 1);
        for (size_t n = 1; n <= 4; ++n)
            for (size_t d = 0; d <= n; ++d) {
                const auto subs = enumerate_subspaces(f, n, d);
                CHECK(BigInt(subs.size()) ==
                      gaussian_binomial(q, static_cast<uint32_t>(n),
                                        static_cast<uint32_t>(d)));
                // each exactly once, canonical: rebuilding from the span
                // reproduces the basis
                std::set<std::vector<uint64_t>> seen;
                for (const auto& s : subs) {
                    CHECK(Subspace::from_span_rows(s.basis()) == s);
                    CHECK(seen.insert(s.basis().codes()).second);
                }
            }
    }
}

TEST_CASE("enumeration guards reject oversized requests") {
    CHECK_THROWS_AS((void)enumerate_invertible(FieldSpec::make(2, 8), 4),
                    GuardExceededError);
    CHECK_THROWS_AS((void)enumerate_subspaces(FieldSpec::make(2, 8), 12, 6),
                    GuardExceededError);
}

TEST_CASE("irreducible polynomial search") {
    auto f2 = gf2();
    CHECK(find_irreducible_poly(*f2, 2) == std::vector<uint64_t>{1, 1, 1});
    CHECK(find_irreducible_poly(*f2, 4) == std::vector<uint64_t>{1, 1, 0, 0, 1});
    auto f4 = gf4();
    const auto p = find_irreducible_poly(*f4, 2);
    CHECK(p.size() == 3);
    CHECK(poly_irreducible(*f4, p));
}
