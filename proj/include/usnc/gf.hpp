#pragma once

// Exact arithmetic and linear algebra over finite fields GF(p^e), with
// sampling and exhaustive enumeration of invertible matrices and subspaces
// at desk scale. No floating point is used anywhere in this module.

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "usnc/errors.hpp"

namespace usnc::gf {

class FieldSpec;
using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

// Immutable description of GF(p^e) together with element arithmetic.
// An element is stored as an integer code: the base-p packing of its
// canonical degree-<e polynomial representative, so 0 and 1 are the
// additive and multiplicative identities for every spec.
class FieldSpec {
public:
    // reduction_poly is the coefficient vector (constant term first, monic,
    // length e+1) of an irreducible degree-e polynomial over GF(p).
    // Defaults: x for e=1, x^8+x^4+x^3+x+1 for GF(2^8), otherwise the
    // lexicographically smallest monic irreducible (smallest packed code).
    static FieldSpecPtr make(uint32_t p, uint32_t e,
                             std::vector<uint64_t> reduction_poly = {});

    // Accepts "GF(p)", "GF(p^e)" and "GF(p^e)/poly=<hex>", where <hex> is
    // the base-p packed coefficient vector written in hexadecimal.
    static FieldSpecPtr parse(const std::string& text);

    uint32_t p() const { return p_; }
    uint32_t e() const { return e_; }
    uint64_t q() const { return q_; }
    const std::vector<uint64_t>& reduction_poly() const { return poly_; }

    std::string to_string() const;
    bool same(const FieldSpec& other) const;

    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;  // throws DomainError on 0
    uint64_t pow(uint64_t a, uint64_t k) const;

private:
    FieldSpec() = default;

    uint32_t p_ = 0;
    uint32_t e_ = 0;
    uint64_t q_ = 0;
    std::vector<uint64_t> poly_;

    bool tables_ = false;
    std::vector<uint32_t> exp_;  // exp_[i] = g^i for a generator g
    std::vector<uint32_t> log_;  // log_[code] for code != 0

    uint64_t mul_slow(uint64_t a, uint64_t b) const;
    void build_tables();
};

// Polynomial utilities over an arbitrary FieldSpec (coefficient codes,
// constant term first). Used for reduction-polynomial validation and the
// Frobenius subgroup construction.
bool poly_irreducible(const FieldSpec& field, std::span<const uint64_t> poly);
std::vector<uint64_t> find_irreducible_poly(const FieldSpec& field, uint32_t degree);

class FieldElement {
public:
    FieldElement(FieldSpecPtr spec, uint64_t code);

    uint64_t code() const { return code_; }
    const FieldSpecPtr& spec() const { return spec_; }
    bool is_zero() const { return code_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement inverse() const;
    bool operator==(const FieldElement& o) const;

private:
    FieldSpecPtr spec_;
    uint64_t code_;
};

// Dense row-major matrix of element codes sharing one FieldSpec.
// Zero-row and zero-column shapes are valid (empty observations).
class Matrix {
public:
    Matrix(FieldSpecPtr spec, size_t rows, size_t cols);
    static Matrix identity(FieldSpecPtr spec, size_t n);
    static Matrix from_rows(FieldSpecPtr spec,
                            const std::vector<std::vector<uint64_t>>& rows);
    static Matrix from_codes(FieldSpecPtr spec, size_t rows, size_t cols,
                             std::span<const uint64_t> codes);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const FieldSpecPtr& spec() const { return spec_; }
    const std::vector<uint64_t>& codes() const { return codes_; }

    uint64_t at(size_t r, size_t c) const;
    void set(size_t r, size_t c, uint64_t code);

    Matrix mul(const Matrix& rhs) const;
    std::vector<uint64_t> mul_vec(std::span<const uint64_t> v) const;
    Matrix add(const Matrix& rhs) const;
    Matrix transpose() const;
    std::vector<uint64_t> row(size_t r) const;

    bool operator==(const Matrix& o) const;

private:
    FieldSpecPtr spec_;
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<uint64_t> codes_;

    void check_same_spec(const Matrix& o) const;
};

struct RrefResult {
    Matrix reduced;
    size_t rank;
    std::vector<size_t> pivots;
};

RrefResult mat_rref(const Matrix& m);
size_t mat_rank(const Matrix& m);

// A subspace of F_q^n held by its unique reduced-row-echelon basis, which
// makes equality testing canonical.
class Subspace {
public:
    static Subspace from_span_rows(const Matrix& rows);

    size_t ambient() const { return ambient_; }
    size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }

    bool contains(std::span<const uint64_t> v) const;
    bool operator==(const Subspace& o) const;

private:
    Subspace(size_t ambient, Matrix basis);
    size_t ambient_;
    Matrix basis_;  // rref, rows linearly independent

    friend Subspace mat_kernel(const Matrix& m);
    friend std::vector<Subspace> enumerate_subspaces(const FieldSpecPtr&,
                                                     size_t, size_t);
};

// Right null space { x : Mx = 0 }.
Subspace mat_kernel(const Matrix& m);

// Throws DimensionError if not square, SingularMatrixError if rank-deficient.
Matrix mat_inverse(const Matrix& m);

// Uniform over GL(dim, q) by rejection from uniform matrices; the expected
// acceptance rate is prod_{i=1..dim} (1 - q^-i), at least 0.288 for q = 2.
Matrix sample_invertible(const FieldSpecPtr& spec, size_t dim,
                         std::mt19937_64& rng);

// Exhaustive GL(dim, q); guarded by q^(dim^2) <= 2^24.
std::vector<Matrix> enumerate_invertible(const FieldSpecPtr& spec, size_t dim);

// All dim-dimensional subspaces of F_q^ambient, one canonical echelon
// representative each; guarded by the Gaussian binomial count <= 2^20.
std::vector<Subspace> enumerate_subspaces(const FieldSpecPtr& spec,
                                          size_t ambient, size_t dim);

}  // namespace usnc::gf
