#include "usnc/gf.hpp"

#include <algorithm>
#include <sstream>

#include "usnc/numeric.hpp"

namespace usnc::gf {

namespace {

constexpr uint64_t kMaxFieldSize = uint64_t{1} << 32;
constexpr uint64_t kTableLimit = uint64_t{1} << 16;
constexpr uint64_t kMaxEnumInvertible = uint64_t{1} << 24;
constexpr uint64_t kMaxEnumSubspaces = uint64_t{1} << 20;

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using Poly = std::vector<uint64_t>;  // coefficient codes, constant term first

int poly_deg(const Poly& a) {
    for (size_t i = a.size(); i > 0; --i)
        if (a[i - 1] != 0) return static_cast<int>(i - 1);
    return -1;
}

Poly poly_mul(const FieldSpec& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
    return out;
}

// Remainder of a modulo the monic polynomial m.
Poly poly_mod(const FieldSpec& f, Poly a, const Poly& m) {
    const int dm = poly_deg(m);
    for (int da = poly_deg(a); da >= dm && dm >= 0; da = poly_deg(a)) {
        const uint64_t lead = a[static_cast<size_t>(da)];
        const size_t shift = static_cast<size_t>(da - dm);
        for (int i = 0; i <= dm; ++i) {
            const size_t pos = shift + static_cast<size_t>(i);
            a[pos] = f.sub(a[pos], f.mul(lead, m[static_cast<size_t>(i)]));
        }
    }
    a.resize(dm >= 0 ? static_cast<size_t>(dm) : 0, 0);
    return a;
}

bool poly_is_zero(const Poly& a) { return poly_deg(a) < 0; }

Poly poly_from_code(const FieldSpec& f, uint64_t code, uint32_t len) {
    Poly out(len, 0);
    for (uint32_t i = 0; i < len; ++i) {
        out[i] = code % f.q();
        code /= f.q();
    }
    return out;
}

uint64_t code_from_poly(const FieldSpec& f, const Poly& a) {
    uint64_t code = 0;
    for (size_t i = a.size(); i > 0; --i) code = code * f.q() + a[i - 1];
    return code;
}

}  // namespace

bool poly_irreducible(const FieldSpec& field, std::span<const uint64_t> poly) {
    const Poly p(poly.begin(), poly.end());
    const int d = poly_deg(p);
    if (d < 1) return false;
    if (p[static_cast<size_t>(d)] != 1) throw UsageError("reduction polynomial must be monic");
    if (d == 1) return true;
    // Trial division by every monic polynomial of degree 1..d/2.
    for (int dd = 1; dd <= d / 2; ++dd) {
        const uint64_t count =
            static_cast<uint64_t>(bigint_pow(field.q(), static_cast<uint64_t>(dd)));
        for (uint64_t code = 0; code < count; ++code) {
            Poly divisor = poly_from_code(field, code, static_cast<uint32_t>(dd));
            divisor.push_back(1);  // monic of degree dd
            if (poly_is_zero(poly_mod(field, p, divisor))) return false;
        }
    }
    return true;
}

std::vector<uint64_t> find_irreducible_poly(const FieldSpec& field, uint32_t degree) {
    if (degree == 0) throw UsageError("irreducible polynomial needs degree >= 1");
    const BigInt total = bigint_pow(field.q(), degree);
    if (total > kMaxEnumSubspaces * 64)
        throw GuardExceededError("irreducible polynomial search space too large");
    const uint64_t count = static_cast<uint64_t>(total);
    for (uint64_t code = 0; code < count; ++code) {
        Poly cand = poly_from_code(field, code, degree);
        cand.push_back(1);
        if (poly_irreducible(field, cand)) return cand;
    }
    throw Error("no irreducible polynomial found");  // unreachable for genuine fields
}

FieldSpecPtr FieldSpec::make(uint32_t p, uint32_t e, std::vector<uint64_t> reduction_poly) {
    if (!is_prime(p)) throw UsageError("field characteristic must be prime");
    if (e < 1) throw UsageError("extension degree must be >= 1");
    BigInt q = bigint_pow(p, e);
    if (q > kMaxFieldSize) throw UsageError("field size exceeds 2^32");

    auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
    spec->p_ = p;
    spec->e_ = e;
    spec->q_ = static_cast<uint64_t>(q);

    if (reduction_poly.empty()) {
        if (e == 1) {
            reduction_poly = {0, 1};  // x
        } else if (p == 2 && e == 8) {
            // x^8 + x^4 + x^3 + x + 1 (0x11b)
            reduction_poly = {1, 1, 0, 1, 1, 0, 0, 0, 1};
        } else {
            auto base = FieldSpec::make(p, 1);
            reduction_poly = find_irreducible_poly(*base, e);
        }
    }
    if (reduction_poly.size() != static_cast<size_t>(e) + 1)
        throw UsageError("reduction polynomial must have degree e");
    for (uint64_t c : reduction_poly)
        if (c >= p) throw UsageError("reduction polynomial coefficient out of range");
    if (reduction_poly.back() != 1) throw UsageError("reduction polynomial must be monic");
    if (e > 1) {
        auto base = FieldSpec::make(p, 1);
        if (!poly_irreducible(*base, reduction_poly))
            throw UsageError("reduction polynomial is reducible over GF(p)");
    }
    spec->poly_ = std::move(reduction_poly);

    if (spec->q_ <= kTableLimit) spec->build_tables();
    return spec;
}

FieldSpecPtr FieldSpec::parse(const std::string& text) {
    if (text.size() < 5 || text.substr(0, 3) != "GF(")
        throw UsageError("malformed field spec: " + text);
    const auto close = text.find(')');
    if (close == std::string::npos) throw UsageError("malformed field spec: " + text);
    const std::string inside = text.substr(3, close - 3);

    uint32_t p = 0, e = 1;
    const auto caret = inside.find('^');
    try {
        if (caret == std::string::npos) {
            p = static_cast<uint32_t>(std::stoul(inside));
        } else {
            p = static_cast<uint32_t>(std::stoul(inside.substr(0, caret)));
            e = static_cast<uint32_t>(std::stoul(inside.substr(caret + 1)));
        }
    } catch (const std::exception&) {
        throw UsageError("malformed field spec: " + text);
    }

    std::vector<uint64_t> poly;
    const std::string rest = text.substr(close + 1);
    if (!rest.empty()) {
        if (rest.rfind("/poly=", 0) != 0)
            throw UsageError("malformed field spec: " + text);
        uint64_t packed = 0;
        try {
            packed = std::stoull(rest.substr(6), nullptr, 16);
        } catch (const std::exception&) {
            throw UsageError("malformed field polynomial: " + text);
        }
        for (uint32_t i = 0; i <= e; ++i) {
            poly.push_back(packed % p);
            packed /= p;
        }
        if (packed != 0) throw UsageError("field polynomial degree too high: " + text);
    }
    return make(p, e, std::move(poly));
}

std::string FieldSpec::to_string() const {
    if (e_ == 1) return "GF(" + std::to_string(p_) + ")";
    uint64_t packed = 0;
    for (size_t i = poly_.size(); i > 0; --i) packed = packed * p_ + poly_[i - 1];
    std::ostringstream out;
    out << "GF(" << p_ << "^" << e_ << ")/poly=" << std::hex << packed;
    return out.str();
}

bool FieldSpec::same(const FieldSpec& other) const {
    return p_ == other.p_ && e_ == other.e_ && poly_ == other.poly_;
}

uint64_t FieldSpec::add(uint64_t a, uint64_t b) const {
    if (p_ == 2) return a ^ b;
    uint64_t out = 0, mult = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        out += ((a % p_ + b % p_) % p_) * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return out;
}

uint64_t FieldSpec::sub(uint64_t a, uint64_t b) const {
    if (p_ == 2) return a ^ b;
    uint64_t out = 0, mult = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        out += ((a % p_ + p_ - b % p_) % p_) * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return out;
}

uint64_t FieldSpec::neg(uint64_t a) const { return sub(0, a); }

uint64_t FieldSpec::mul_slow(uint64_t a, uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    // Digit convolution modulo p, then reduction by the field polynomial.
    std::vector<uint64_t> da(e_), db(e_);
    for (uint32_t i = 0; i < e_; ++i) {
        da[i] = a % p_;
        a /= p_;
        db[i] = b % p_;
        b /= p_;
    }
    std::vector<uint64_t> prod(2 * e_ - 1, 0);
    for (uint32_t i = 0; i < e_; ++i) {
        if (da[i] == 0) continue;
        for (uint32_t j = 0; j < e_; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    for (size_t d = prod.size(); d-- > e_;) {
        const uint64_t lead = prod[d];
        if (lead == 0) continue;
        prod[d] = 0;
        // x^d = x^(d-e) * (x^e mod poly); poly is monic.
        for (uint32_t i = 0; i < e_; ++i) {
            const uint64_t coeff = (lead * (p_ - poly_[i] % p_)) % p_;
            prod[d - e_ + i] = (prod[d - e_ + i] + coeff) % p_;
        }
    }
    uint64_t out = 0;
    for (size_t i = e_; i > 0; --i) out = out * p_ + prod[i - 1];
    return out;
}

void FieldSpec::build_tables() {
    const uint64_t order = q_ - 1;
    exp_.assign(order, 1);
    log_.assign(q_, 0);
    if (order == 1) {
        log_[1] = 0;
        tables_ = true;
        return;
    }
    for (uint64_t cand = 2; cand < q_; ++cand) {
        uint64_t x = cand;
        uint64_t steps = 1;
        while (x != 1 && steps <= order) {
            x = mul_slow(x, cand);
            ++steps;
        }
        if (x == 1 && steps == order) {
            uint64_t v = 1;
            for (uint64_t i = 0; i < order; ++i) {
                exp_[i] = static_cast<uint32_t>(v);
                log_[v] = static_cast<uint32_t>(i);
                v = mul_slow(v, cand);
            }
            tables_ = true;
            return;
        }
    }
    throw Error("no multiplicative generator found");  // unreachable for genuine fields
}

uint64_t FieldSpec::mul(uint64_t a, uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (tables_) {
        const uint64_t order = q_ - 1;
        return exp_[(log_[a] + log_[b]) % order];
    }
    return mul_slow(a, b);
}

uint64_t FieldSpec::inv(uint64_t a) const {
    if (a == 0) throw DomainError("zero has no multiplicative inverse");
    if (tables_) {
        const uint64_t order = q_ - 1;
        return exp_[(order - log_[a]) % order];
    }
    return pow(a, q_ - 2);
}

uint64_t FieldSpec::pow(uint64_t a, uint64_t k) const {
    uint64_t result = 1, base = a;
    while (k > 0) {
        if (k & 1) result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

FieldElement::FieldElement(FieldSpecPtr spec, uint64_t code)
    : spec_(std::move(spec)), code_(code) {
    if (!spec_) throw UsageError("null field spec");
    if (code_ >= spec_->q()) throw UsageError("element code out of range");
}

namespace {
void require_same(const FieldSpecPtr& a, const FieldSpecPtr& b) {
    if (!a->same(*b)) throw SpecMismatchError("operands have different field specs");
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same(spec_, o.spec_);
    return {spec_, spec_->add(code_, o.code_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same(spec_, o.spec_);
    return {spec_, spec_->sub(code_, o.code_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same(spec_, o.spec_);
    return {spec_, spec_->mul(code_, o.code_)};
}

FieldElement FieldElement::inverse() const { return {spec_, spec_->inv(code_)}; }

bool FieldElement::operator==(const FieldElement& o) const {
    return spec_->same(*o.spec_) && code_ == o.code_;
}

Matrix::Matrix(FieldSpecPtr spec, size_t rows, size_t cols)
    : spec_(std::move(spec)), rows_(rows), cols_(cols), codes_(rows * cols, 0) {
    if (!spec_) throw UsageError("null field spec");
}

Matrix Matrix::identity(FieldSpecPtr spec, size_t n) {
    Matrix m(std::move(spec), n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(FieldSpecPtr spec,
                         const std::vector<std::vector<uint64_t>>& rows) {
    const size_t r = rows.size();
    const size_t c = r == 0 ? 0 : rows[0].size();
    Matrix m(std::move(spec), r, c);
    for (size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DimensionError("ragged row list");
        for (size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::from_codes(FieldSpecPtr spec, size_t rows, size_t cols,
                          std::span<const uint64_t> codes) {
    if (codes.size() != rows * cols) throw DimensionError("code count mismatch");
    Matrix m(std::move(spec), rows, cols);
    for (size_t i = 0; i < codes.size(); ++i) {
        if (codes[i] >= m.spec_->q()) throw UsageError("element code out of range");
        m.codes_[i] = codes[i];
    }
    return m;
}

uint64_t Matrix::at(size_t r, size_t c) const {
    if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of range");
    return codes_[r * cols_ + c];
}

void Matrix::set(size_t r, size_t c, uint64_t code) {
    if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of range");
    if (code >= spec_->q()) throw UsageError("element code out of range");
    codes_[r * cols_ + c] = code;
}

void Matrix::check_same_spec(const Matrix& o) const {
    if (!spec_->same(*o.spec_)) throw SpecMismatchError("matrices over different fields");
}

Matrix Matrix::mul(const Matrix& rhs) const {
    check_same_spec(rhs);
    if (cols_ != rhs.rows_) throw DimensionError("matrix product shape mismatch");
    const FieldSpec& f = *spec_;
    Matrix out(spec_, rows_, rhs.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            const uint64_t a = codes_[i * cols_ + k];
            if (a == 0) continue;
            for (size_t j = 0; j < rhs.cols_; ++j) {
                const uint64_t b = rhs.codes_[k * rhs.cols_ + j];
                if (b == 0) continue;
                uint64_t& cell = out.codes_[i * rhs.cols_ + j];
                cell = f.add(cell, f.mul(a, b));
            }
        }
    }
    return out;
}

std::vector<uint64_t> Matrix::mul_vec(std::span<const uint64_t> v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
    const FieldSpec& f = *spec_;
    std::vector<uint64_t> out(rows_, 0);
    for (size_t i = 0; i < rows_; ++i) {
        uint64_t acc = 0;
        for (size_t j = 0; j < cols_; ++j) {
            const uint64_t a = codes_[i * cols_ + j];
            if (a != 0 && v[j] != 0) acc = f.add(acc, f.mul(a, v[j]));
        }
        out[i] = acc;
    }
    return out;
}

Matrix Matrix::add(const Matrix& rhs) const {
    check_same_spec(rhs);
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionError("matrix sum shape mismatch");
    Matrix out(spec_, rows_, cols_);
    for (size_t i = 0; i < codes_.size(); ++i)
        out.codes_[i] = spec_->add(codes_[i], rhs.codes_[i]);
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(spec_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
    return out;
}

std::vector<uint64_t> Matrix::row(size_t r) const {
    if (r >= rows_) throw DimensionError("row index out of range");
    return {codes_.begin() + static_cast<long>(r * cols_),
            codes_.begin() + static_cast<long>((r + 1) * cols_)};
}

bool Matrix::operator==(const Matrix& o) const {
    return spec_->same(*o.spec_) && rows_ == o.rows_ && cols_ == o.cols_ &&
           codes_ == o.codes_;
}

RrefResult mat_rref(const Matrix& m) {
    Matrix r = m;
    const FieldSpec& f = *m.spec();
    const size_t rows = r.rows(), cols = r.cols();
    std::vector<size_t> pivots;
    size_t lead = 0;
    for (size_t col = 0; col < cols && lead < rows; ++col) {
        size_t piv = lead;
        while (piv < rows && r.at(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != lead)
            for (size_t j = 0; j < cols; ++j) {
                const uint64_t t = r.at(lead, j);
                r.set(lead, j, r.at(piv, j));
                r.set(piv, j, t);
            }
        const uint64_t scale = f.inv(r.at(lead, col));
        for (size_t j = 0; j < cols; ++j) r.set(lead, j, f.mul(scale, r.at(lead, j)));
        for (size_t i = 0; i < rows; ++i) {
            if (i == lead) continue;
            const uint64_t factor = r.at(i, col);
            if (factor == 0) continue;
            for (size_t j = 0; j < cols; ++j)
                r.set(i, j, f.sub(r.at(i, j), f.mul(factor, r.at(lead, j))));
        }
        pivots.push_back(col);
        ++lead;
    }
    return {std::move(r), pivots.size(), std::move(pivots)};
}

size_t mat_rank(const Matrix& m) { return mat_rref(m).rank; }

Subspace::Subspace(size_t ambient, Matrix basis)
    : ambient_(ambient), basis_(std::move(basis)) {}

Subspace Subspace::from_span_rows(const Matrix& rows) {
    auto rr = mat_rref(rows);
    Matrix basis(rows.spec(), rr.rank, rows.cols());
    for (size_t i = 0; i < rr.rank; ++i)
        for (size_t j = 0; j < rows.cols(); ++j) basis.set(i, j, rr.reduced.at(i, j));
    return Subspace(rows.cols(), std::move(basis));
}

bool Subspace::contains(std::span<const uint64_t> v) const {
    if (v.size() != ambient_) throw DimensionError("vector dimension mismatch");
    const FieldSpec& f = *basis_.spec();
    std::vector<uint64_t> w(v.begin(), v.end());
    for (size_t i = 0; i < basis_.rows(); ++i) {
        size_t pivot = 0;
        while (pivot < ambient_ && basis_.at(i, pivot) == 0) ++pivot;
        if (pivot == ambient_) continue;
        const uint64_t factor = w[pivot];
        if (factor == 0) continue;
        for (size_t j = 0; j < ambient_; ++j)
            w[j] = f.sub(w[j], f.mul(factor, basis_.at(i, j)));
    }
    return std::all_of(w.begin(), w.end(), [](uint64_t x) { return x == 0; });
}

bool Subspace::operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
}

Subspace mat_kernel(const Matrix& m) {
    const auto rr = mat_rref(m);
    const FieldSpec& f = *m.spec();
    const size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : rr.pivots) is_pivot[c] = true;

    Matrix basis(m.spec(), cols - rr.rank, cols);
    size_t row = 0;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        basis.set(row, fc, 1);
        for (size_t i = 0; i < rr.rank; ++i)
            basis.set(row, rr.pivots[i], f.neg(rr.reduced.at(i, fc)));
        ++row;
    }
    // Canonicalize so that equal kernels compare equal.
    return Subspace::from_span_rows(basis);
}

Matrix mat_inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of non-square matrix");
    const size_t n = m.rows();
    Matrix aug(m.spec(), n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
        aug.set(i, n + i, 1);
    }
    const auto rr = mat_rref(aug);
    // An invertible left half puts all n pivots in the first n columns.
    size_t left_pivots = 0;
    for (size_t c : rr.pivots)
        if (c < n) ++left_pivots;
    if (left_pivots < n) throw SingularMatrixError("matrix is singular");
    Matrix inv(m.spec(), n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv.set(i, j, rr.reduced.at(i, n + j));
    return inv;
}

Matrix sample_invertible(const FieldSpecPtr& spec, size_t dim, std::mt19937_64& rng) {
    if (dim < 1) throw UsageError("sample_invertible needs dim >= 1");
    constexpr int kMaxAttempts = 4096;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Matrix m(spec, dim, dim);
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j) m.set(i, j, uniform_below(rng, spec->q()));
        if (mat_rank(m) == dim) return m;
    }
    throw RngFailureError("rejection sampling failed to produce an invertible matrix");
}

std::vector<Matrix> enumerate_invertible(const FieldSpecPtr& spec, size_t dim) {
    if (dim < 1) throw UsageError("enumerate_invertible needs dim >= 1");
    const BigInt space = bigint_pow(spec->q(), static_cast<uint64_t>(dim * dim));
    if (space > kMaxEnumInvertible)
        throw GuardExceededError("q^(dim^2) exceeds enumeration guard");
    std::vector<Matrix> out;
    std::vector<uint64_t> odo(dim * dim, 0);
    const uint64_t q = spec->q();
    for (;;) {
        Matrix m = Matrix::from_codes(spec, dim, dim, odo);
        if (mat_rank(m) == dim) out.push_back(std::move(m));
        size_t pos = 0;
        while (pos < odo.size() && ++odo[pos] == q) odo[pos++] = 0;
        if (pos == odo.size()) break;
    }
    return out;
}

std::vector<Subspace> enumerate_subspaces(const FieldSpecPtr& spec, size_t ambient,
                                          size_t dim) {
    if (dim > ambient) throw UsageError("subspace dimension exceeds ambient space");
    const BigInt count = gaussian_binomial(spec->q(), static_cast<uint32_t>(ambient),
                                           static_cast<uint32_t>(dim));
    if (count > kMaxEnumSubspaces)
        throw GuardExceededError("subspace count exceeds enumeration guard");

    std::vector<Subspace> out;
    const uint64_t q = spec->q();

    // Pivot-column subsets in increasing lexicographic order; for each, the
    // reduced echelon forms with that pivot pattern are exactly the matrices
    // with free entries right of a pivot in non-pivot columns.
    std::vector<size_t> pivots(dim);
    for (size_t i = 0; i < dim; ++i) pivots[i] = i;
    for (;;) {
        std::vector<std::pair<size_t, size_t>> free_pos;
        std::vector<bool> is_pivot(ambient, false);
        for (size_t c : pivots) is_pivot[c] = true;
        for (size_t i = 0; i < dim; ++i)
            for (size_t c = pivots[i] + 1; c < ambient; ++c)
                if (!is_pivot[c]) free_pos.emplace_back(i, c);

        std::vector<uint64_t> odo(free_pos.size(), 0);
        for (;;) {
            Matrix basis(spec, dim, ambient);
            for (size_t i = 0; i < dim; ++i) basis.set(i, pivots[i], 1);
            for (size_t t = 0; t < free_pos.size(); ++t)
                basis.set(free_pos[t].first, free_pos[t].second, odo[t]);
            out.push_back(Subspace(ambient, std::move(basis)));
            size_t pos = 0;
            while (pos < odo.size() && ++odo[pos] == q) odo[pos++] = 0;
            if (pos == odo.size() || odo.empty()) break;
        }

        // Next pivot combination.
        if (dim == 0) break;
        bool advanced = false;
        for (size_t i = dim; i-- > 0;) {
            if (pivots[i] + (dim - i) < ambient) {
                ++pivots[i];
                for (size_t j = i + 1; j < dim; ++j) pivots[j] = pivots[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

}  // namespace usnc::gf
