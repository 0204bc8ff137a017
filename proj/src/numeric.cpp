#include "usnc/numeric.hpp"

#include <bit>

#include "usnc/errors.hpp"

namespace usnc {

BigInt bigint_pow(uint64_t base, uint64_t exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

BigInt gaussian_binomial(uint64_t q, uint32_t n, uint32_t k) {
    if (k > n) return 0;
    BigInt num = 1;
    BigInt den = 1;
    const BigInt qn = bigint_pow(q, n);
    const BigInt qk = bigint_pow(q, k);
    BigInt qi = 1;
    for (uint32_t i = 0; i < k; ++i) {
        num *= qn - qi;
        den *= qk - qi;
        qi *= q;
    }
    BigInt quot, rem;
    boost::multiprecision::divide_qr(num, den, quot, rem);
    if (rem != 0) throw Error("gaussian_binomial: non-exact division");
    return quot;
}

Real real_of(const Rational& r) {
    return Real(boost::multiprecision::numerator(r)) /
           Real(boost::multiprecision::denominator(r));
}

Real real_of(const BigInt& i) { return Real(i); }

Real ln_of(const Rational& r) {
    if (r <= 0) throw DomainError("ln_of: nonpositive rational");
    return log(Real(boost::multiprecision::numerator(r))) -
           log(Real(boost::multiprecision::denominator(r)));
}

std::string rational_str(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

Rational rational_from_str(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        if (den == 0) throw UsageError("rational with zero denominator: " + text);
        return Rational(num, den);
    } catch (const std::exception&) {
        throw UsageError("malformed rational: " + text);
    }
}

uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound) {
    if (bound == 0) throw DomainError("uniform_below: zero bound");
    if (bound == 1) return 0;
    const int bits = 64 - std::countl_zero(bound - 1);
    const uint64_t mask = (bits >= 64) ? ~uint64_t{0} : ((uint64_t{1} << bits) - 1);
    for (;;) {
        const uint64_t r = rng() & mask;
        if (r < bound) return r;
    }
}

}  // namespace usnc
