#ifndef L2RANK_RATIONAL_HPP
#define L2RANK_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace l2rank {

using Rational = mpq_class;
using Integer = mpz_class;

/// Input that cannot be interpreted (bad literal, malformed file, invalid parameter).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Canonical "p/q" form ("p" for integers).
std::string to_string(const Rational& q);

/// Accepts "p/q", integers, and plain decimals such as "0.125" or "1e-10".
Rational parse_rational(std::string_view text);

/// 2^e for any integer e.
Rational pow2(long e);

Integer ipow(const Integer& base, unsigned long e);

/// Decimal expansion rounded to `digits` places after the point.
std::string to_decimal(const Rational& q, int digits);

/// floor(sqrt(q * 10^(2 digits))) / 10^digits, i.e. sqrt(q) truncated to `digits` places.
std::string sqrt_decimal(const Rational& q, int digits);

std::size_t bit_length(const Integer& z);

}  // namespace l2rank

#endif
