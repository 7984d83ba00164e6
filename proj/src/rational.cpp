#include "l2rank/rational.hpp"

#include <cctype>

namespace l2rank {

std::string to_string(const Rational& q) { return q.get_str(10); }

namespace {

Integer parse_integer(std::string_view s) {
    if (s.empty()) throw DomainError("empty integer literal");
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') i = 1;
    if (i == s.size()) throw DomainError("bad integer literal");
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw DomainError("bad integer literal: " + std::string(s));
    std::string t(s[0] == '+' ? s.substr(1) : s);
    return Integer(t, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw DomainError("empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash));
        Integer den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator in " + std::string(text));
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    std::string_view mant = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mant = text.substr(0, e);
        exponent = parse_integer(text.substr(e + 1)).get_si();
    }
    bool negative = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        negative = mant[0] == '-';
        mant.remove_prefix(1);
    }
    std::string digits;
    long frac = 0;
    bool seen_point = false;
    for (char c : mant) {
        if (c == '.') {
            if (seen_point) throw DomainError("bad decimal literal: " + std::string(text));
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) ++frac;
        } else {
            throw DomainError("bad rational literal: " + std::string(text));
        }
    }
    if (digits.empty()) throw DomainError("bad rational literal: " + std::string(text));
    Rational q{Integer(digits, 10)};
    long shift = exponent - frac;
    Integer ten = ipow(10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift < 0) q /= ten; else q *= ten;
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

Rational pow2(long e) {
    Integer z = 1;
    if (e >= 0) {
        mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        return Rational(z);
    }
    mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    return Rational(Integer(1), z);
}

Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

std::string to_decimal(const Rational& q, int digits) {
    if (digits < 0) digits = 0;
    Integer scale = ipow(10, static_cast<unsigned long>(digits));
    Rational scaled = q * scale;
    // round half away from zero
    Integer n = scaled.get_num(), d = scaled.get_den();
    bool negative = n < 0;
    if (negative) n = -n;
    Integer r = (2 * n + d) / (2 * d);
    std::string s = r.get_str(10);
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (negative && r != 0) s.insert(0, "-");
    return s;
}

std::string sqrt_decimal(const Rational& q, int digits) {
    if (q < 0) throw DomainError("square root of a negative rational");
    Integer scale = ipow(10, 2UL * static_cast<unsigned long>(digits));
    Integer v = (q.get_num() * scale) / q.get_den();
    Integer root;
    mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
    std::string s = root.get_str(10);
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return s;
}

std::size_t bit_length(const Integer& z) {
    if (z == 0) return 0;
    return mpz_sizeinbase(z.get_mpz_t(), 2);
}

}  // namespace l2rank
