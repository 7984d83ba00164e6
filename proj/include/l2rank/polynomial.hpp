#ifndef L2RANK_POLYNOMIAL_HPP
#define L2RANK_POLYNOMIAL_HPP

#include "l2rank/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace l2rank {

/// Univariate polynomial over ℚ, coefficients lowest degree first, no trailing zeros.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& constant);  // NOLINT: implicit scalar embedding
    Poly(int constant) : Poly(Rational(constant)) {}  // NOLINT
    explicit Poly(std::vector<Rational> coeffs);

    static Poly monomial(const Rational& coef, int degree);
    static Poly x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(int i) const;
    const Rational& lead() const { return c_.back(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    friend Poly operator-(Poly a) { return a *= Rational(-1); }
    bool operator==(const Poly&) const = default;

    Rational eval(const Rational& x) const;
    Poly monic() const;
    std::size_t bit_size() const;  ///< total bit length of numerators and denominators

    /// Quotient and remainder.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    /// Monic gcd; gcd(0, 0) = 0.
    friend Poly gcd(Poly a, Poly b);

private:
    void trim();
    std::vector<Rational> c_;
};

std::string to_string(const Poly& p, const std::string& var = "s");

/// num/den with gcd 1 and monic denominator.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const Poly& p) : num_(p), den_(1) {}  // NOLINT
    RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT
    RatFunc(int c) : num_(c), den_(1) {}  // NOLINT
    RatFunc(Poly num, Poly den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    friend RatFunc operator-(RatFunc a) { return RatFunc(-a.num_, a.den_); }
    bool operator==(const RatFunc&) const = default;

    Rational eval(const Rational& x) const;
    /// First n power-series coefficients around 0; needs den(0) != 0.
    std::vector<Rational> series(int n) const;

private:
    void normalize();
    Poly num_, den_;
};

std::string to_string(const RatFunc& f, const std::string& var = "s");

/// Laurent polynomial s^valuation * poly(s), poly(0) != 0 unless zero.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(const Rational& c) : poly_(c) {}  // NOLINT
    LaurentPoly(int c) : poly_(c) {}  // NOLINT
    LaurentPoly(Poly p, int valuation);

    static LaurentPoly monomial(const Rational& coef, int exponent);

    bool is_zero() const { return poly_.is_zero(); }
    int valuation() const { return val_; }
    int max_exponent() const { return val_ + poly_.degree(); }
    const Poly& poly() const { return poly_; }
    Rational coeff(int exponent) const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
    bool operator==(const LaurentPoly&) const = default;

    /// s ↦ s^{-1}
    LaurentPoly inverted() const;

private:
    void normalize();
    Poly poly_;
    int val_ = 0;
};

std::string to_string(const LaurentPoly& f, const std::string& var = "s");

using PolyMatrix = std::vector<std::vector<Poly>>;
using RatFuncMatrix = std::vector<std::vector<RatFunc>>;

/// Rank over ℚ(s) of a polynomial matrix (fraction-free elimination, row contents stripped).
std::size_t rank_poly(PolyMatrix m);
/// Rank over ℚ(s); denominators are cleared row by row first.
std::size_t rank_ratfunc(const RatFuncMatrix& m);
/// Unique solution of A y = b over ℚ(s). Throws DomainError when A is singular.
std::vector<RatFunc> solve_ratfunc(RatFuncMatrix a, std::vector<RatFunc> b);

}  // namespace l2rank

#endif
