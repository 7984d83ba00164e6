#include "l2rank/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace l2rank {

Poly::Poly(const Rational& constant) {
    if (constant != 0) c_.push_back(constant);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const Rational& coef, int degree) {
    if (degree < 0) throw DomainError("negative polynomial degree");
    Poly p;
    if (coef == 0) return p;
    p.c_.assign(static_cast<std::size_t>(degree) + 1, Rational(0));
    p.c_.back() = coef;
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return c_[static_cast<std::size_t>(i)];
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& o) {
    if (is_zero() || o.is_zero()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    trim();
    return *this;
}

Poly& Poly::operator*=(const Rational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
}

Rational Poly::eval(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Poly p = *this;
    p *= Rational(1 / lead());
    return p;
}

std::size_t Poly::bit_size() const {
    std::size_t b = 0;
    for (const auto& v : c_) b += bit_length(v.get_num()) + bit_length(v.get_den());
    return b;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    Poly q, r = a;
    const Rational inv = 1 / b.lead();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        Rational f = r.lead() * inv;
        Poly t = Poly::monomial(f, shift);
        q += t;
        r -= t * b;
    }
    return {q, r};
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string to_string(const Poly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        Rational c = p.coeff(i);
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        Rational a = abs(c);
        if (i == 0 || a != 1) os << to_string(a);
        if (i > 0) os << (i == 0 || a != 1 ? "*" : "") << var << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
    }
    Rational lc = den_.lead();
    if (lc != 1) {
        Rational inv = 1 / lc;
        num_ *= inv;
        den_ *= inv;
    }
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
    }
    normalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
    if (o.is_zero()) throw DomainError("division by the zero rational function");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

Rational RatFunc::eval(const Rational& x) const {
    Rational d = den_.eval(x);
    if (d == 0) throw DomainError("rational function has a pole at " + to_string(x));
    return num_.eval(x) / d;
}

std::vector<Rational> RatFunc::series(int n) const {
    Rational d0 = den_.coeff(0);
    if (d0 == 0) throw DomainError("no power series: denominator vanishes at 0");
    std::vector<Rational> a(static_cast<std::size_t>(std::max(n, 0)));
    for (int k = 0; k < n; ++k) {
        Rational v = num_.coeff(k);
        for (int i = 1; i <= std::min(k, den_.degree()); ++i) v -= den_.coeff(i) * a[static_cast<std::size_t>(k - i)];
        a[static_cast<std::size_t>(k)] = v / d0;
    }
    return a;
}

std::string to_string(const RatFunc& f, const std::string& var) {
    if (f.den() == Poly(1)) return to_string(f.num(), var);
    return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

// ------------------------------------------------------------ LaurentPoly

LaurentPoly::LaurentPoly(Poly p, int valuation) : poly_(std::move(p)), val_(valuation) { normalize(); }

LaurentPoly LaurentPoly::monomial(const Rational& coef, int exponent) { return LaurentPoly(Poly(coef), exponent); }

void LaurentPoly::normalize() {
    if (poly_.is_zero()) {
        val_ = 0;
        return;
    }
    int k = 0;
    while (poly_.coeff(k) == 0) ++k;
    if (k > 0) {
        std::vector<Rational> c(poly_.coeffs().begin() + k, poly_.coeffs().end());
        poly_ = Poly(std::move(c));
        val_ += k;
    }
}

Rational LaurentPoly::coeff(int exponent) const { return poly_.coeff(exponent - val_); }

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    int v = std::min(val_, o.val_);
    Poly a = poly_ * Poly::monomial(1, val_ - v);
    Poly b = o.poly_ * Poly::monomial(1, o.val_ - v);
    poly_ = a + b;
    val_ = v;
    normalize();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    LaurentPoly neg = o;
    neg.poly_ *= Rational(-1);
    return *this += neg;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    poly_ *= o.poly_;
    val_ += o.val_;
    normalize();
    return *this;
}

LaurentPoly LaurentPoly::inverted() const {
    if (is_zero()) return *this;
    std::vector<Rational> c(poly_.coeffs().rbegin(), poly_.coeffs().rend());
    return LaurentPoly(Poly(std::move(c)), -max_exponent());
}

std::string to_string(const LaurentPoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int e = f.max_exponent(); e >= f.valuation(); --e) {
        Rational c = f.coeff(e);
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        Rational a = abs(c);
        if (e == 0) os << to_string(a);
        else {
            if (a != 1) os << to_string(a) << '*';
            os << var;
            if (e != 1) os << '^' << e;
        }
        first = false;
    }
    return os.str();
}

// ------------------------------------------------------------ elimination

std::size_t rank_poly(PolyMatrix m) {
    const std::size_t R = m.size();
    if (R == 0) return 0;
    const std::size_t C = m.front().size();
    for (const auto& row : m)
        if (row.size() != C) throw DomainError("ragged polynomial matrix");

    auto strip = [&](std::vector<Poly>& row) {
        Poly g;
        for (const auto& p : row)
            if (!p.is_zero()) {
                g = gcd(g, p);
                if (g.degree() == 0) break;
            }
        if (g.is_zero()) return;
        if (g.degree() > 0)
            for (auto& p : row)
                if (!p.is_zero()) p = divmod(p, g).first;
        // scalar normalization: leading coefficient of the first nonzero entry becomes 1
        for (const auto& p : row)
            if (!p.is_zero()) {
                Rational inv = 1 / p.lead();
                for (auto& q : row) q *= inv;
                break;
            }
    };
    for (auto& row : m) strip(row);

    std::vector<char> alive(R, 1);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < C; ++c) {
        std::size_t piv = R;
        std::pair<int, std::size_t> best{0, 0};
        for (std::size_t r = 0; r < R; ++r) {
            if (!alive[r] || m[r][c].is_zero()) continue;
            std::pair<int, std::size_t> key{m[r][c].degree(), m[r][c].bit_size()};
            if (piv == R || key < best) {
                best = key;
                piv = r;
            }
        }
        if (piv == R) continue;
        alive[piv] = 0;
        ++rank;
        const Poly p = m[piv][c];
        for (std::size_t r = 0; r < R; ++r) {
            if (!alive[r] || m[r][c].is_zero()) continue;
            const Poly a = m[r][c];
            Poly g = gcd(p, a);
            Poly pp = divmod(p, g).first, aa = divmod(a, g).first;
            for (std::size_t k = c; k < C; ++k) {
                if (m[piv][k].is_zero() && m[r][k].is_zero()) continue;
                m[r][k] = pp * m[r][k] - aa * m[piv][k];
            }
            strip(m[r]);
        }
    }
    return rank;
}

std::size_t rank_ratfunc(const RatFuncMatrix& m) {
    PolyMatrix pm;
    pm.reserve(m.size());
    for (const auto& row : m) {
        Poly l(1);
        for (const auto& f : row)
            if (!f.is_zero()) l = divmod(l * f.den(), gcd(l, f.den())).first;
        std::vector<Poly> prow;
        prow.reserve(row.size());
        for (const auto& f : row) prow.push_back(f.is_zero() ? Poly() : f.num() * divmod(l, f.den()).first);
        pm.push_back(std::move(prow));
    }
    return rank_poly(std::move(pm));
}

std::vector<RatFunc> solve_ratfunc(RatFuncMatrix a, std::vector<RatFunc> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw DomainError("solve: shape mismatch");
    for (const auto& row : a)
        if (row.size() != n) throw DomainError("solve: matrix must be square");
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw DomainError("solve: singular system");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        RatFunc inv = RatFunc(1) / a[c][c];
        for (std::size_t k = c; k < n; ++k) a[c][k] *= inv;
        b[c] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            RatFunc f = a[r][c];
            for (std::size_t k = c; k < n; ++k)
                if (!a[c][k].is_zero()) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    return b;
}

}  // namespace l2rank
