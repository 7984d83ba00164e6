#include "l2rank/odometer.hpp"

#include <algorithm>
#include <sstream>

namespace l2rank {

namespace {

std::vector<std::pair<unsigned long, unsigned long>> factor(unsigned long n) {
    std::vector<std::pair<unsigned long, unsigned long>> out;
    for (unsigned long p = 2; p * p <= n; ++p) {
        unsigned long e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long pm_long(const Space& space, int m) {
    Integer p = space.radices().partial_product(m);
    if (p > 5000) throw DomainError("level " + std::to_string(m) + " is too large to realize (p_m = " + p.get_str() + ")");
    return p.get_si();
}

}  // namespace

Supernatural::Supernatural(RadixSequence radices) : radices_(std::move(radices)) {
    if (radices_.listed().empty()) throw DomainError("empty radix sequence");
    for (int r : radices_.listed()) {
        if (r < 2) throw DomainError("radices must be >= 2");
        for (auto [p, e] : factor(static_cast<unsigned long>(r))) primes_.push_back(p);
    }
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

PrimeExponent Supernatural::exponent(unsigned long prime) const {
    PrimeExponent out;
    const auto& listed = radices_.listed();
    for (std::size_t i = 0; i < listed.size(); ++i) {
        unsigned long e = 0;
        for (auto [p, k] : factor(static_cast<unsigned long>(listed[i])))
            if (p == prime) e = k;
        if (e == 0) continue;
        const bool repeats = radices_.rule() == Continuation::Periodic || i + 1 == listed.size();
        if (repeats) out.infinite = true;
        out.value += e;
    }
    if (out.infinite) out.value = 0;
    return out;
}

std::string Supernatural::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (auto p : primes_) {
        auto e = exponent(p);
        os << (first ? "" : " * ") << p << "^" << (e.infinite ? std::string("inf") : std::to_string(e.value));
        first = false;
    }
    return first ? "1" : os.str();
}

bool znumber_contains(const Supernatural& n, const Rational& x) {
    Integer den = x.get_den();
    for (auto p : n.primes()) {
        unsigned long e = 0;
        while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
            den /= p;
            ++e;
        }
        auto cap = n.exponent(p);
        if (!cap.infinite && e > cap.value) return false;
    }
    return den == 1;
}

LaurentMatrix laurent_multiply(const LaurentMatrix& a, const LaurentMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    LaurentMatrix out(n, std::vector<LaurentPoly>(m));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != k) throw DomainError("matrix product size mismatch");
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) out[i][j] += a[i][l] * b[l][j];
        }
    }
    return out;
}

LaurentMatrix laurent_adjoint(const LaurentMatrix& a) {
    const std::size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
    LaurentMatrix out(m, std::vector<LaurentPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) out[j][i] = a[i][j].inverted();
    return out;
}

std::string to_string(const LaurentMatrix& m) {
    std::ostringstream os;
    for (const auto& row : m) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "\t" : "") << to_string(row[j]);
        os << "\n";
    }
    return os.str();
}

int element_level(const CrossedMatrix& a) {
    int level = 1;
    for (const auto& [ix, e] : a.entries())
        for (const auto& [j, f] : e.terms())
            for (const auto& t : f.terms())
                if (!t.set.is_whole_space()) level = std::max(level, t.set.max_coord());
    return level;
}

LaurentMatrix realize_at_level(const Space& space, const CrossedMatrix& a, int m) {
    if (space.is_binary()) throw DomainError("realization needs the odometer space");
    const int need = element_level(a);
    if (m < need) throw DomainError("level " + std::to_string(m) + " is too small; the element needs level " + std::to_string(need));
    const long p = pm_long(space, m);
    const std::size_t k = a.size();
    const auto P = static_cast<std::size_t>(p);
    LaurentMatrix out(k * P, std::vector<LaurentPoly>(k * P));
    std::vector<Cylinder> prefixes;
    for (long l = 0; l < p; ++l) prefixes.push_back(prefix_from_index(space, m, l));
    for (const auto& [ix, e] : a.entries()) {
        const auto [r, c] = ix;
        for (const auto& [j, f] : e.terms()) {
            for (long l = 0; l < p; ++l) {
                // (χ_S t^j) e_l = χ_S(target) s^{floor((l+j)/p)} e_target
                const long target = ((l + j) % p + p) % p;
                Rational v = value_on(space, f, prefixes[static_cast<std::size_t>(target)]);
                if (v == 0) continue;
                const auto power = static_cast<int>(floor_div(l + j, p));
                out[r * P + static_cast<std::size_t>(target)][c * P + static_cast<std::size_t>(l)] +=
                    LaurentPoly::monomial(v, power);
            }
        }
    }
    return out;
}

LaurentMatrix embed_level(const Space& space, const LaurentMatrix& realized, std::size_t k, int m) {
    const long p = pm_long(space, m);
    const long n = space.radix(m + 1);
    const auto P = static_cast<std::size_t>(p), Q = static_cast<std::size_t>(p * n);
    if (realized.size() != k * P) throw DomainError("realization size does not match level " + std::to_string(m));
    LaurentMatrix out(k * Q, std::vector<LaurentPoly>(k * Q));
    for (std::size_t R = 0; R < k * P; ++R)
        for (std::size_t C = 0; C < k * P; ++C) {
            const LaurentPoly& f = realized[R][C];
            if (f.is_zero()) continue;
            const std::size_t rb = R / P, ri = R % P, cb = C / P, ci = C % P;
            for (int e = f.valuation(); e <= f.max_exponent(); ++e) {
                const Rational coef = f.coeff(e);
                if (coef == 0) continue;
                // s^e = t^{e p} moves block b to b + e (mod n), picking up s' per wrap
                for (long b = 0; b < n; ++b) {
                    const long to = ((b + e) % n + n) % n;
                    const auto wraps = static_cast<int>(floor_div(b + e, n));
                    out[rb * Q + ri + static_cast<std::size_t>(to) * P][cb * Q + ci + static_cast<std::size_t>(b) * P] +=
                        LaurentPoly::monomial(coef, wraps);
                }
            }
        }
    return out;
}

std::size_t laurent_rank(const LaurentMatrix& m) {
    PolyMatrix pm;
    pm.reserve(m.size());
    for (const auto& row : m) {
        int low = 0;
        bool any = false;
        for (const auto& f : row)
            if (!f.is_zero()) {
                low = any ? std::min(low, f.valuation()) : f.valuation();
                any = true;
            }
        std::vector<Poly> prow;
        prow.reserve(row.size());
        for (const auto& f : row) {
            if (f.is_zero()) {
                prow.emplace_back();
                continue;
            }
            prow.push_back(f.poly() * Poly::monomial(1, f.valuation() - low));
        }
        pm.push_back(std::move(prow));
    }
    return rank_poly(std::move(pm));
}

OdoRank odo_rank(const Space& space, const CrossedMatrix& a, std::optional<int> level) {
    OdoRank out;
    out.level = level ? *level : element_level(a);
    out.p_m = space.radices().partial_product(out.level);
    const std::size_t r = laurent_rank(realize_at_level(space, a, out.level));
    out.rank = Rational(Integer(static_cast<unsigned long>(r)), out.p_m);
    out.rank.canonicalize();
    return out;
}

bool level_consistency(const Space& space, const CrossedMatrix& a, int m) {
    LaurentMatrix here = realize_at_level(space, a, m);
    LaurentMatrix up = embed_level(space, here, a.size(), m);
    Rational low(Integer(static_cast<unsigned long>(laurent_rank(here))), space.radices().partial_product(m));
    Rational high(Integer(static_cast<unsigned long>(laurent_rank(up))), space.radices().partial_product(m + 1));
    low.canonicalize();
    high.canonicalize();
    return low == high;
}

CrossedElement level_unit(const Space& space, int m, long i) {
    Cylinder base = prefix_from_index(space, m, 0);
    return CrossedElement::monomial(1, shift_image(space, base, i), 0);
}

CrossedElement diagonal_projection(const Space& space, int m, long count) {
    CrossedElement out;
    for (long i = 0; i < count; ++i) out += level_unit(space, m, i);
    return out;
}

}  // namespace l2rank
