#include "l2rank/betti.hpp"

namespace l2rank {

namespace {

// Cylinders of lamplighter_half coefficients; the underlined coordinate is 0.
const Cylinder kZeroZeroAhead{{0, 0}, {1, 0}};       // [0̲0]
const Cylinder kZeroZeroBehind{{-1, 0}, {0, 0}};     // [00̲]
const Cylinder kOneZeroBehind{{-1, 1}, {0, 0}};      // [10̲]
const Cylinder kZeroOneAhead{{0, 0}, {1, 1}};        // [0̲1]
const Cylinder kZeroHere{{0, 0}};                    // [0̲]
const Cylinder kOneBetweenZeros{{-2, 0}, {-1, 1}, {0, 0}};  // [010̲]
const Cylinder kOneAheadTwo{{0, 0}, {1, 1}, {2, 0}};   // [0̲10]

class Builder {
public:
    explicit Builder(std::size_t size) : m_(size) {}
    void put(std::size_t r, std::size_t c, const Rational& coef, const Cylinder& set, long power) {
        if (coef != 0) m_.add(r, c, coef, set, power);
    }
    CrossedMatrix take() { return std::move(m_); }

    // Loop of five monomials on rows b..b+2; the first loop of a power block is scaled by d.
    void unit(std::size_t b, const Rational& d, const Integer& coef, bool link) {
        put(b, b, -d, kZeroZeroAhead, -1);
        put(b + 1, b, -1, kZeroHere, 0);
        put(b + 1, b + 1, -d, kZeroZeroAhead, -1);
        put(b + 2, b + 1, -d, kOneZeroBehind, 0);
        put(b + 2, b + 2, -1, kZeroZeroBehind, 1);
        if (link) put(b + 3, b + 2, -1, kZeroOneAhead, 0);
        put(0, b + 2, -Rational(coef), kZeroOneAhead, 0);
    }

    // First polynomial, rows 1..3n.
    void leading_poly(const std::vector<Integer>& p) {
        const std::size_t n = p.size() - 1;
        for (std::size_t j = 0; j < n; ++j) {
            const Integer coef = j == 0 ? p[1] - 1 : p[j + 1];
            unit(3 * j + 1, 1, coef, j + 1 < n);
        }
    }

    // Polynomial weighted by d^k, rows b..b+3n.
    void power_poly(std::size_t b, const std::vector<Integer>& p, const Integer& d) {
        const std::size_t n = p.size() - 1;
        const Rational dd(d);
        put(b, b + 1, -dd, kOneZeroBehind, 0);
        put(b, b, -1, kZeroZeroBehind, 1);
        put(0, b, -Rational(p[0]), kZeroOneAhead, 0);
        for (std::size_t j = 0; j < n; ++j) unit(b + 1 + 3 * j, j == 0 ? dd : Rational(1), p[j + 1], j + 1 < n);
    }

    // Closing graph on rows L+1..L+4 hooked to row `anchor`; also the diagonal padding.
    void closing(std::size_t L, std::size_t anchor) {
        put(L + 2, anchor, -1, kOneBetweenZeros, 2);
        put(0, L + 1, 1, kOneAheadTwo, -1);
        put(L + 3, L + 1, -1, kOneBetweenZeros, 1);
        put(L + 2, L + 2, -1, kZeroZeroBehind, 1);
        put(L + 3, L + 2, 1, kZeroHere, 0);
        put(L + 3, L + 3, -1, kZeroZeroBehind, 1);
        put(L + 4, L + 3, -1, kZeroOneAhead, 0);
        for (std::size_t i = 0; i < L + 5; ++i)
            if (i != 0 && i != L + 1 && i != L + 4) put(i, i, 1, kZeroHere, 0);
        put(anchor, anchor, -1, kZeroOneAhead, 0);
    }

private:
    CrossedMatrix m_;
};

std::vector<Integer> trimmed(std::vector<Integer> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

void require_power_poly(const std::vector<Integer>& p) {
    for (const auto& c : p)
        if (c < 0) throw DomainError("polynomial coefficients must be non-negative");
    if (p.size() < 3) throw DomainError("template polynomials need degree >= 2");
}

CrossedMatrix eleven_element() {
    Builder b(11);
    b.put(1, 1, -1, kZeroZeroAhead, -1);
    b.put(2, 1, -1, kZeroHere, 0);
    b.put(2, 2, -1, kZeroZeroAhead, -1);
    b.put(3, 2, -1, kOneZeroBehind, 0);
    b.put(3, 3, -1, kZeroZeroBehind, 1);
    b.put(4, 3, -1, kZeroOneAhead, 0);
    b.put(4, 4, -1, kZeroZeroAhead, -1);
    b.put(5, 4, -1, kZeroHere, 0);
    b.put(5, 5, -1, kZeroZeroAhead, -1);
    b.put(6, 5, -1, kOneZeroBehind, 0);
    b.put(6, 6, -1, kZeroZeroBehind, 1);
    b.put(0, 6, -1, kZeroOneAhead, 0);
    b.put(8, 1, -1, kOneBetweenZeros, 2);
    b.put(8, 8, -1, kZeroZeroBehind, 1);
    b.put(9, 8, 1, kZeroHere, 0);
    b.put(9, 9, -1, kZeroZeroBehind, 1);
    b.put(10, 9, -1, kZeroOneAhead, 0);
    b.put(9, 7, -1, kOneBetweenZeros, 1);
    b.put(0, 7, 1, kOneAheadTwo, -1);
    for (std::size_t i : {1, 2, 3, 4, 5, 6, 8, 9}) b.put(i, i, 1, kZeroHere, 0);
    b.put(1, 1, -1, kZeroOneAhead, 0);
    return b.take();
}

}  // namespace

std::string template_name(Template t) {
    switch (t) {
        case Template::Eleven: return "eleven";
        case Template::SinglePoly: return "single_poly";
        case Template::PolyTimesPower: return "poly_times_power";
        case Template::General: return "general";
    }
    return "?";
}

Template parse_template(const std::string& name) {
    for (Template t : {Template::Eleven, Template::SinglePoly, Template::PolyTimesPower, Template::General})
        if (template_name(t) == name) return t;
    throw DomainError("unknown template '" + name + "'");
}

CrossedMatrix factory(Template t, const PolySpec& spec) {
    switch (t) {
        case Template::Eleven:
            if (!spec.polys.empty()) throw DomainError("the eleven template takes no polynomial");
            return eleven_element();
        case Template::SinglePoly: {
            if (spec.polys.size() != 1 || !spec.bases.empty())
                throw DomainError("single_poly takes exactly one polynomial and no base");
            spec.validate();
            auto p = trimmed(spec.polys[0]);
            require_power_poly(p);
            const std::size_t L = 3 * (p.size() - 1);
            Builder b(L + 5);
            b.leading_poly(p);
            b.closing(L, 1);
            return b.take();
        }
        case Template::PolyTimesPower: {
            if (spec.polys.size() != 1 || spec.bases.size() != 1)
                throw DomainError("poly_times_power takes one polynomial and one base");
            auto p = trimmed(spec.polys[0]);
            require_power_poly(p);
            if (spec.bases[0] < 2) throw DomainError("base must be >= 2");
            const std::size_t L = 3 * (p.size() - 1) + 1;
            Builder b(L + 5);
            b.power_poly(1, p, spec.bases[0]);
            b.closing(L, 2);
            return b.take();
        }
        case Template::General: {
            spec.validate();
            std::vector<std::vector<Integer>> ps;
            for (const auto& p : spec.polys) {
                ps.push_back(trimmed(p));
                require_power_poly(ps.back());
            }
            const std::size_t n = ps.size() - 1;
            std::size_t N = 0;
            for (const auto& p : ps) N += p.size() - 1;
            const std::size_t L = 3 * N + n;
            Builder b(L + 5);
            b.leading_poly(ps[0]);
            std::size_t base = 3 * (ps[0].size() - 1) + 1;
            for (std::size_t i = 1; i <= n; ++i) {
                b.power_poly(base, ps[i], spec.bases[i - 1]);
                b.put(base + 1, 1, -1, kZeroOneAhead, 0);
                base += 3 * (ps[i].size() - 1) + 1;
            }
            b.closing(L, 1);
            return b.take();
        }
    }
    throw DomainError("unknown template");
}

TemplateLevels template_levels(Template t, const PolySpec& spec) {
    const std::size_t size = factory(t, spec).size();
    return {t == Template::PolyTimesPower ? std::size_t{2} : std::size_t{1}, size - 3};
}

ClosedForm expected_closed_form(Template t, const PolySpec& spec) {
    ClosedForm cf;
    switch (t) {
        case Template::Eleven:
            if (!spec.polys.empty()) throw DomainError("the eleven template takes no polynomial");
            cf.q0 = Rational(55, 8);
            cf.q1 = Rational(1, 2);
            cf.series.polys = {{2, 1, 1}};
            return cf;
        case Template::SinglePoly: {
            if (spec.polys.size() != 1 || !spec.bases.empty())
                throw DomainError("single_poly takes exactly one polynomial and no base");
            spec.validate();
            auto p = trimmed(spec.polys[0]);
            const long n = static_cast<long>(p.size()) - 1;
            cf.q0 = Rational(12 * n + 31, 8);
            cf.q1 = pow2(p[0].get_si()) / 8;
            cf.series.polys = {p};
            return cf;
        }
        case Template::PolyTimesPower: {
            if (spec.polys.size() != 1 || spec.bases.size() != 1)
                throw DomainError("poly_times_power takes one polynomial and one base");
            auto p = trimmed(spec.polys[0]);
            for (const auto& c : p)
                if (c < 0) throw DomainError("polynomial coefficients must be non-negative");
            if (p.size() < 2) throw DomainError("polynomial must have degree >= 1");
            if (spec.bases[0] < 2) throw DomainError("base must be >= 2");
            const long n = static_cast<long>(p.size()) - 1;
            cf.q0 = Rational(12 * n + 35, 8);
            cf.q1 = Rational(1, 8);
            cf.series.polys = {{0, 1}, p};
            cf.series.bases = spec.bases;
            return cf;
        }
        case Template::General: {
            spec.validate();
            long total_degree = 0;
            for (const auto& p : spec.polys) total_degree += static_cast<long>(trimmed(p).size()) - 1;
            const long extra = static_cast<long>(spec.polys.size()) - 1;
            cf.q0 = Rational(12 * total_degree + 4 * extra + 31, 8);
            cf.q1 = pow2(spec.polys[0].at(0).get_si()) / 8;
            cf.series = spec;
            return cf;
        }
    }
    throw DomainError("unknown template");
}

Enclosure closed_form_enclosure(const ClosedForm& cf, const Rational& eps) {
    if (!cf.q0) throw DomainError("the rational part of this template is only available empirically");
    Enclosure s = series_enclosure(cf.series, eps / cf.q1);
    return {*cf.q0 + cf.q1 * s.lo, *cf.q0 + cf.q1 * s.hi};
}

std::optional<Rational> measure_offset(const Enclosure& value, const ClosedForm& cf) {
    Rational eps = value.width() / 64;
    if (eps == 0) eps = pow2(-200);
    Enclosure s = series_enclosure(cf.series, eps);
    const Rational lo = value.lo - cf.q1 * s.hi, hi = value.hi - cf.q1 * s.lo;
    const Rational lo8 = lo * 8;
    Integer k;
    mpz_cdiv_q(k.get_mpz_t(), lo8.get_num_mpz_t(), lo8.get_den_mpz_t());
    std::optional<Rational> found;
    for (; Rational(k) / 8 <= hi; ++k) {
        if (found) return std::nullopt;
        found = Rational(k) / 8;
    }
    if (found) found->canonicalize();
    return found;
}

}  // namespace l2rank
