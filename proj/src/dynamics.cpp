#include "l2rank/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace l2rank {

RadixSequence::RadixSequence(std::vector<int> listed, Continuation rule)
    : listed_(std::move(listed)), rule_(rule) {
    if (listed_.empty()) throw DomainError("radix sequence needs at least one radix");
    for (int n : listed_)
        if (n < 2) throw DomainError("radices must be >= 2");
}

int RadixSequence::radix(int coord) const {
    if (coord < 1) throw DomainError("odometer coordinates start at 1");
    if (listed_.empty()) throw DomainError("empty radix sequence");
    auto i = static_cast<std::size_t>(coord - 1);
    if (i < listed_.size()) return listed_[i];
    if (rule_ == Continuation::Periodic) return listed_[i % listed_.size()];
    return listed_.back();
}

Integer RadixSequence::partial_product(int m) const {
    Integer p = 1;
    for (int i = 1; i <= m; ++i) p *= radix(i);
    return p;
}

Space Space::binary() { return Space{}; }

Space Space::odometer(RadixSequence radices) {
    Space s;
    s.binary_ = false;
    s.radices_ = std::move(radices);
    return s;
}

int Space::radix(int coord) const { return binary_ ? 2 : radices_.radix(coord); }

// ---------------------------------------------------------------- Cylinder

Cylinder::Cylinder(std::initializer_list<Constraint> cs) : Cylinder(std::vector<Constraint>(cs)) {}

Cylinder::Cylinder(std::vector<Constraint> cs) : cs_(std::move(cs)) {
    std::sort(cs_.begin(), cs_.end());
    for (std::size_t i = 1; i < cs_.size(); ++i)
        if (cs_[i].first == cs_[i - 1].first)
            throw DomainError("coordinate " + std::to_string(cs_[i].first) + " constrained twice");
}

Cylinder Cylinder::word(int first, const std::vector<int>& symbols) {
    std::vector<Constraint> cs;
    cs.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) cs.emplace_back(first + static_cast<int>(i), symbols[i]);
    Cylinder c;
    c.cs_ = std::move(cs);
    return c;
}

Cylinder Cylinder::prefix(const std::vector<int>& symbols) { return word(1, symbols); }

std::optional<int> Cylinder::symbol_at(int coord) const {
    auto it = std::lower_bound(cs_.begin(), cs_.end(), Constraint{coord, std::numeric_limits<int>::min()});
    if (it != cs_.end() && it->first == coord) return it->second;
    return std::nullopt;
}

int Cylinder::min_coord() const { return cs_.empty() ? 0 : cs_.front().first; }
int Cylinder::max_coord() const { return cs_.empty() ? 0 : cs_.back().first; }

Cylinder Cylinder::translated(int delta) const {
    Cylinder c = *this;
    for (auto& [p, s] : c.cs_) p += delta;
    return c;
}

Cylinder Cylinder::with(int coord, int symbol) const {
    Cylinder c = *this;
    auto it = std::lower_bound(c.cs_.begin(), c.cs_.end(), Constraint{coord, std::numeric_limits<int>::min()});
    if (it != c.cs_.end() && it->first == coord) {
        if (it->second != symbol) throw DomainError("conflicting constraint");
        return c;
    }
    c.cs_.insert(it, Constraint{coord, symbol});
    return c;
}

std::string to_string(const Cylinder& c) {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (auto [p, s] : c.constraints()) {
        if (!first) os << ' ';
        os << p << ':' << s;
        first = false;
    }
    os << ']';
    return os.str();
}

std::optional<Cylinder> intersect(const Cylinder& a, const Cylinder& b) {
    std::vector<Cylinder::Constraint> out;
    out.reserve(a.size() + b.size());
    auto i = a.constraints().begin(), ie = a.constraints().end();
    auto j = b.constraints().begin(), je = b.constraints().end();
    while (i != ie && j != je) {
        if (i->first < j->first) out.push_back(*i++);
        else if (j->first < i->first) out.push_back(*j++);
        else {
            if (i->second != j->second) return std::nullopt;
            out.push_back(*i);
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), i, ie);
    out.insert(out.end(), j, je);
    return Cylinder(std::move(out));
}

bool disjoint(const Cylinder& a, const Cylinder& b) {
    auto i = a.constraints().begin(), ie = a.constraints().end();
    auto j = b.constraints().begin(), je = b.constraints().end();
    while (i != ie && j != je) {
        if (i->first < j->first) ++i;
        else if (j->first < i->first) ++j;
        else {
            if (i->second != j->second) return true;
            ++i;
            ++j;
        }
    }
    return false;
}

bool subset(const Cylinder& a, const Cylinder& b) {
    // every constraint of b appears in a
    auto i = a.constraints().begin(), ie = a.constraints().end();
    for (const auto& cb : b.constraints()) {
        while (i != ie && i->first < cb.first) ++i;
        if (i == ie || i->first != cb.first || i->second != cb.second) return false;
    }
    return true;
}

Rational measure(const Space& space, const Cylinder& c) {
    if (space.is_binary()) return pow2(-static_cast<long>(c.size()));
    Integer den = 1;
    for (auto [p, s] : c.constraints()) den *= space.radix(p);
    return Rational(Integer(1), den);
}

std::vector<Cylinder> refine(const Space& space, const Cylinder& c, const std::vector<int>& coords) {
    std::vector<Cylinder> out{c};
    for (int p : coords) {
        if (c.symbol_at(p)) continue;
        std::vector<Cylinder> next;
        int n = space.radix(p);
        for (const auto& piece : out)
            for (int s = 0; s < n; ++s) next.push_back(piece.with(p, s));
        out = std::move(next);
    }
    return out;
}

bool is_full_prefix(const Cylinder& c) {
    int k = 1;
    for (auto [p, s] : c.constraints())
        if (p != k++) return false;
    return true;
}

Integer prefix_index(const Space& space, const Cylinder& c) {
    if (!is_full_prefix(c)) throw DomainError("not a full prefix cylinder: " + to_string(c));
    Integer l = 0, weight = 1;
    for (auto [p, s] : c.constraints()) {
        l += weight * s;
        weight *= space.radix(p);
    }
    return l;
}

Cylinder prefix_from_index(const Space& space, int m, Integer index) {
    std::vector<int> digits;
    digits.reserve(static_cast<std::size_t>(m));
    for (int p = 1; p <= m; ++p) {
        int n = space.radix(p);
        Integer q = index / n;
        digits.push_back(static_cast<int>(Integer(index - q * n).get_si()));
        index = q;
    }
    return Cylinder::prefix(digits);
}

Cylinder shift_image(const Space& space, const Cylinder& c, long j) {
    if (space.is_binary()) return c.translated(static_cast<int>(-j));
    if (!is_full_prefix(c))
        throw DomainError("odometer shift needs a full prefix cylinder, got " + to_string(c));
    int m = static_cast<int>(c.size());
    if (m == 0) return c;
    Integer pm = space.radices().partial_product(m);
    Integer l = prefix_index(space, c) + j;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), l.get_mpz_t(), pm.get_mpz_t());
    return prefix_from_index(space, m, r);
}

// -------------------------------------------------------------- LCFunction

LCFunction LCFunction::constant(const Rational& c) { return indicator(Cylinder{}, c); }

LCFunction LCFunction::indicator(const Cylinder& c, const Rational& coef) {
    LCFunction f;
    if (coef != 0) f.terms_.push_back({coef, c});
    return f;
}

void LCFunction::add_term(const Rational& coef, const Cylinder& set) {
    terms_.push_back({coef, set});
    normalize();
}

void LCFunction::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.set < b.set; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().set == t.set) out.back().coef += t.coef;
        else out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return t.coef == 0; });
    terms_ = std::move(out);
}

LCFunction& LCFunction::operator+=(const LCFunction& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

LCFunction& LCFunction::operator-=(const LCFunction& o) {
    for (const auto& t : o.terms_) terms_.push_back({-t.coef, t.set});
    normalize();
    return *this;
}

LCFunction& LCFunction::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= s;
    return *this;
}

LCFunction operator*(const LCFunction& a, const LCFunction& b) {
    LCFunction out;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_)
            if (auto c = intersect(ta.set, tb.set)) out.terms_.push_back({ta.coef * tb.coef, std::move(*c)});
    out.normalize();
    return out;
}

std::pair<int, int> LCFunction::coordinate_hull() const {
    bool any = false;
    int lo = 0, hi = 0;
    for (const auto& t : terms_) {
        if (t.set.is_whole_space()) continue;
        if (!any) {
            lo = t.set.min_coord();
            hi = t.set.max_coord();
            any = true;
        } else {
            lo = std::min(lo, t.set.min_coord());
            hi = std::max(hi, t.set.max_coord());
        }
    }
    return {lo, hi};
}

LCFunction compose_shift(const Space& space, const LCFunction& f, long j) {
    LCFunction out;
    for (const auto& t : f.terms()) out += LCFunction::indicator(shift_image(space, t.set, -j), t.coef);
    return out;
}

namespace {

std::optional<Rational> eval_terms(const Space& space, const std::vector<const LCFunction::Term*>& terms,
                                   const Cylinder& c, const Rational& base) {
    Rational sum = base;
    std::vector<const LCFunction::Term*> partial;
    for (const auto* t : terms) {
        if (subset(c, t->set)) sum += t->coef;
        else if (!disjoint(c, t->set)) partial.push_back(t);
    }
    if (partial.empty()) return sum;
    int coord = 0;
    for (auto [p, s] : partial.front()->set.constraints())
        if (!c.symbol_at(p)) {
            coord = p;
            break;
        }
    std::optional<Rational> value;
    int n = space.radix(coord);
    for (int s = 0; s < n; ++s) {
        auto v = eval_terms(space, partial, c.with(coord, s), sum);
        if (!v || (value && *value != *v)) return std::nullopt;
        value = std::move(v);
    }
    return value;
}

}  // namespace

std::optional<Rational> lc_eval_on(const Space& space, const LCFunction& f, const Cylinder& c) {
    std::vector<const LCFunction::Term*> ptrs;
    ptrs.reserve(f.terms().size());
    for (const auto& t : f.terms()) ptrs.push_back(&t);
    return eval_terms(space, ptrs, c, Rational(0));
}

Rational value_on(const Space& space, const LCFunction& f, const Cylinder& c) {
    auto v = lc_eval_on(space, f, c);
    if (!v) throw NonConstant("function " + to_string(f) + " is not constant on " + to_string(c));
    return *v;
}

bool is_zero_function(const Space& space, const LCFunction& f) {
    auto v = lc_eval_on(space, f, Cylinder{});
    return v && *v == 0;
}

bool same_function(const Space& space, const LCFunction& f, const LCFunction& g) {
    return is_zero_function(space, f - g);
}

std::string to_string(const LCFunction& f) {
    if (f.terms().empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : f.terms()) {
        if (!first) os << " + ";
        os << to_string(t.coef) << "*chi" << to_string(t.set);
        first = false;
    }
    return os.str();
}

}  // namespace l2rank
