#include "l2rank/ratlang.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace l2rank {

int letter_degree(int letter) { return letter + 2; }

int word_degree(const std::vector<int>& word) {
    int d = 0;
    for (int x : word) d += letter_degree(x);
    return d;
}

void Automaton::validate() const {
    if (letters < 1) throw DomainError("automaton needs at least one letter");
    if (states < 1) throw DomainError("automaton needs at least one state");
    if (initial < 0 || initial >= states) throw DomainError("initial state out of range");
    for (int q : accepting)
        if (q < 0 || q >= states) throw DomainError("accepting state out of range");
    for (const auto& t : transitions) {
        if (t[0] < 0 || t[0] >= states || t[2] < 0 || t[2] >= states)
            throw DomainError("transition state out of range");
        if (t[1] < 0 || t[1] >= letters) throw DomainError("transition letter out of range");
    }
}

bool Automaton::is_deterministic() const {
    std::set<std::pair<int, int>> seen;
    for (const auto& t : transitions)
        if (!seen.insert({t[0], t[1]}).second) return false;
    return true;
}

bool Automaton::is_complete() const {
    if (!is_deterministic()) return false;
    return transitions.size() == static_cast<std::size_t>(states) * static_cast<std::size_t>(letters);
}

bool Automaton::accepts(const std::vector<int>& word) const {
    std::set<int> current{initial};
    for (int x : word) {
        std::set<int> next;
        for (const auto& t : transitions)
            if (t[1] == x && current.count(t[0])) next.insert(t[2]);
        current = std::move(next);
        if (current.empty()) return false;
    }
    for (int q : accepting)
        if (current.count(q)) return true;
    return false;
}

Automaton determinize(const Automaton& a) {
    a.validate();
    if (a.is_deterministic()) return a;
    std::vector<std::vector<std::set<int>>> delta(static_cast<std::size_t>(a.states),
                                                  std::vector<std::set<int>>(static_cast<std::size_t>(a.letters)));
    for (const auto& t : a.transitions)
        delta[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[1])].insert(t[2]);
    const std::set<int> acc(a.accepting.begin(), a.accepting.end());

    Automaton out;
    out.letters = a.letters;
    std::map<std::set<int>, int> index;
    std::vector<std::set<int>> queue{{a.initial}};
    index[{a.initial}] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const std::set<int> cur = queue[i];
        if (std::any_of(cur.begin(), cur.end(), [&](int q) { return acc.count(q) > 0; }))
            out.accepting.push_back(static_cast<int>(i));
        for (int x = 0; x < a.letters; ++x) {
            std::set<int> next;
            for (int q : cur) {
                const auto& d = delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(x)];
                next.insert(d.begin(), d.end());
            }
            if (next.empty()) continue;
            auto [it, fresh] = index.try_emplace(next, static_cast<int>(queue.size()));
            if (fresh) queue.push_back(next);
            out.transitions.push_back({static_cast<int>(i), x, it->second});
        }
    }
    out.states = static_cast<int>(queue.size());
    out.initial = 0;
    return out;
}

Automaton complete(const Automaton& a) {
    Automaton d = determinize(a);
    if (d.is_complete()) return d;
    std::set<std::pair<int, int>> have;
    for (const auto& t : d.transitions) have.insert({t[0], t[1]});
    const int sink = d.states++;
    for (int q = 0; q < d.states; ++q)
        for (int x = 0; x < d.letters; ++x)
            if (!have.count({q, x})) d.transitions.push_back({q, x, sink});
    return d;
}

namespace {

Automaton product(const Automaton& a, const Automaton& b, bool need_both) {
    if (a.letters != b.letters) throw DomainError("automata use different alphabets");
    Automaton x = complete(a), y = complete(b);
    auto step = [](const Automaton& m) {
        std::vector<std::vector<int>> s(static_cast<std::size_t>(m.states), std::vector<int>(static_cast<std::size_t>(m.letters)));
        for (const auto& t : m.transitions) s[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[1])] = t[2];
        return s;
    };
    auto sx = step(x), sy = step(y);
    std::set<int> ax(x.accepting.begin(), x.accepting.end()), ay(y.accepting.begin(), y.accepting.end());
    Automaton out;
    out.letters = a.letters;
    out.states = x.states * y.states;
    out.initial = x.initial * y.states + y.initial;
    for (int p = 0; p < x.states; ++p)
        for (int q = 0; q < y.states; ++q) {
            const int id = p * y.states + q;
            const bool in_x = ax.count(p) > 0, in_y = ay.count(q) > 0;
            if (need_both ? (in_x && in_y) : (in_x || in_y)) out.accepting.push_back(id);
            for (int l = 0; l < a.letters; ++l)
                out.transitions.push_back(
                    {id, l, sx[static_cast<std::size_t>(p)][static_cast<std::size_t>(l)] * y.states +
                                sy[static_cast<std::size_t>(q)][static_cast<std::size_t>(l)]});
        }
    return out;
}

}  // namespace

Automaton union_of(const Automaton& a, const Automaton& b) { return product(a, b, false); }
Automaton intersection_of(const Automaton& a, const Automaton& b) { return product(a, b, true); }

Automaton complement_of(const Automaton& a) {
    Automaton c = complete(a);
    std::set<int> acc(c.accepting.begin(), c.accepting.end());
    c.accepting.clear();
    for (int q = 0; q < c.states; ++q)
        if (!acc.count(q)) c.accepting.push_back(q);
    return c;
}

Automaton full_language(int letters) {
    Automaton a;
    a.letters = letters;
    a.states = 1;
    a.accepting = {0};
    for (int x = 0; x < letters; ++x) a.transitions.push_back({0, x, 0});
    return a;
}

RatFunc gen_function(const Automaton& a) {
    Automaton d = determinize(a);
    const auto n = static_cast<std::size_t>(d.states);
    RatFuncMatrix sys(n, std::vector<RatFunc>(n));
    for (std::size_t i = 0; i < n; ++i) sys[i][i] = RatFunc(1);
    for (const auto& t : d.transitions)
        sys[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[2])] -=
            RatFunc(Poly::monomial(1, letter_degree(t[1])));
    std::vector<RatFunc> rhs(n, RatFunc(0));
    for (int q : d.accepting) rhs[static_cast<std::size_t>(q)] = RatFunc(1);
    return solve_ratfunc(std::move(sys), std::move(rhs))[static_cast<std::size_t>(d.initial)];
}

Rational alpha(const Automaton& a) {
    // (I - M(1/2)) y = accepting indicator, solved over Q; rows of M(1/2) sum to below 1/2.
    Automaton d = determinize(a);
    const auto n = static_cast<std::size_t>(d.states);
    std::vector<std::vector<Rational>> sys(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) sys[i][i] = 1;
    for (const auto& t : d.transitions)
        sys[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[2])] -= pow2(-letter_degree(t[1]));
    for (int q : d.accepting) sys[static_cast<std::size_t>(q)][n] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (sys[p][c] == 0) ++p;
        std::swap(sys[p], sys[c]);
        const Rational inv = 1 / sys[c][c];
        for (std::size_t k = c; k <= n; ++k) sys[c][k] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || sys[r][c] == 0) continue;
            const Rational f = sys[r][c];
            for (std::size_t k = c; k <= n; ++k) sys[r][k] -= f * sys[c][k];
        }
    }
    return sys[static_cast<std::size_t>(d.initial)][n] / 8;
}

std::vector<Integer> degree_counts(const Automaton& a, int max_degree) {
    Automaton d = determinize(a);
    const auto n = static_cast<std::size_t>(d.states);
    std::vector<std::vector<Integer>> reach(static_cast<std::size_t>(max_degree) + 1, std::vector<Integer>(n));
    reach[0][static_cast<std::size_t>(d.initial)] = 1;
    for (int j = 1; j <= max_degree; ++j)
        for (const auto& t : d.transitions) {
            const int from = j - letter_degree(t[1]);
            if (from < 0) continue;
            reach[static_cast<std::size_t>(j)][static_cast<std::size_t>(t[2])] +=
                reach[static_cast<std::size_t>(from)][static_cast<std::size_t>(t[0])];
        }
    std::vector<Integer> out(static_cast<std::size_t>(max_degree) + 1);
    for (int j = 0; j <= max_degree; ++j)
        for (int q : d.accepting) out[static_cast<std::size_t>(j)] += reach[static_cast<std::size_t>(j)][static_cast<std::size_t>(q)];
    return out;
}

std::vector<Integer> all_word_counts(int letters, int max_degree) {
    std::vector<Integer> c(static_cast<std::size_t>(max_degree) + 1);
    c[0] = 1;
    for (int j = 1; j <= max_degree; ++j)
        for (int x = 0; x < letters; ++x)
            if (j - letter_degree(x) >= 0) c[static_cast<std::size_t>(j)] += c[static_cast<std::size_t>(j - letter_degree(x))];
    return c;
}

namespace {

// (1/8) Σ_{j>D} (all words of degree j) 2^{-j}, exactly.
class AllWordsTail {
public:
    explicit AllWordsTail(int letters) : letters_(letters) {
        Rational ratio = 0;
        for (int x = 0; x < letters; ++x) ratio += pow2(-letter_degree(x));
        total_ = 1 / (1 - ratio);
        counts_ = {Integer(1)};
        head_ = 1;
    }
    // Extends the head to degree d (one step at a time) and returns the tail past d.
    Rational advance() {
        const int j = static_cast<int>(counts_.size());
        Integer c = 0;
        for (int x = 0; x < letters_; ++x)
            if (j - letter_degree(x) >= 0) c += counts_[static_cast<std::size_t>(j - letter_degree(x))];
        counts_.push_back(c);
        head_ += Rational(c) * pow2(-j);
        return (total_ - head_) / 8;
    }
    Rational current() const { return (total_ - head_) / 8; }
    int degree() const { return static_cast<int>(counts_.size()) - 1; }

private:
    int letters_;
    Rational total_, head_;
    std::vector<Integer> counts_;
};

}  // namespace

Enclosure alpha_enumerated(const Automaton& a, const Rational& eps) {
    if (eps <= 0) throw DomainError("eps must be positive");
    Automaton d = determinize(a);
    AllWordsTail tail(d.letters);
    while (tail.current() > eps) tail.advance();
    const int D = tail.degree();
    auto counts = degree_counts(d, D);
    Rational lo = 0;
    for (int j = 0; j <= D; ++j) lo += Rational(counts[static_cast<std::size_t>(j)]) * pow2(-j);
    lo /= 8;
    return {lo, lo + tail.current()};
}

Enclosure alpha_enumerated(const std::function<bool(const std::vector<int>&)>& in_language, int letters,
                           const Rational& eps) {
    if (eps <= 0) throw DomainError("eps must be positive");
    if (letters < 1) throw DomainError("need at least one letter");
    AllWordsTail tail(letters);
    while (tail.current() > eps) tail.advance();
    const int D = tail.degree();
    Rational lo = 0;
    std::vector<int> word;
    std::function<void(int)> walk = [&](int degree) {
        if (in_language(word)) lo += pow2(-degree);
        for (int x = 0; x < letters; ++x) {
            if (degree + letter_degree(x) > D) continue;
            word.push_back(x);
            walk(degree + letter_degree(x));
            word.pop_back();
        }
    };
    walk(0);
    lo /= 8;
    return {lo, lo + tail.current()};
}

Enclosure balanced_alpha(int r, int s, const Rational& eps) {
    if (r < 1 || s <= r) throw DomainError("need 1 <= r < s");
    if (eps <= 0) throw DomainError("eps must be positive");
    const Rational rho = pow2(-(r + s + 2));
    const Rational ratio_bound = 4 * rho;
    Rational sum = 0, term = 1;  // term = C(2l, l) rho^l
    for (long l = 0;; ++l) {
        sum += term;
        Rational next = term * Rational(2 * (2 * l + 1), l + 1) * rho;
        Rational tail = next / (1 - ratio_bound);
        if (tail / 8 <= eps) return {sum / 8, (sum + tail) / 8};
        term = next;
    }
}

Rational balanced_alpha_squared(int r, int s) {
    if (r < 1 || s <= r) throw DomainError("need 1 <= r < s");
    const Rational p = pow2(r + s);
    return p / (p - 1) / 64;
}

bool encloses_balanced_value(const Enclosure& e, int r, int s) {
    const Rational v2 = balanced_alpha_squared(r, s);
    return e.lo >= 0 && e.lo * e.lo <= v2 && v2 <= e.hi * e.hi;
}

}  // namespace l2rank
