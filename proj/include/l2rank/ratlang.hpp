#ifndef L2RANK_RATLANG_HPP
#define L2RANK_RATLANG_HPP

#include "l2rank/betti.hpp"
#include "l2rank/polynomial.hpp"

#include <array>
#include <functional>
#include <vector>

namespace l2rank {

/// Finite automaton over letters x_1..x_n (index 0..n-1); letter i has degree i+2.
struct Automaton {
    int letters = 1;
    int states = 1;
    int initial = 0;
    std::vector<int> accepting;
    std::vector<std::array<int, 3>> transitions;  ///< (from, letter, to)

    void validate() const;
    bool is_deterministic() const;
    bool is_complete() const;
    bool accepts(const std::vector<int>& word) const;
};

int letter_degree(int letter);
int word_degree(const std::vector<int>& word);

Automaton determinize(const Automaton& a);
/// Deterministic and complete (adds a sink when needed).
Automaton complete(const Automaton& a);
Automaton union_of(const Automaton& a, const Automaton& b);
Automaton intersection_of(const Automaton& a, const Automaton& b);
Automaton complement_of(const Automaton& a);

/// All words over n letters, including the empty word.
Automaton full_language(int letters);

/// Σ_{w∈L} x^{d(w)} as an exact rational function.
RatFunc gen_function(const Automaton& a);
/// (1/8) s(1/2)
Rational alpha(const Automaton& a);

/// Accepted words counted by degree 0..max_degree.
std::vector<Integer> degree_counts(const Automaton& a, int max_degree);
/// All words over n letters counted by degree 0..max_degree.
std::vector<Integer> all_word_counts(int letters, int max_degree);

/// Enumeration with the exact all-words tail, stopping once the tail is at most eps.
Enclosure alpha_enumerated(const Automaton& a, const Rational& eps);
Enclosure alpha_enumerated(const std::function<bool(const std::vector<int>&)>& in_language, int letters,
                           const Rational& eps);

/// (1/8) Σ_l C(2l, l) 2^{-(r+s+2) l}: words with equally many x_r and x_s.
Enclosure balanced_alpha(int r, int s, const Rational& eps);
/// Square of the closed form (1/8) sqrt(2^t / (2^t - 1)), t = r + s.
Rational balanced_alpha_squared(int r, int s);
/// lo² <= v² <= hi² for the closed-form value v.
bool encloses_balanced_value(const Enclosure& e, int r, int s);

}  // namespace l2rank

#endif
