#ifndef L2RANK_DYNAMICS_HPP
#define L2RANK_DYNAMICS_HPP

#include "l2rank/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace l2rank {

/// A coefficient was required to be constant on a set where it is not.
class NonConstant : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Continuation { Periodic, Constant };

/// Radices n_1, n_2, ... of a mixed-radix product, described by a finite list
/// and a rule for continuing it.
class RadixSequence {
public:
    RadixSequence() = default;
    RadixSequence(std::vector<int> listed, Continuation rule);

    int radix(int coord) const;  ///< n_coord, coord >= 1
    Integer partial_product(int m) const;  ///< p_m = n_1 ... n_m
    const std::vector<int>& listed() const { return listed_; }
    Continuation rule() const { return rule_; }
    bool operator==(const RadixSequence&) const = default;

private:
    std::vector<int> listed_;
    Continuation rule_ = Continuation::Constant;
};

/// Either the bilateral binary shift space or a one-sided mixed-radix
/// odometer (coordinates 1, 2, ...).
class Space {
public:
    static Space binary();
    static Space odometer(RadixSequence radices);

    bool is_binary() const { return binary_; }
    int radix(int coord) const;
    const RadixSequence& radices() const { return radices_; }
    bool operator==(const Space&) const = default;

private:
    bool binary_ = true;
    RadixSequence radices_;
};

/// Finite set of coordinate constraints, sorted by coordinate.
class Cylinder {
public:
    using Constraint = std::pair<int, int>;  // (coordinate, symbol)

    Cylinder() = default;
    Cylinder(std::initializer_list<Constraint> cs);
    explicit Cylinder(std::vector<Constraint> cs);

    /// Consecutive symbols starting at `first`.
    static Cylinder word(int first, const std::vector<int>& symbols);
    /// Odometer prefix: coordinates 1..symbols.size().
    static Cylinder prefix(const std::vector<int>& symbols);

    const std::vector<Constraint>& constraints() const { return cs_; }
    std::size_t size() const { return cs_.size(); }
    bool is_whole_space() const { return cs_.empty(); }
    std::optional<int> symbol_at(int coord) const;
    int min_coord() const;
    int max_coord() const;

    /// Copy with every coordinate moved by `delta`.
    Cylinder translated(int delta) const;
    Cylinder with(int coord, int symbol) const;

    bool operator==(const Cylinder&) const = default;
    auto operator<=>(const Cylinder&) const = default;

private:
    std::vector<Constraint> cs_;
};

std::string to_string(const Cylinder& c);

std::optional<Cylinder> intersect(const Cylinder& a, const Cylinder& b);
bool disjoint(const Cylinder& a, const Cylinder& b);
/// a ⊆ b
bool subset(const Cylinder& a, const Cylinder& b);

Rational measure(const Space& space, const Cylinder& c);

/// Every cylinder of `space` constraining exactly `coords` that lies inside `c`.
std::vector<Cylinder> refine(const Space& space, const Cylinder& c, const std::vector<int>& coords);

bool is_full_prefix(const Cylinder& c);
/// Mixed-radix index a_1 + a_2 n_1 + ... of a full prefix.
Integer prefix_index(const Space& space, const Cylinder& c);
Cylinder prefix_from_index(const Space& space, int m, Integer index);

/// T^j(C). Binary: constraint at p moves to p - j. Odometer: prefix index l
/// moves to (l + j) mod p_m; requires a full prefix.
Cylinder shift_image(const Space& space, const Cylinder& c, long j);

/// Finite rational combination of cylinder indicators.
class LCFunction {
public:
    struct Term {
        Rational coef;
        Cylinder set;
        bool operator==(const Term&) const = default;
    };

    LCFunction() = default;
    static LCFunction constant(const Rational& c);
    static LCFunction indicator(const Cylinder& c, const Rational& coef = 1);

    const std::vector<Term>& terms() const { return terms_; }
    bool has_no_terms() const { return terms_.empty(); }
    void add_term(const Rational& coef, const Cylinder& set);

    LCFunction& operator+=(const LCFunction& o);
    LCFunction& operator-=(const LCFunction& o);
    LCFunction& operator*=(const Rational& s);
    friend LCFunction operator+(LCFunction a, const LCFunction& b) { return a += b; }
    friend LCFunction operator-(LCFunction a, const LCFunction& b) { return a -= b; }
    friend LCFunction operator*(LCFunction a, const Rational& s) { return a *= s; }
    friend LCFunction operator*(const Rational& s, LCFunction a) { return a *= s; }
    /// Pointwise product.
    friend LCFunction operator*(const LCFunction& a, const LCFunction& b);

    /// Structural equality of normalized term lists.
    bool operator==(const LCFunction& o) const { return terms_ == o.terms_; }

    /// Smallest and largest constrained coordinate (0,0 when no constraints).
    std::pair<int, int> coordinate_hull() const;

private:
    void normalize();
    std::vector<Term> terms_;  // sorted by cylinder, no zero coefficients, no repeated cylinders
};

/// f ∘ T^j, i.e. χ_S ↦ χ_{T^{-j} S}.
LCFunction compose_shift(const Space& space, const LCFunction& f, long j);

/// The value of f on C if f is constant there.
std::optional<Rational> lc_eval_on(const Space& space, const LCFunction& f, const Cylinder& c);
/// As lc_eval_on, but throws NonConstant.
Rational value_on(const Space& space, const LCFunction& f, const Cylinder& c);

/// f ≡ g as functions on the whole space.
bool same_function(const Space& space, const LCFunction& f, const LCFunction& g);
bool is_zero_function(const Space& space, const LCFunction& f);

std::string to_string(const LCFunction& f);

}  // namespace l2rank

#endif
