#ifndef L2RANK_BETTI_HPP
#define L2RANK_BETTI_HPP

#include "l2rank/scheme.hpp"

#include <optional>
#include <string>
#include <vector>

namespace l2rank {

/// Certified interval [lo, hi] of exact rationals.
struct Enclosure {
    Rational lo, hi;
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    Rational width() const { return hi - lo; }
};

enum class Engine { Auto, Explicit, Aggregated };

struct BettiOptions {
    Engine engine = Engine::Auto;
    unsigned threads = 0;  ///< 0 = hardware concurrency
    bool certify = true;   ///< run membership_translate first
};

struct BettiReport {
    Enclosure enclosure;
    Rational coverage;  ///< Σ μ(W)|W| over the enumerated windows
    Integer windows;    ///< number of windows summed
    std::size_t classes = 0;  ///< distinct compressions evaluated
    int depth = 0;
    Engine engine = Engine::Explicit;
};

/// lo = Σ μ(W)·dim ker compress(A, W); hi = lo + k·(1 − coverage).
BettiReport betti_enclosure(const Scheme& scheme, const CrossedMatrix& a, const StopRule& stop,
                            const BettiOptions& opts = {});

/// Smallest depth whose windows reach the coverage target.
int depth_for_coverage(const Scheme& scheme, const Rational& target);
/// Coverage Σ μ(W)|W| of all windows up to `depth`.
Rational coverage_at_depth(const Scheme& scheme, int depth);

/// χ_{X∖E} t + t⁻¹ χ_{X∖E} for the scheme's base set E.
CrossedMatrix shift_sum_element(const Scheme& scheme);
/// 3 / (1 + 2^{2n+3}).
Rational closed_form_an(int n);

// ------------------------------------------------------------ series values

/// Polynomials p_0..p_n (coefficients lowest first) and bases d_1..d_n.
struct PolySpec {
    std::vector<std::vector<Integer>> polys;
    std::vector<Integer> bases;

    /// Throws DomainError unless coefficients are non-negative, every p_i has
    /// degree >= 1, p_0 has linear coefficient >= 1, and every base is >= 2.
    void validate() const;
    /// p_0(k) + Σ p_i(k) d_i^k
    Integer exponent(const Integer& k) const;
};

Integer eval_poly(const std::vector<Integer>& coefs, const Integer& x);

/// Σ_{k>=1} 2^{-exponent(k)} to within eps.
Enclosure series_enclosure(const PolySpec& spec, const Rational& eps);

enum class Template { Eleven, SinglePoly, PolyTimesPower, General };

std::string template_name(Template t);
Template parse_template(const std::string& name);

/// Expected value q0 + q1 · Σ_k 2^{-e(k)}.
struct ClosedForm {
    std::optional<Rational> q0;
    Rational q1;
    PolySpec series;
};

/// Template inputs: eleven takes no polynomials; single_poly {p}; poly_times_power {p} with
/// bases {d}; general p_0..p_n with bases d_1..d_n.
ClosedForm expected_closed_form(Template t, const PolySpec& spec);

/// Enclosure of q0 + q1·series; needs q0.
Enclosure closed_form_enclosure(const ClosedForm& cf, const Rational& eps);

/// The rational part measured from an enclosure: the unique multiple of 1/8
/// within the enclosure's width of (value − q1·series), when one exists.
std::optional<Rational> measure_offset(const Enclosure& value, const ClosedForm& cf);

/// Matrix element of the template over the lamplighter_half scheme.
CrossedMatrix factory(Template t, const PolySpec& spec = {});

/// Levels of the two graph anchors: the first polynomial row and the last graph row.
struct TemplateLevels {
    std::size_t entry, exit;
};
TemplateLevels template_levels(Template t, const PolySpec& spec = {});

// ------------------------------------------------------------ m-acci numbers

class MacciTable {
public:
    explicit MacciTable(int m);
    int m() const { return m_; }
    const Integer& operator()(int k);

private:
    int m_;
    std::vector<Integer> values_;
};

Integer macci(int m, int k);
/// Brute force: binary strings of length l with at most m-1 consecutive ones
/// number Fib_m(l + 2).
bool macci_count_check(int m, int l);

struct MacciSum {
    Rational target;    ///< 2^{m-1}(2^{m+1}-1)/(2^{m+2}+1)
    Rational partial;   ///< Σ_{k=1}^{K} Fib_m(2k) 4^{-k}
    Rational tail;      ///< certified bound on the remaining terms
    Rational exact;     ///< value of the full series from its generating function
    bool within() const { return partial <= target && target <= partial + tail; }
};
MacciSum macci_sum(int m, int terms = 200);

// ---------------------------------------------------------- window anatomy

/// Window [1 1̲ 0^{k_1} 1 ... 0^{k_r} 1 1] of the lamplighter_half scheme.
Window half_window(const Scheme& half, const std::vector<int>& zero_blocks);
/// Zero-block lengths of a lamplighter_half window.
std::vector<int> zero_blocks(const Window& w);

struct Component {
    std::vector<std::size_t> vertices;  ///< level * |W| + position
    std::size_t kernel_dim = 0;
};
/// Connected components of the square graph with their kernel dimensions.
std::vector<Component> component_census(const QMatrix& m);

/// DOT text with vertices "L{level}P{pos}" and one labelled edge col -> row per entry.
std::string graph_export(const QMatrix& m, std::size_t window_length, const std::string& name = "E");

}  // namespace l2rank

#endif
