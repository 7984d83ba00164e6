#ifndef L2RANK_SCHEME_HPP
#define L2RANK_SCHEME_HPP

#include "l2rank/dynamics.hpp"
#include "l2rank/exactla.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace l2rank {

/// An element could not be certified as a member of the subalgebra attached to a scheme.
class Reject : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Base set E and a partition of its complement.
class Scheme {
public:
    Scheme(Space space, Cylinder base, std::vector<Cylinder> parts, std::string tag);

    /// E = [1 1̲], parts [0 0̲], [0 1̲], [1 0̲].
    static Scheme lamplighter_half();
    /// E = 2n+1 ones centred at 0; parts are all other words on -n..n, ascending.
    static Scheme lamplighter(int n);
    /// E = zero prefix of length m; parts are the other prefixes by mixed-radix index.
    static Scheme odometer_level(const RadixSequence& radices, int m);

    const Space& space() const { return space_; }
    const Cylinder& base() const { return base_; }
    const std::vector<Cylinder>& parts() const { return parts_; }
    const std::string& tag() const { return tag_; }

    /// Fixed point used by the coefficient certificate: all ones (binary) or all zeros (odometer).
    int fixed_point_symbol() const { return space_.is_binary() ? 1 : 0; }

    /// Coordinate range [lo, hi] when E and every part fix exactly the symbols on
    /// that range (binary only).
    std::optional<std::pair<int, int>> sliding_block() const;

private:
    Space space_;
    Cylinder base_;
    std::vector<Cylinder> parts_;
    std::string tag_;
};

struct Window {
    std::vector<int> itinerary;  ///< part indices of T^1 W .. T^{|W|-1} W
    int length = 0;              ///< |W|
    Cylinder cylinder;
    Rational measure;
    int depth() const { return length - 1; }
};

struct StopRule {
    std::optional<int> max_depth;
    std::optional<Rational> coverage_target;
    static StopRule depth(int d) { return StopRule{d, std::nullopt}; }
    static StopRule coverage(Rational c) { return StopRule{std::nullopt, std::move(c)}; }
};

struct WindowSet {
    std::vector<Window> windows;  ///< sorted by (depth, itinerary)
    Rational coverage;            ///< Σ μ(W)|W|
    int depth = 0;
};

/// Depth-first over itineraries in lexicographic order; empty cylinders pruned.
void for_each_window(const Scheme& scheme, int max_depth, const std::function<void(const Window&)>& visit);
WindowSet enumerate_windows(const Scheme& scheme, const StopRule& stop);
/// The window with this itinerary, if nonempty.
std::optional<Window> window_from_itinerary(const Scheme& scheme, const std::vector<int>& itinerary);

// ------------------------------------------------------------ crossed products

/// Σ_j f_j t^j with t f t^{-1} = f ∘ T^{-1}.
class CrossedElement {
public:
    CrossedElement() = default;
    static CrossedElement scalar(const Rational& c);
    static CrossedElement monomial(const LCFunction& f, long power);
    static CrossedElement monomial(const Rational& coef, const Cylinder& set, long power);

    const std::map<long, LCFunction>& terms() const { return terms_; }
    LCFunction coefficient(long power) const;
    bool is_zero() const { return terms_.empty(); }
    void add(long power, const LCFunction& f);

    CrossedElement& operator+=(const CrossedElement& o);
    CrossedElement& operator-=(const CrossedElement& o);
    CrossedElement& operator*=(const Rational& s);
    friend CrossedElement operator+(CrossedElement a, const CrossedElement& b) { return a += b; }
    friend CrossedElement operator-(CrossedElement a, const CrossedElement& b) { return a -= b; }
    friend CrossedElement operator*(const Rational& s, CrossedElement a) { return a *= s; }
    bool operator==(const CrossedElement&) const = default;

private:
    std::map<long, LCFunction> terms_;
};

CrossedElement multiply(const Space& space, const CrossedElement& a, const CrossedElement& b);
CrossedElement adjoint(const Space& space, const CrossedElement& a);
/// Equal as elements (coefficients compared as functions).
bool equivalent(const Space& space, const CrossedElement& a, const CrossedElement& b);

class CrossedMatrix {
public:
    using Index = std::pair<std::size_t, std::size_t>;

    CrossedMatrix() = default;
    explicit CrossedMatrix(std::size_t size) : size_(size) {}
    static CrossedMatrix identity(std::size_t size);
    static CrossedMatrix scalar(const CrossedElement& a);

    std::size_t size() const { return size_; }
    const std::map<Index, CrossedElement>& entries() const { return entries_; }
    CrossedElement at(std::size_t r, std::size_t c) const;
    void add(std::size_t r, std::size_t c, const CrossedElement& a);
    /// Adds coef·χ_set·t^power at (r, c).
    void add(std::size_t r, std::size_t c, const Rational& coef, const Cylinder& set, long power);

    friend CrossedMatrix operator+(const CrossedMatrix& a, const CrossedMatrix& b);
    bool operator==(const CrossedMatrix&) const = default;

private:
    std::size_t size_ = 0;
    std::map<Index, CrossedElement> entries_;
};

CrossedMatrix multiply(const Space& space, const CrossedMatrix& a, const CrossedMatrix& b);
CrossedMatrix adjoint(const Space& space, const CrossedMatrix& a);
CrossedMatrix block_diag(const CrossedMatrix& a, const CrossedMatrix& b);
bool equivalent(const Space& space, const CrossedMatrix& a, const CrossedMatrix& b);

/// Level-major compression: entry (r·|W| + i', c·|W| + i' - m) = f_m(T^{i'} W)
/// for the power-m coefficient f_m of A[r][c]; values landing outside the tower are dropped.
/// Throws NonConstant when some needed coefficient is not constant on T^{i'} W.
QMatrix compress(const Scheme& scheme, const CrossedMatrix& a, const Window& w);
QMatrix compress(const Scheme& scheme, const CrossedElement& a, const Window& w);

// --------------------------------------------------------- generator algebra

/// Evaluates the generator language: g0 g1 ... name the parts in order,
/// `+ - *`, postfix `'` and adj(e) for adjoints, rational literals.
CrossedElement generator_expr_eval(const Scheme& scheme, const std::string& expr);

/// Finite-depth test that f is a degree-zero coefficient of the subalgebra:
/// constant on T^i W for windows up to depth 2R+2 and constant near the fixed point.
/// Returns the failure reason, or nullopt when accepted.
std::optional<std::string> degree_zero_check(const Scheme& scheme, const LCFunction& f);

struct MembershipWitness {
    std::map<CrossedMatrix::Index, std::string> expressions;  ///< nonzero entries only
};

/// Generator expressions reproducing every entry; each is re-evaluated and
/// compared with the input before being returned. Throws Reject.
MembershipWitness membership_translate(const Scheme& scheme, const CrossedMatrix& a);
std::string membership_translate(const Scheme& scheme, const CrossedElement& a);

// ------------------------------------------------------ aggregated windows

/// Windows sharing one compressed matrix, counted together.
struct WindowClass {
    int length = 0;
    Integer count;      ///< number of windows in the class
    Rational measure;   ///< measure of each window
    QMatrix matrix;     ///< common compression
    std::vector<int> sample_symbols;  ///< symbols of one member on its constrained range
};

/// Sliding-block schemes only: walks window symbol strings while merging all
/// strings that produce identical coefficient values, so classes rather than
/// individual windows are visited. Same compressions and measures as the
/// per-window route. Classes are visited in a deterministic order.
void for_each_window_class(const Scheme& scheme, const CrossedMatrix& a, int max_depth,
                           const std::function<void(WindowClass&&)>& visit);

}  // namespace l2rank

#endif
