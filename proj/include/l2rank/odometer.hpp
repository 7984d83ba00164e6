#ifndef L2RANK_ODOMETER_HPP
#define L2RANK_ODOMETER_HPP

#include "l2rank/polynomial.hpp"
#include "l2rank/scheme.hpp"

#include <string>
#include <vector>

namespace l2rank {

/// Exponent of a prime in a supernatural number, possibly infinite.
struct PrimeExponent {
    bool infinite = false;
    unsigned long value = 0;
    bool operator==(const PrimeExponent&) const = default;
};

/// The formal product n_1 n_2 ... of a radix sequence.
class Supernatural {
public:
    explicit Supernatural(RadixSequence radices);

    const RadixSequence& radices() const { return radices_; }
    Integer partial_product(int m) const { return radices_.partial_product(m); }
    /// Primes dividing some radix, ascending.
    const std::vector<unsigned long>& primes() const { return primes_; }
    PrimeExponent exponent(unsigned long prime) const;
    std::string to_string() const;

private:
    RadixSequence radices_;
    std::vector<unsigned long> primes_;
};

/// Whether the denominator of x divides some partial product.
bool znumber_contains(const Supernatural& n, const Rational& x);

/// Dense matrix over ℚ[s, s⁻¹].
using LaurentMatrix = std::vector<std::vector<LaurentPoly>>;

LaurentMatrix laurent_multiply(const LaurentMatrix& a, const LaurentMatrix& b);
/// Transpose combined with s ↦ s⁻¹.
LaurentMatrix laurent_adjoint(const LaurentMatrix& a);
std::string to_string(const LaurentMatrix& m);

/// Smallest level whose prefixes determine every coefficient (at least 1).
int element_level(const CrossedMatrix& a);

/// Block (r, c) of size p_m holds the image of A[r][c]; t acts as the companion
/// matrix with s in the corner, χ_S as the diagonal of prefix indices in S.
LaurentMatrix realize_at_level(const Space& space, const CrossedMatrix& a, int m);
/// Image of a level-m realization of a k×k element under the inclusion into level m+1.
LaurentMatrix embed_level(const Space& space, const LaurentMatrix& realized, std::size_t k, int m);

std::size_t laurent_rank(const LaurentMatrix& m);

struct OdoRank {
    Rational rank;
    int level = 0;
    Integer p_m;
};
/// rank over ℚ(s) of the realization divided by p_m; level defaults to the element's level.
OdoRank odo_rank(const Space& space, const CrossedMatrix& a, std::optional<int> level = std::nullopt);
/// Rank at level m equals the rank of its embedding at level m+1.
bool level_consistency(const Space& space, const CrossedMatrix& a, int m);

/// χ of the prefix with index i at level m, i.e. the i-th diagonal unit.
CrossedElement level_unit(const Space& space, int m, long i);
/// Σ_{i<count} of the diagonal units at level m.
CrossedElement diagonal_projection(const Space& space, int m, long count);

}  // namespace l2rank

#endif
