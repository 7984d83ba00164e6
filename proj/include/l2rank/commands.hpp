#ifndef L2RANK_COMMANDS_HPP
#define L2RANK_COMMANDS_HPP

#include "l2rank/serialize.hpp"

#include <ostream>
#include <string>

namespace l2rank {

/// Outcome of one named invariant suite.
struct SuiteReport {
    std::string suite;
    std::size_t passed = 0, failed = 0;
    Json failures = Json::array();  ///< minimal counterexamples, first few only
    Json to_json() const;
};

/// Count checks for m in [m_lo, m_hi], l in [l_lo, l_hi], and the sum rule at `terms` terms.
SuiteReport macci_suite(int m_lo, int m_hi, int l_lo, int l_hi, int terms);
/// Coverage grows with depth and 1 - coverage(D) <= base^(D - offset) for D <= depth.
SuiteReport coverage_suite(const Scheme& scheme, int depth, const Rational& base, int offset);
/// Coverage equals 1 at every odometer level up to max_level.
SuiteReport odometer_coverage_suite(const RadixSequence& radices, int max_level);
/// Rank axioms on random exact matrices over ℚ and ℚ(s).
SuiteReport sylvester_suite(unsigned seed, int samples);

/// Command-line entry point. Exit codes: 0 success, 1 invariant failure,
/// 2 input or configuration error, 3 elimination memory cap exceeded.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace l2rank

#endif
