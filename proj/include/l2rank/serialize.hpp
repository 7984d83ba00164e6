#ifndef L2RANK_SERIALIZE_HPP
#define L2RANK_SERIALIZE_HPP

#include "l2rank/betti.hpp"
#include "l2rank/odometer.hpp"
#include "l2rank/ratlang.hpp"

#include <json.hpp>

#include <string>

namespace l2rank {

using Json = nlohmann::ordered_json;

/// Rationals travel as "p/q" strings; plain JSON integers are accepted on input.
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// {"coords": {"-1": 0, "0": 0}} or, on the odometer, {"prefix": [0, 2]}.
Json cylinder_to_json(const Space& space, const Cylinder& c);
Cylinder cylinder_from_json(const Space& space, const Json& j);

/// {"size": k, "entries": [{"row", "col", "terms": [{"coef", "power", "cylinder"}]}]}.
/// An entry may carry "expr" (generator expression) instead of "terms" when a scheme is given.
Json crossed_matrix_to_json(const Space& space, const CrossedMatrix& a);
CrossedMatrix crossed_matrix_from_json(const Space& space, const Json& j, const Scheme* scheme = nullptr);

/// {"letters": n, "states": N, "initial": 0, "accepting": [..], "transitions": [[from, letter, to], ..]}.
/// "letters" may be omitted; it then defaults to one more than the largest letter used.
Json automaton_to_json(const Automaton& a);
Automaton automaton_from_json(const Json& j);

Json enclosure_to_json(const Enclosure& e, int digits);

Json read_json_file(const std::string& path);

}  // namespace l2rank

#endif
