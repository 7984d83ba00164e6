#include "l2rank/serialize.hpp"

#include <fstream>
#include <sstream>

namespace l2rank {

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    throw DomainError("expected a rational string such as \"-3/4\", got " + j.dump());
}

Json cylinder_to_json(const Space& space, const Cylinder& c) {
    if (!space.is_binary() && is_full_prefix(c)) {
        Json prefix = Json::array();
        for (auto [p, s] : c.constraints()) prefix.push_back(s);
        return Json{{"prefix", prefix}};
    }
    Json coords = Json::object();
    for (auto [p, s] : c.constraints()) coords[std::to_string(p)] = s;
    return Json{{"coords", coords}};
}

Cylinder cylinder_from_json(const Space& space, const Json& j) {
    if (!j.is_object()) throw DomainError("cylinder must be an object");
    std::vector<Cylinder::Constraint> cs;
    if (j.contains("prefix")) {
        if (space.is_binary()) throw DomainError("prefix cylinders belong to the odometer");
        int coord = 1;
        for (const auto& s : j.at("prefix")) cs.emplace_back(coord++, s.get<int>());
    } else if (j.contains("coords")) {
        for (const auto& [key, val] : j.at("coords").items()) {
            int p = 0;
            try {
                p = std::stoi(key);
            } catch (const std::exception&) {
                throw DomainError("bad cylinder coordinate '" + key + "'");
            }
            cs.emplace_back(p, val.get<int>());
        }
    } else {
        throw DomainError("cylinder needs \"coords\" or \"prefix\"");
    }
    for (auto [p, s] : cs) {
        if (!space.is_binary() && p < 1) throw DomainError("odometer coordinates start at 1");
        if (s < 0 || s >= space.radix(space.is_binary() ? 1 : p))
            throw DomainError("symbol " + std::to_string(s) + " out of range at coordinate " + std::to_string(p));
    }
    return Cylinder(std::move(cs));
}

Json crossed_matrix_to_json(const Space& space, const CrossedMatrix& a) {
    Json entries = Json::array();
    for (const auto& [ix, e] : a.entries()) {
        Json terms = Json::array();
        for (const auto& [power, f] : e.terms())
            for (const auto& t : f.terms())
                terms.push_back(Json{{"coef", rational_to_json(t.coef)}, {"power", power},
                                     {"cylinder", cylinder_to_json(space, t.set)}});
        entries.push_back(Json{{"row", ix.first}, {"col", ix.second}, {"terms", terms}});
    }
    return Json{{"size", a.size()}, {"entries", entries}};
}

CrossedMatrix crossed_matrix_from_json(const Space& space, const Json& j, const Scheme* scheme) {
    try {
        const auto size = j.at("size").get<std::size_t>();
        if (size == 0) throw DomainError("matrix size must be positive");
        CrossedMatrix m(size);
        for (const auto& entry : j.at("entries")) {
            const auto r = entry.at("row").get<std::size_t>(), c = entry.at("col").get<std::size_t>();
            if (entry.contains("expr")) {
                if (!scheme) throw DomainError("generator expressions need a scheme");
                m.add(r, c, generator_expr_eval(*scheme, entry.at("expr").get<std::string>()));
                continue;
            }
            for (const auto& t : entry.at("terms")) {
                const Cylinder set = t.contains("cylinder") ? cylinder_from_json(space, t.at("cylinder")) : Cylinder{};
                m.add(r, c, rational_from_json(t.at("coef")), set, t.value("power", 0L));
            }
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed matrix document: ") + e.what());
    }
}

Json automaton_to_json(const Automaton& a) {
    Json tr = Json::array();
    for (const auto& t : a.transitions) tr.push_back({t[0], t[1], t[2]});
    return Json{{"letters", a.letters}, {"states", a.states}, {"initial", a.initial},
                {"accepting", a.accepting}, {"transitions", tr}};
}

Automaton automaton_from_json(const Json& j) {
    try {
        Automaton a;
        a.states = j.at("states").get<int>();
        a.initial = j.value("initial", 0);
        a.accepting = j.at("accepting").get<std::vector<int>>();
        int top = 0;
        for (const auto& t : j.at("transitions")) {
            if (!t.is_array() || t.size() != 3) throw DomainError("transitions are [from, letter, to] triples");
            a.transitions.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
            top = std::max(top, t[1].get<int>() + 1);
        }
        a.letters = j.value("letters", std::max(top, 1));
        a.validate();
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed automaton document: ") + e.what());
    }
}

Json enclosure_to_json(const Enclosure& e, int digits) {
    return Json{{"lo", rational_to_json(e.lo)},
                {"hi", rational_to_json(e.hi)},
                {"decimal", to_decimal((e.lo + e.hi) / 2, digits)},
                {"lo_decimal", to_decimal(e.lo, digits)},
                {"hi_decimal", to_decimal(e.hi, digits)}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(path + ": " + e.what());
    }
}

}  // namespace l2rank
