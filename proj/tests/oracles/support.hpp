// Shared helpers for tests: conversions to oracle types and random inputs.
#ifndef L2RANK_TEST_SUPPORT_HPP
#define L2RANK_TEST_SUPPORT_HPP

#include "l2rank/scheme.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace support {

inline oracle::Pattern pattern_of(const l2rank::Window& w) {
    oracle::Pattern p;
    const auto& c = w.cylinder;
    p.first = c.min_coord();
    for (int x = c.min_coord(); x <= c.max_coord(); ++x) {
        auto s = c.symbol_at(x);
        if (!s) throw std::runtime_error("window cylinder has a gap");
        p.symbols.push_back(*s);
    }
    return p;
}

inline std::vector<oracle::Monomial> monomials_of(const l2rank::CrossedMatrix& a) {
    std::vector<oracle::Monomial> out;
    for (const auto& [ix, e] : a.entries())
        for (const auto& [power, f] : e.terms())
            for (const auto& t : f.terms())
                out.push_back({ix.first, ix.second, t.coef, t.set.constraints(), power});
    return out;
}

inline std::vector<oracle::Monomial> monomials_of(const l2rank::CrossedElement& a) {
    l2rank::CrossedMatrix m(1);
    m.add(0, 0, a);
    return monomials_of(m);
}

// Random expression in the generator language over `parts` generators.
inline std::string random_expr(std::mt19937& gen, std::size_t parts, int depth) {
    std::uniform_int_distribution<int> op(0, depth <= 0 ? 1 : 5);
    const int o = op(gen);
    auto gname = [&] { return "g" + std::to_string(gen() % parts); };
    switch (o) {
        case 0: return gname();
        case 1: return gname() + "'";
        case 2: return "(" + random_expr(gen, parts, depth - 1) + " + " + random_expr(gen, parts, depth - 1) + ")";
        case 3: return "(" + random_expr(gen, parts, depth - 1) + " * " + random_expr(gen, parts, depth - 1) + ")";
        case 4: return "adj(" + random_expr(gen, parts, depth - 1) + ")";
        default: {
            const int num = static_cast<int>(gen() % 7) - 3;
            return "(" + std::to_string(num) + "/" + std::to_string(1 + gen() % 3) + " * " +
                   random_expr(gen, parts, depth - 1) + " - 1)";
        }
    }
}

}  // namespace support

#endif
