#include "l2rank/betti.hpp"
#include "census.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <regex>

using namespace l2rank;

namespace {

const Scheme& half() {
    static const Scheme s = Scheme::lamplighter_half();
    return s;
}

Rational dec(const char* text) { return parse_rational(text); }

BettiReport run(const Scheme& s, const CrossedMatrix& a, int depth, Engine e = Engine::Auto) {
    BettiOptions o;
    o.engine = e;
    o.threads = 1;
    return betti_enclosure(s, a, StopRule::depth(depth), o);
}

}  // namespace

TEST_CASE("enclosures of trivial elements") {
    for (int d : {0, 3, 7}) {
        BettiReport zero = run(half(), CrossedMatrix(1), d);
        CHECK(zero.enclosure.lo == zero.coverage);
        CHECK(zero.enclosure.hi == 1);
        CHECK(zero.enclosure.contains(1));
        BettiReport id = run(half(), CrossedMatrix::identity(1), d);
        CHECK(id.enclosure.lo == 0);
        CHECK(id.enclosure.hi == 1 - id.coverage);
    }
    BettiReport two = run(half(), CrossedMatrix(2), 5);
    CHECK(two.enclosure.width() == 2 * (1 - two.coverage));
}

TEST_CASE("lamplighter a_n enclosures") {
    CHECK(closed_form_an(0) == Rational(1, 3));
    CHECK(closed_form_an(1) == Rational(1, 11));
    CHECK(closed_form_an(2) == Rational(3) / 129);
    for (int n = 0; n < 6; ++n) CHECK(closed_form_an(n + 1) < closed_form_an(n));

    const Scheme a0 = Scheme::lamplighter(0);
    BettiReport r0 = run(a0, shift_sum_element(a0), 40);
    CHECK(r0.enclosure.contains(Rational(1, 3)));
    CHECK(r0.enclosure.width() <= 2 * pow2(-40) * 40);

    const Scheme a1 = Scheme::lamplighter(1);
    BettiReport r1 = run(a1, shift_sum_element(a1), 24);
    CHECK(r1.enclosure.contains(Rational(1, 11)));

    // per-window and aggregated routes agree
    BettiReport e = run(a1, shift_sum_element(a1), 12, Engine::Explicit);
    BettiReport g = run(a1, shift_sum_element(a1), 12, Engine::Aggregated);
    CHECK(e.enclosure.lo == g.enclosure.lo);
    CHECK(e.enclosure.hi == g.enclosure.hi);
    CHECK(e.windows == g.windows);
}

TEST_CASE("explicit and aggregated engines agree on templates") {
    for (const auto& a : {factory(Template::Eleven, {}), factory(Template::PolyTimesPower, PolySpec{{{0, 1, 1}}, {2}})}) {
        BettiReport e = run(half(), a, 11, Engine::Explicit);
        BettiReport g = run(half(), a, 11, Engine::Aggregated);
        CHECK(e.enclosure.lo == g.enclosure.lo);
        CHECK(e.enclosure.hi == g.enclosure.hi);
        CHECK(e.coverage == g.coverage);
        CHECK(e.windows == g.windows);
    }
}

TEST_CASE("kernel dimensions agree with dense elimination on the eleven element") {
    const CrossedMatrix a = factory(Template::Eleven, {});
    for_each_window(half(), 7, [&](const Window& w) {
        CHECK(kernel_dim(compress(half(), a, w)) == oracle::kernel_dim(compress(half(), a, w).dense()));
    });
}

TEST_CASE("uncertifiable elements are rejected before enumeration") {
    CrossedMatrix t(1);
    t.add(0, 0, 1, Cylinder{}, 1);
    CHECK_THROWS_AS(run(half(), t, 4), Reject);
}

TEST_CASE("series enclosures") {
    Enclosure quad = series_enclosure(PolySpec{{{2, 1, 1}}, {}}, pow2(-42));
    // tests/oracles/derive.py: 0.066467523807716592105
    const Rational ref = dec("0.066467523807716592105");
    CHECK(quad.lo <= ref + pow2(-60));
    CHECK(ref - pow2(-60) <= quad.hi);
    CHECK(quad.width() <= pow2(-42));

    Enclosure geo = series_enclosure(PolySpec{{{0, 1}}, {}}, pow2(-30));
    CHECK(geo.contains(1));

    Enclosure mixed = series_enclosure(PolySpec{{{0, 1}, {0, 1}}, {2}}, pow2(-60));
    const Rational first = pow2(-3) + pow2(-10) + pow2(-27) + pow2(-68);
    CHECK(mixed.lo >= first - pow2(-60));
    CHECK(mixed.contains(dec("0.1259765699505805969272163")) == (mixed.width() > 0));
    CHECK(mixed.hi - dec("0.1259765699505805969272163") < pow2(-59));
}

TEST_CASE("expected closed forms") {
    ClosedForm e = expected_closed_form(Template::Eleven, {});
    CHECK(*e.q0 == Rational(55, 8));
    CHECK(e.q1 == Rational(1, 2));
    Enclosure v = closed_form_enclosure(e, pow2(-45));
    CHECK(to_decimal(v.lo, 10) == "6.9082337619");
    CHECK(to_decimal(v.hi, 10) == "6.9082337619");

    ClosedForm s = expected_closed_form(Template::SinglePoly, PolySpec{{{2, 1, 1}}, {}});
    CHECK(*s.q0 == Rational(55, 8));
    CHECK(s.q1 == Rational(1, 2));
    Enclosure sv = closed_form_enclosure(s, pow2(-45));
    CHECK(sv.lo == v.lo);
    CHECK(sv.hi == v.hi);

    ClosedForm p = expected_closed_form(Template::PolyTimesPower, PolySpec{{{0, 1, 1}}, {2}});
    CHECK(*p.q0 == Rational(12 * 2 + 35, 8));
    CHECK(p.q1 == Rational(1, 8));
    Enclosure pv = closed_form_enclosure(p, pow2(-45));
    CHECK(to_decimal(pv.lo, 10) == "7.3789062519");

    ClosedForm g = expected_closed_form(Template::General, PolySpec{{{0, 1, 1}, {1, 0, 1}}, {2}});
    CHECK(*g.q0 == Rational(83, 8));
    CHECK(g.q1 == Rational(1, 8));
}

TEST_CASE("template factories") {
    const CrossedMatrix eleven = factory(Template::Eleven, {});
    CHECK(eleven.size() == 11);
    CHECK(equivalent(half().space(), eleven.at(1, 1) - CrossedElement::monomial(1, Cylinder{{0, 0}}, 0),
                     CrossedElement::monomial(-1, Cylinder{{0, 0}, {1, 0}}, -1) +
                         CrossedElement::monomial(-1, Cylinder{{0, 0}, {1, 1}}, 0)));
    CHECK(equivalent(half().space(), eleven, factory(Template::SinglePoly, PolySpec{{{2, 1, 1}}, {}})));
    CHECK(factory(Template::SinglePoly, PolySpec{{{0, 1, 0, 1}}, {}}).size() == 3 * 3 + 5);
    CHECK(factory(Template::PolyTimesPower, PolySpec{{{0, 1, 1}}, {2}}).size() == 3 * 2 + 6);
    CHECK(factory(Template::General, PolySpec{{{0, 1, 1}, {1, 0, 1}}, {2}}).size() == 3 * 4 + 1 + 5);
    CHECK_THROWS_AS(factory(Template::SinglePoly, PolySpec{{{0, 0, 1}}, {}}), DomainError);
    CHECK_THROWS_AS(factory(Template::SinglePoly, PolySpec{{{0, 1, -1}}, {}}), DomainError);
    CHECK_THROWS_AS(factory(Template::PolyTimesPower, PolySpec{{{0, 1, 1}}, {1}}), DomainError);
    CHECK_THROWS_AS(factory(Template::Eleven, PolySpec{{{0, 1, 1}}, {}}), DomainError);
    CHECK(parse_template("general") == Template::General);
    CHECK_THROWS_AS(parse_template("twelve"), DomainError);
}

TEST_CASE("component census of the templates") {
    auto check = [](const CrossedMatrix& a, const std::function<census::Prediction(const std::vector<int>&)>& predict) {
        for (std::vector<int> blocks : std::vector<std::vector<int>>{
                 {1}, {4}, {1, 1}, {2, 4}, {2, 3}, {3, 9}, {1, 2, 1}, {2, 4, 16}, {1, 3, 9}}) {
            Window w = half_window(half(), blocks);
            census::Observation o = census::observe(compress(half(), a, w));
            census::Prediction p = predict(blocks);
            INFO("blocks ", blocks.size(), " observed ", census::describe(o), " predicted ", census::describe(p));
            CHECK(census::matches(o, p));
        }
    };
    check(factory(Template::Eleven, {}), census::eleven);
    check(factory(Template::SinglePoly, PolySpec{{{0, 1, 1}}, {}}),
          [](const std::vector<int>& b) { return census::single_poly({0, 1, 1}, b); });
    check(factory(Template::SinglePoly, PolySpec{{{1, 2, 0, 1}}, {}}),
          [](const std::vector<int>& b) { return census::single_poly({1, 2, 0, 1}, b); });
    check(factory(Template::PolyTimesPower, PolySpec{{{0, 1, 1}}, {2}}),
          [](const std::vector<int>& b) { return census::poly_times_power({0, 1, 1}, 2, b); });
    check(factory(Template::PolyTimesPower, PolySpec{{{1, 0, 1}}, {2}}),
          [](const std::vector<int>& b) { return census::poly_times_power({1, 0, 1}, 2, b); });
}

TEST_CASE("C4 kernels through flow_kernel") {
    const CrossedMatrix a = factory(Template::Eleven, {});
    auto c4_kernel = [&](std::vector<int> blocks) {
        QMatrix m = compress(half(), a, half_window(half(), blocks));
        std::size_t best = 0;
        for (const auto& b : graph_components(m)) best = std::max(best, flow_kernel(b.matrix).size());
        return best;
    };
    CHECK(c4_kernel({2, 4}) == 3);
    CHECK(c4_kernel({2, 3}) == 2);
    // the C2 component alone at r = 1
    QMatrix m = compress(half(), a, half_window(half(), {3}));
    std::size_t larger = 0;
    for (const auto& b : graph_components(m))
        if (b.rows.size() > 1) {
            CHECK(flow_kernel(b.matrix).size() == 1);
            ++larger;
        }
    CHECK(larger == 2);
}

TEST_CASE("measure_offset recovers the rational part") {
    ClosedForm e = expected_closed_form(Template::Eleven, {});
    Enclosure v = closed_form_enclosure(e, pow2(-40));
    Enclosure wide{v.lo - Rational(1, 40), v.hi + Rational(1, 40)};
    auto q0 = measure_offset(wide, e);
    REQUIRE(q0.has_value());
    CHECK(*q0 == Rational(55, 8));
    CHECK_FALSE(measure_offset(Enclosure{0, 2}, e).has_value());
}

TEST_CASE("m-acci numbers") {
    std::vector<int> fib2;
    for (int k = 0; k < 8; ++k) fib2.push_back(static_cast<int>(macci(2, k).get_si()));
    CHECK(fib2 == std::vector<int>{0, 1, 1, 2, 3, 5, 8, 13});
    CHECK(macci(3, 10) == 149);
    CHECK(macci(5, 11) == 464);
    CHECK(macci(8, 11) == 509);
    for (int m = 2; m <= 6; ++m)
        for (int l = 0; l <= 12; ++l) {
            CHECK(macci_count_check(m, l));
            CHECK(macci(m, l + 2) == oracle::bounded_runs(m, l));
        }
    CHECK(oracle::bounded_runs(2, 1) == 2);
}

TEST_CASE("m-acci even sums") {
    // exact even sums from tests/oracles/derive.py
    const std::vector<std::pair<int, Rational>> exact = {
        {2, Rational(4, 5)},       {3, Rational(20, 11)},     {4, Rational(80, 21)},      {5, Rational(336, 43)},
        {6, Rational(1344, 85)},   {7, Rational(5440, 171)},  {8, Rational(21760, 341)}};
    for (const auto& [m, v] : exact) {
        MacciSum s = macci_sum(m, 200);
        CHECK(s.exact == v);
        CHECK(s.partial <= v);
        CHECK(v <= s.partial + s.tail);
    }
    CHECK(macci_sum(2).target == Rational(14, 17));
    CHECK(macci_sum(3).within());
    CHECK(macci_sum(5).within());
    CHECK(macci_sum(7).within());
    // partial sums for m = 2: 1/4, 7/16, 9/16, then + 21/256
    CHECK(macci_sum(2, 1).partial == Rational(1, 4));
    CHECK(macci_sum(2, 2).partial == Rational(7, 16));
    CHECK(macci_sum(2, 3).partial == Rational(9, 16));
    CHECK(macci_sum(2, 4).partial == Rational(9, 16) + Rational(21, 256));
}

TEST_CASE("graph export") {
    QMatrix zero(6, 6);
    std::string dot = graph_export(zero, 3);
    CHECK(std::count(dot.begin(), dot.end(), '>') == 0);
    CHECK(dot.find("L1P2;") != std::string::npos);

    Window w = half_window(half(), {2, 1});
    std::string id = graph_export(compress(half(), CrossedMatrix::identity(1), w), 6);
    std::regex edge("(L\\d+P\\d+) -> (L\\d+P\\d+)");
    for (auto it = std::sregex_iterator(id.begin(), id.end(), edge); it != std::sregex_iterator(); ++it)
        CHECK((*it)[1] == (*it)[2]);

    CrossedElement g = generator_expr_eval(half(), "g0");
    std::string path = graph_export(compress(half(), g, w), 6);
    std::regex pos("L0P(\\d+) -> L0P(\\d+)");
    int edges = 0;
    for (auto it = std::sregex_iterator(path.begin(), path.end(), pos); it != std::sregex_iterator(); ++it) {
        CHECK(std::stoi((*it)[2]) == std::stoi((*it)[1]) + 1);
        ++edges;
    }
    CHECK(edges == 1);  // only positions 1 -> 2 sit in [0 0̲]
    CHECK_THROWS_AS(graph_export(QMatrix(5, 5), 3), DomainError);
}
