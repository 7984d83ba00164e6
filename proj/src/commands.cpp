#include "l2rank/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <random>

namespace l2rank {

namespace {

constexpr const char* kVersion = "0.1.0";

// ------------------------------------------------------------ suites

PolyMatrix poly_product(const PolyMatrix& a, const PolyMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    PolyMatrix out(n, std::vector<Poly>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (!a[i][l].is_zero())
                for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    return out;
}

PolyMatrix poly_block(const PolyMatrix& a, const PolyMatrix& c, const PolyMatrix& b) {
    // [[a, c], [0, b]]
    const std::size_t ar = a.size(), ac = a.empty() ? 0 : a[0].size();
    const std::size_t br = b.size(), bc = b.empty() ? 0 : b[0].size();
    PolyMatrix out(ar + br, std::vector<Poly>(ac + bc));
    for (std::size_t i = 0; i < ar; ++i)
        for (std::size_t j = 0; j < ac; ++j) out[i][j] = a[i][j];
    for (std::size_t i = 0; i < ar; ++i)
        for (std::size_t j = 0; j < bc; ++j) out[i][ac + j] = c[i][j];
    for (std::size_t i = 0; i < br; ++i)
        for (std::size_t j = 0; j < bc; ++j) out[ar + i][ac + j] = b[i][j];
    return out;
}

QMatrix q_block(const QMatrix& a, const QMatrix& c, const QMatrix& b) {
    std::vector<QMatrix::Entry> es = a.entries();
    for (const auto& e : c.entries()) es.push_back({e.row, a.cols() + e.col, e.value});
    for (const auto& e : b.entries()) es.push_back({a.rows() + e.row, a.cols() + e.col, e.value});
    return QMatrix(a.rows() + b.rows(), a.cols() + b.cols(), std::move(es));
}

}  // namespace

Json SuiteReport::to_json() const {
    return Json{{"suite", suite}, {"passed", passed}, {"failed", failed}, {"failures", failures}};
}

SuiteReport macci_suite(int m_lo, int m_hi, int l_lo, int l_hi, int terms) {
    SuiteReport rep;
    rep.suite = "macci";
    auto fail = [&](Json j) {
        ++rep.failed;
        if (rep.failures.size() < 8) rep.failures.push_back(std::move(j));
    };
    for (int m = m_lo; m <= m_hi; ++m) {
        for (int l = l_lo; l <= l_hi; ++l) {
            if (macci_count_check(m, l)) {
                ++rep.passed;
            } else {
                fail(Json{{"check", "count"}, {"m", m}, {"l", l}, {"fib", macci(m, l + 2).get_str()}});
            }
        }
        MacciSum s = macci_sum(m, terms);
        if (s.within()) {
            ++rep.passed;
        } else {
            fail(Json{{"check", "sum"},
                      {"m", m},
                      {"target", to_string(s.target)},
                      {"partial", to_decimal(s.partial, 20)},
                      {"tail", to_decimal(s.tail, 20)},
                      {"series_value", to_string(s.exact)}});
        }
    }
    return rep;
}

SuiteReport coverage_suite(const Scheme& scheme, int depth, const Rational& base, int offset) {
    SuiteReport rep;
    rep.suite = "coverage";
    Rational previous = -1;
    for (int d = 0; d <= depth; ++d) {
        const Rational cov = coverage_at_depth(scheme, d);
        if (cov >= previous) {
            ++rep.passed;
        } else {
            ++rep.failed;
            rep.failures.push_back(Json{{"check", "monotone"}, {"depth", d}, {"coverage", to_string(cov)}});
        }
        previous = cov;
        Rational bound = 1;
        for (int i = 0; i < std::abs(d - offset); ++i) bound *= base;
        if (d < offset) bound = 1 / bound;
        if (1 - cov <= bound) {
            ++rep.passed;
        } else {
            ++rep.failed;
            if (rep.failures.size() < 8)
                rep.failures.push_back(Json{{"check", "decay"},
                                            {"depth", d},
                                            {"uncovered", to_decimal(1 - cov, 8)},
                                            {"bound", to_decimal(bound, 8)}});
        }
    }
    return rep;
}

SuiteReport odometer_coverage_suite(const RadixSequence& radices, int max_level) {
    SuiteReport rep;
    rep.suite = "odometer_coverage";
    for (int m = 1; m <= max_level; ++m) {
        Scheme s = Scheme::odometer_level(radices, m);
        WindowSet ws = enumerate_windows(s, StopRule::coverage(1));
        if (ws.coverage == 1) {
            ++rep.passed;
        } else {
            ++rep.failed;
            rep.failures.push_back(Json{{"level", m}, {"coverage", to_string(ws.coverage)}});
        }
    }
    return rep;
}

SuiteReport sylvester_suite(unsigned seed, int samples) {
    SuiteReport rep;
    rep.suite = "sylvester";
    std::mt19937 gen(seed);
    auto small = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
    auto rand_q = [&](std::size_t r, std::size_t c) {
        std::vector<QMatrix::Entry> es;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (small(0, 2) == 0) es.push_back({i, j, Rational(small(-3, 3), small(1, 3))});
        return QMatrix(r, c, std::move(es));
    };
    auto rand_p = [&](std::size_t r, std::size_t c) {
        PolyMatrix m(r, std::vector<Poly>(c));
        for (auto& row : m)
            for (auto& x : row)
                if (small(0, 2) == 0) x = Poly({Rational(small(-2, 2)), Rational(small(-2, 2))});
        return m;
    };
    auto record = [&](bool ok, const char* axiom, Json detail) {
        if (ok) {
            ++rep.passed;
        } else {
            ++rep.failed;
            if (rep.failures.size() < 8) {
                detail["axiom"] = axiom;
                rep.failures.push_back(std::move(detail));
            }
        }
    };
    for (int it = 0; it < samples; ++it) {
        const auto n = static_cast<std::size_t>(small(1, 5)), k = static_cast<std::size_t>(small(1, 5)),
                   m = static_cast<std::size_t>(small(1, 5));
        QMatrix a = rand_q(n, k), b = rand_q(k, m), c = rand_q(n, m);
        const std::size_t ra = rank(a), rb = rank(b);
        record(rank(QMatrix::identity(n)) == n, "normalization", Json{{"n", n}});
        record(rank(a * b) <= std::min(ra, rb), "product",
               Json{{"a", write_matrix_market(a)}, {"b", write_matrix_market(b)}});
        record(rank(block_diag(a, b)) == ra + rb, "diagonal",
               Json{{"a", write_matrix_market(a)}, {"b", write_matrix_market(b)}});
        record(rank(q_block(a, c, b)) >= ra + rb, "triangular",
               Json{{"a", write_matrix_market(a)}, {"b", write_matrix_market(b)}, {"c", write_matrix_market(c)}});

        PolyMatrix pa = rand_p(n, k), pb = rand_p(k, m), pc = rand_p(n, m);
        const std::size_t rpa = rank_poly(pa), rpb = rank_poly(pb);
        record(rank_poly(poly_product(pa, pb)) <= std::min(rpa, rpb), "product over Q(s)", Json{{"seed", seed}, {"sample", it}});
        PolyMatrix zero_c(n, std::vector<Poly>(m));
        record(rank_poly(poly_block(pa, zero_c, pb)) == rpa + rpb, "diagonal over Q(s)", Json{{"seed", seed}, {"sample", it}});
        record(rank_poly(poly_block(pa, pc, pb)) >= rpa + rpb, "triangular over Q(s)", Json{{"seed", seed}, {"sample", it}});
    }
    return rep;
}

// ------------------------------------------------------------------ CLI

namespace {

struct UsageError : DomainError {
    using DomainError::DomainError;
};

std::size_t parse_memory(const std::string& text) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &pos);
    } catch (const std::exception&) {
        throw UsageError("L2RANK_MAX_MEM must be a byte count such as 512M");
    }
    std::string suffix = text.substr(pos);
    unsigned long long mult = 1;
    if (suffix == "K" || suffix == "k") mult = 1ull << 10;
    else if (suffix == "M" || suffix == "m") mult = 1ull << 20;
    else if (suffix == "G" || suffix == "g") mult = 1ull << 30;
    else if (!suffix.empty()) throw UsageError("L2RANK_MAX_MEM has an unknown suffix '" + suffix + "'");
    return static_cast<std::size_t>(v * mult);
}

std::pair<int, int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw UsageError("bad range '" + text + "' (expected a or a..b)");
    }
}

std::vector<Integer> parse_poly(const std::string& text) {
    std::vector<Integer> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.emplace_back(item);
        } catch (const std::exception&) {
            throw UsageError("bad polynomial coefficient '" + item + "'");
        }
    }
    return out;
}

struct SchemeArgs {
    std::string preset = "half";
    std::vector<int> radices;
    std::string continuation = "periodic";
    int level = 0;

    void add(CLI::App* app) {
        app->add_option("--preset", preset, "scheme: half, or aN for the N-th lamplighter scheme")->capture_default_str();
        app->add_option("--radices", radices, "odometer radices (switches to the odometer)")->delimiter(',');
        app->add_option("--continuation", continuation, "periodic or constant")->capture_default_str();
        app->add_option("--level", level, "odometer level for the scheme or realization");
    }
    bool odometer() const { return !radices.empty(); }
    RadixSequence sequence() const {
        if (continuation != "periodic" && continuation != "constant")
            throw UsageError("continuation must be periodic or constant");
        return RadixSequence(radices, continuation == "periodic" ? Continuation::Periodic : Continuation::Constant);
    }
    Space space() const { return odometer() ? Space::odometer(sequence()) : Space::binary(); }
    Scheme scheme() const {
        if (odometer()) return Scheme::odometer_level(sequence(), level > 0 ? level : 1);
        if (preset == "half") return Scheme::lamplighter_half();
        if (preset.size() >= 2 && preset[0] == 'a') {
            try {
                return Scheme::lamplighter(std::stoi(preset.substr(1)));
            } catch (const std::invalid_argument&) {
            }
        }
        throw UsageError("unknown preset '" + preset + "'");
    }
    Json echo() const {
        Json j{{"preset", odometer() ? Json() : Json(preset)}};
        if (odometer()) j = Json{{"radices", radices}, {"continuation", continuation}, {"level", level}};
        return j;
    }
};

struct ElementArgs {
    std::string element, factory, expr;
    std::vector<std::string> polys;
    std::vector<std::string> bases;
    bool shift_sum = false;

    void add(CLI::App* app) {
        app->add_option("--element", element, "matrix element file (JSON)");
        app->add_option("--factory", factory, "template: eleven, single_poly, poly_times_power, general");
        app->add_option("--poly", polys, "polynomial coefficients, lowest first (repeatable)");
        app->add_option("--base", bases, "exponential base per extra polynomial (repeatable)");
        app->add_option("--expr", expr, "generator expression for a 1x1 element");
        app->add_flag("--shift-sum", shift_sum, "the element (1-χ_E) t + t⁻¹ (1-χ_E)");
    }
    PolySpec spec() const {
        PolySpec s;
        for (const auto& p : polys) s.polys.push_back(parse_poly(p));
        for (const auto& b : bases) s.bases.emplace_back(b);
        return s;
    }
    CrossedMatrix build(const Scheme& scheme) const {
        const int given = !element.empty() + !factory.empty() + !expr.empty() + shift_sum;
        if (given != 1) throw UsageError("give exactly one of --element, --factory, --expr, --shift-sum");
        if (!element.empty()) return crossed_matrix_from_json(scheme.space(), read_json_file(element), &scheme);
        if (!expr.empty()) return CrossedMatrix::scalar(generator_expr_eval(scheme, expr));
        if (shift_sum) return shift_sum_element(scheme);
        if (scheme.tag() != "lamplighter_half") throw UsageError("templates live on the half scheme");
        return l2rank::factory(parse_template(factory), spec());
    }
    Json echo() const {
        Json j = Json::object();
        if (!element.empty()) j["element"] = element;
        if (!factory.empty()) {
            j["factory"] = factory;
            j["poly"] = polys;
            j["base"] = bases;
        }
        if (!expr.empty()) j["expr"] = expr;
        if (shift_sum) j["shift_sum"] = true;
        return j;
    }
};

std::string engine_name(Engine e) {
    switch (e) {
        case Engine::Auto: return "auto";
        case Engine::Explicit: return "explicit";
        case Engine::Aggregated: return "aggregated";
    }
    return "?";
}

void emit(std::ostream& out, const Json& j, const std::string& format) {
    if (format == "json") {
        out << j.dump(2) << "\n";
    } else if (format == "text") {
        for (const auto& [k, v] : j.items()) out << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else if (format == "csv") {
        std::string header, row;
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || v.is_array()) continue;
            header += (header.empty() ? "" : ",") + k;
            row += (row.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
        }
        out << header << "\n" << row << "\n";
    } else {
        throw UsageError("unknown output format '" + format + "'");
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact rank and Betti-number enclosures for crossed-product algebras"};
    app.set_version_flag("--version", std::string("l2rank ") + kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    int digits = 12;
    app.add_option("--format", format, "json, text or csv")->capture_default_str();
    app.add_option("--digits", digits, "decimal digits in reports")->capture_default_str();

    // betti
    auto* betti = app.add_subcommand("betti", "enclose the Betti number of a matrix element");
    SchemeArgs b_scheme;
    ElementArgs b_elem;
    int b_depth = -1;
    std::string b_coverage, b_engine = "auto";
    unsigned b_threads = 0;
    bool b_no_certify = false;
    b_scheme.add(betti);
    b_elem.add(betti);
    betti->add_option("--depth", b_depth, "window depth (itinerary length)");
    betti->add_option("--coverage", b_coverage, "coverage target, a rational below 1");
    betti->add_option("--engine", b_engine, "auto, explicit or aggregated")->capture_default_str();
    betti->add_option("--threads", b_threads, "worker threads (0 = all cores)");
    betti->add_flag("--no-certify", b_no_certify, "skip the generator certificate");

    // odo
    auto* odo = app.add_subcommand("odo", "odometer algebra");
    odo->require_subcommand(1);
    auto* odo_rank_cmd = odo->add_subcommand("rank", "rank of an element via its level realization");
    SchemeArgs o_scheme;
    std::string o_element, o_expr;
    long o_projection = -1;
    o_scheme.add(odo_rank_cmd);
    odo_rank_cmd->add_option("--element", o_element, "matrix element file (JSON)");
    odo_rank_cmd->add_option("--expr", o_expr, "generator expression at the given level");
    odo_rank_cmd->add_option("--projection", o_projection, "sum of the first N diagonal units at --level");

    // lang
    auto* lang = app.add_subcommand("lang", "rational languages");
    lang->require_subcommand(1);
    auto* lang_alpha = lang->add_subcommand("alpha", "exact alpha of an automaton");
    std::string l_automaton, l_eps = "1/100000000";
    int l_full = 0;
    lang_alpha->add_option("--automaton", l_automaton, "automaton file (JSON)");
    lang_alpha->add_option("--full", l_full, "use the language of all words over N letters");
    lang_alpha->add_option("--eps", l_eps, "tail bound for the enumerated cross-check")->capture_default_str();
    auto* lang_bal = lang->add_subcommand("balanced", "words with equally many x_r and x_s");
    int l_r = 1, l_s = 2;
    std::string l_bal_eps = "1e-10";
    lang_bal->add_option("--r", l_r)->capture_default_str();
    lang_bal->add_option("--s", l_s)->capture_default_str();
    lang_bal->add_option("--eps", l_bal_eps)->capture_default_str();

    // check
    auto* check = app.add_subcommand("check", "invariant suites");
    check->require_subcommand(1);
    auto* c_macci = check->add_subcommand("macci", "m-acci counts and sums");
    std::string c_m = "2..8", c_l = "0..15";
    int c_terms = 200;
    c_macci->add_option("--m", c_m)->capture_default_str();
    c_macci->add_option("--l", c_l)->capture_default_str();
    c_macci->add_option("--terms", c_terms)->capture_default_str();
    auto* c_cov = check->add_subcommand("coverage", "coverage growth and decay");
    SchemeArgs c_scheme;
    int c_depth = 24, c_offset = 3;
    std::string c_base = "81/100";
    c_scheme.add(c_cov);
    c_cov->add_option("--depth", c_depth, "largest depth (or odometer level)")->capture_default_str();
    c_cov->add_option("--decay", c_base, "decay base")->capture_default_str();
    c_cov->add_option("--offset", c_offset, "decay offset")->capture_default_str();
    auto* c_syl = check->add_subcommand("sylvester", "rank axioms on random matrices");
    unsigned c_seed = 1;
    int c_samples = 50;
    c_syl->add_option("--seed", c_seed)->capture_default_str();
    c_syl->add_option("--samples", c_samples)->capture_default_str();

    // graph
    auto* graph = app.add_subcommand("graph", "graph of a compressed element at one window");
    SchemeArgs g_scheme;
    ElementArgs g_elem;
    std::vector<int> g_itinerary, g_blocks;
    bool g_census = false, g_window_given = false;
    g_scheme.add(graph);
    g_elem.add(graph);
    graph->add_option("--itinerary", g_itinerary, "part indices visited before returning")->delimiter(',');
    graph->add_option("--blocks", g_blocks, "zero-block lengths (half scheme)")->delimiter(',');
    graph->add_flag("--census", g_census, "print connected components with kernel dimensions instead of DOT");
    graph->add_flag("--empty-itinerary", g_window_given, "use the window with no itinerary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (const char* cap = std::getenv("L2RANK_MAX_MEM"); cap && *cap) set_elimination_memory_cap(parse_memory(cap));
        const auto started = std::chrono::steady_clock::now();
        auto wall_ms = [&] {
            return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
        };

        if (betti->parsed()) {
            if ((b_depth >= 0) == !b_coverage.empty()) throw UsageError("give exactly one of --depth and --coverage");
            Scheme scheme = b_scheme.scheme();
            CrossedMatrix a = b_elem.build(scheme);
            BettiOptions opts;
            opts.threads = b_threads;
            opts.certify = !b_no_certify;
            if (b_engine == "auto") opts.engine = Engine::Auto;
            else if (b_engine == "explicit") opts.engine = Engine::Explicit;
            else if (b_engine == "aggregated") opts.engine = Engine::Aggregated;
            else throw UsageError("unknown engine '" + b_engine + "'");
            StopRule stop = b_depth >= 0 ? StopRule::depth(b_depth) : StopRule::coverage(parse_rational(b_coverage));
            BettiReport rep = betti_enclosure(scheme, a, stop, opts);
            Json j = enclosure_to_json(rep.enclosure, digits);
            j["width"] = rational_to_json(rep.enclosure.width());
            j["coverage"] = rational_to_json(rep.coverage);
            j["windows"] = rep.windows.get_str();
            j["classes"] = rep.classes;
            j["depth"] = rep.depth;
            j["engine"] = engine_name(rep.engine);
            if (!b_elem.factory.empty()) {
                ClosedForm cf = expected_closed_form(parse_template(b_elem.factory), b_elem.spec());
                Json ex{{"q1", rational_to_json(cf.q1)}};
                if (cf.q0) {
                    Enclosure v = closed_form_enclosure(cf, pow2(-4 * digits - 8));
                    ex["q0"] = rational_to_json(*cf.q0);
                    ex["decimal"] = to_decimal((v.lo + v.hi) / 2, digits);
                    ex["within_enclosure"] = rep.enclosure.lo <= v.hi && v.lo <= rep.enclosure.hi;
                } else {
                    auto q0 = measure_offset(rep.enclosure, cf);
                    ex["q0"] = "empirical";
                    ex["q0_measured"] = q0 ? Json(rational_to_json(*q0)) : Json();
                }
                j["expected"] = ex;
            }
            Json cfg{{"scheme", b_scheme.echo()}, {"element", b_elem.echo()}};
            if (b_depth >= 0) cfg["depth"] = b_depth;
            else cfg["coverage"] = b_coverage;
            j["config"] = cfg;
            j["version"] = kVersion;
            j["wall_time_ms"] = wall_ms();
            emit(out, j, format);
            return 0;
        }

        if (odo_rank_cmd->parsed()) {
            if (!o_scheme.odometer()) throw UsageError("odo rank needs --radices");
            Space space = o_scheme.space();
            CrossedMatrix a;
            const int given = !o_element.empty() + !o_expr.empty() + (o_projection >= 0);
            if (given != 1) throw UsageError("give exactly one of --element, --expr, --projection");
            if (!o_element.empty()) {
                a = crossed_matrix_from_json(space, read_json_file(o_element));
            } else if (!o_expr.empty()) {
                a = CrossedMatrix::scalar(generator_expr_eval(o_scheme.scheme(), o_expr));
            } else {
                if (o_scheme.level < 1) throw UsageError("--projection needs --level");
                a = CrossedMatrix::scalar(diagonal_projection(space, o_scheme.level, o_projection));
            }
            std::optional<int> level;
            if (o_scheme.level > 0) level = o_scheme.level;
            OdoRank r = odo_rank(space, a, level);
            Supernatural n(o_scheme.sequence());
            Json j{{"rank", rational_to_json(r.rank)},
                   {"decimal", to_decimal(r.rank, digits)},
                   {"level", r.level},
                   {"p_m", r.p_m.get_str()},
                   {"in_Zn", znumber_contains(n, r.rank)},
                   {"supernatural", n.to_string()}};
            emit(out, j, format);
            return 0;
        }

        if (lang_alpha->parsed()) {
            if (l_automaton.empty() == (l_full == 0)) throw UsageError("give exactly one of --automaton and --full");
            Automaton a = l_full ? full_language(l_full) : automaton_from_json(read_json_file(l_automaton));
            const Rational v = alpha(a);
            Enclosure e = alpha_enumerated(a, parse_rational(l_eps));
            Json j{{"alpha", rational_to_json(v)},
                   {"decimal", to_decimal(v, digits)},
                   {"gen_function", to_string(gen_function(a), "x")},
                   {"enumerated", enclosure_to_json(e, digits)},
                   {"agrees", e.contains(v)}};
            emit(out, j, format);
            return e.contains(v) ? 0 : 1;
        }

        if (lang_bal->parsed()) {
            Enclosure e = balanced_alpha(l_r, l_s, parse_rational(l_bal_eps));
            const Rational sq = balanced_alpha_squared(l_r, l_s);
            Json j = enclosure_to_json(e, digits);
            j["closed_form_squared"] = rational_to_json(sq);
            j["closed_form_decimal"] = sqrt_decimal(sq, digits);
            j["encloses_closed_form"] = encloses_balanced_value(e, l_r, l_s);
            emit(out, j, format);
            return j["encloses_closed_form"].get<bool>() ? 0 : 1;
        }

        if (check->parsed()) {
            SuiteReport rep;
            if (c_macci->parsed()) {
                auto [m_lo, m_hi] = parse_range(c_m);
                auto [l_lo, l_hi] = parse_range(c_l);
                rep = macci_suite(m_lo, m_hi, l_lo, l_hi, c_terms);
            } else if (c_cov->parsed()) {
                if (c_scheme.odometer()) {
                    rep = odometer_coverage_suite(c_scheme.sequence(), c_depth);
                } else {
                    rep = coverage_suite(c_scheme.scheme(), c_depth, parse_rational(c_base), c_offset);
                }
            } else {
                rep = sylvester_suite(c_seed, c_samples);
            }
            emit(out, rep.to_json(), format == "csv" ? "json" : format);
            return rep.failed == 0 ? 0 : 1;
        }

        if (graph->parsed()) {
            Scheme scheme = g_scheme.scheme();
            CrossedMatrix a = g_elem.build(scheme);
            std::optional<Window> w;
            if (!g_blocks.empty()) {
                if (scheme.tag() != "lamplighter_half") throw UsageError("--blocks needs the half scheme");
                w = half_window(scheme, g_blocks);
            } else if (!g_itinerary.empty() || g_window_given) {
                w = window_from_itinerary(scheme, g_itinerary);
            } else {
                throw UsageError("give --itinerary, --blocks or --empty-itinerary");
            }
            if (!w) throw UsageError("the itinerary does not describe a window");
            QMatrix m = compress(scheme, a, *w);
            if (!g_census) {
                out << graph_export(m, static_cast<std::size_t>(w->length));
                return 0;
            }
            Json comps = Json::array();
            for (const auto& c : component_census(m)) {
                Json vs = Json::array();
                for (auto v : c.vertices)
                    vs.push_back("L" + std::to_string(v / static_cast<std::size_t>(w->length)) + "P" +
                                 std::to_string(v % static_cast<std::size_t>(w->length)));
                comps.push_back(Json{{"size", c.vertices.size()}, {"kernel_dim", c.kernel_dim}, {"vertices", vs}});
            }
            emit(out, Json{{"window_length", w->length}, {"kernel_dim", kernel_dim(m)}, {"components", comps}}, "json");
            return 0;
        }
    } catch (const MemoryCapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const Reject& e) {
        err << "rejected: " << e.what() << "\n";
        return 2;
    } catch (const NonConstant& e) {
        err << "not constant: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace l2rank
