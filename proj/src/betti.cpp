#include "l2rank/betti.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace l2rank {

namespace {

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs work(i) for i in [0, n); rethrows the failure with the smallest index.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F work) {
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_at = n;
    std::exception_ptr failure;
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            {
                std::lock_guard lock(mu);
                if (failed_at < i) return;
            }
            try {
                work(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < failed_at) {
                    failed_at = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

struct StopWalk {};

// Visits (length, number of windows of that length, measure of each) for sliding-block schemes.
void walk_lengths(const Scheme& scheme, int max_depth,
                  const std::function<bool(int, const Integer&, const Rational&)>& visit) {
    CrossedMatrix zero(1);
    std::map<int, std::pair<Integer, Rational>> pending;
    int current = -1;
    try {
        for_each_window_class(scheme, zero, max_depth, [&](WindowClass&& wc) {
            if (wc.length != current && current >= 0) {
                auto& [c, mu] = pending[current];
                if (!visit(current, c, mu)) throw StopWalk{};
                pending.erase(current);
            }
            current = wc.length;
            auto& slot = pending[wc.length];
            slot.first += wc.count;
            slot.second = wc.measure;
        });
        for (auto& [len, cm] : pending)
            if (!visit(len, cm.first, cm.second)) break;
    } catch (const StopWalk&) {
    }
}

void check_target(const Scheme& scheme, const Rational& target) {
    if (target <= 0) throw DomainError("coverage target must be positive");
    if (target > 1 || (target == 1 && scheme.space().is_binary()))
        throw DomainError("coverage target must be below 1 on the shift space and at most 1 otherwise");
}

}  // namespace

int depth_for_coverage(const Scheme& scheme, const Rational& target) {
    check_target(scheme, target);
    if (!scheme.sliding_block()) return enumerate_windows(scheme, StopRule::coverage(target)).depth;
    constexpr int depth_cap = 200;
    Rational cov = 0;
    std::optional<int> found;
    walk_lengths(scheme, depth_cap, [&](int length, const Integer& count, const Rational& mu) {
        cov += Rational(count) * mu * length;
        if (cov >= target) {
            found = length - 1;
            return false;
        }
        return true;
    });
    if (!found) throw DomainError("coverage target not reached within depth " + std::to_string(depth_cap));
    return *found;
}

Rational coverage_at_depth(const Scheme& scheme, int depth) {
    Rational cov = 0;
    if (scheme.sliding_block()) {
        walk_lengths(scheme, depth, [&](int length, const Integer& count, const Rational& mu) {
            cov += Rational(count) * mu * length;
            return true;
        });
    } else {
        for_each_window(scheme, depth, [&](const Window& w) { cov += w.measure * w.length; });
    }
    return cov;
}

BettiReport betti_enclosure(const Scheme& scheme, const CrossedMatrix& a, const StopRule& stop,
                            const BettiOptions& opts) {
    if (stop.max_depth.has_value() == stop.coverage_target.has_value())
        throw DomainError("exactly one stop criterion is required");
    if (opts.certify) membership_translate(scheme, a);
    BettiReport rep;
    rep.depth = stop.max_depth ? *stop.max_depth : depth_for_coverage(scheme, *stop.coverage_target);
    if (rep.depth < 0) throw DomainError("depth must be non-negative");
    rep.engine = opts.engine;
    if (rep.engine == Engine::Auto) rep.engine = scheme.sliding_block() ? Engine::Aggregated : Engine::Explicit;
    const unsigned threads = resolve_threads(opts.threads);

    Rational lo = 0, cov = 0;
    if (rep.engine == Engine::Explicit) {
        std::vector<Window> windows;
        for_each_window(scheme, rep.depth, [&](const Window& w) { windows.push_back(w); });
        std::stable_sort(windows.begin(), windows.end(), [](const Window& x, const Window& y) {
            if (x.length != y.length) return x.length < y.length;
            return x.itinerary < y.itinerary;
        });
        std::vector<std::size_t> dims(windows.size());
        parallel_for(windows.size(), threads, [&](std::size_t i) { dims[i] = kernel_dim(compress(scheme, a, windows[i])); });
        for (std::size_t i = 0; i < windows.size(); ++i) {
            lo += windows[i].measure * static_cast<unsigned long>(dims[i]);
            cov += windows[i].measure * windows[i].length;
        }
        rep.windows = static_cast<unsigned long>(windows.size());
        rep.classes = windows.size();
    } else {
        std::vector<WindowClass> classes;
        for_each_window_class(scheme, a, rep.depth, [&](WindowClass&& wc) { classes.push_back(std::move(wc)); });
        std::vector<std::size_t> dims(classes.size());
        parallel_for(classes.size(), threads, [&](std::size_t i) { dims[i] = kernel_dim(classes[i].matrix); });
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const Rational weight = Rational(classes[i].count) * classes[i].measure;
            lo += weight * static_cast<unsigned long>(dims[i]);
            cov += weight * classes[i].length;
            rep.windows += classes[i].count;
        }
        rep.classes = classes.size();
    }
    rep.coverage = cov;
    rep.enclosure.lo = lo;
    rep.enclosure.hi = lo + Rational(static_cast<unsigned long>(a.size())) * (1 - cov);
    return rep;
}

CrossedMatrix shift_sum_element(const Scheme& scheme) {
    LCFunction outside = LCFunction::constant(1) - LCFunction::indicator(scheme.base());
    CrossedElement e = CrossedElement::monomial(outside, 1) +
                       CrossedElement::monomial(compose_shift(scheme.space(), outside, 1), -1);
    return CrossedMatrix::scalar(e);
}

Rational closed_form_an(int n) {
    if (n < 0) throw DomainError("n must be non-negative");
    return Rational(3) / (1 + Rational(ipow(2, static_cast<unsigned long>(2 * n + 3))));
}

// ------------------------------------------------------------------ series

Integer eval_poly(const std::vector<Integer>& coefs, const Integer& x) {
    Integer v = 0;
    for (std::size_t i = coefs.size(); i-- > 0;) v = v * x + coefs[i];
    return v;
}

namespace {

int poly_degree(const std::vector<Integer>& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0) return static_cast<int>(i);
    return -1;
}

}  // namespace

void PolySpec::validate() const {
    if (polys.empty()) throw DomainError("at least one polynomial is required");
    if (bases.size() + 1 != polys.size())
        throw DomainError("need one base per polynomial after the first (" + std::to_string(polys.size() - 1) +
                          " expected, " + std::to_string(bases.size()) + " given)");
    for (std::size_t i = 0; i < polys.size(); ++i) {
        for (const auto& c : polys[i])
            if (c < 0) throw DomainError("polynomial " + std::to_string(i) + " has a negative coefficient");
        if (poly_degree(polys[i]) < 1) throw DomainError("polynomial " + std::to_string(i) + " must have degree >= 1");
    }
    if (polys[0].size() < 2 || polys[0][1] < 1) throw DomainError("the first polynomial needs linear coefficient >= 1");
    for (const auto& d : bases)
        if (d < 2) throw DomainError("bases must be >= 2");
}

Integer PolySpec::exponent(const Integer& k) const {
    Integer e = eval_poly(polys.at(0), k);
    for (std::size_t i = 1; i < polys.size(); ++i) {
        if (k < 0 || !k.fits_ulong_p()) throw DomainError("exponent index out of range");
        e += eval_poly(polys[i], k) * ipow(bases.at(i - 1), k.get_ui());
    }
    return e;
}

Enclosure series_enclosure(const PolySpec& spec, const Rational& eps) {
    if (eps <= 0) throw DomainError("eps must be positive");
    if (spec.polys.empty() || spec.bases.size() + 1 != spec.polys.size())
        throw DomainError("malformed series specification");
    for (const auto& p : spec.polys)
        for (const auto& c : p)
            if (c < 0) throw DomainError("series coefficients must be non-negative");
    for (const auto& d : spec.bases)
        if (d < 1) throw DomainError("series bases must be positive");
    // With non-negative coefficients every summand is non-decreasing in k, and a
    // non-constant first polynomial makes the exponent rise by at least 1 per step.
    if (poly_degree(spec.polys[0]) < 1) throw DomainError("the first polynomial must be non-constant");

    long cutoff = 1;
    while (pow2(1 - cutoff) > eps) ++cutoff;
    Rational sum = 0;
    for (long k = 1;; ++k) {
        Integer e = spec.exponent(Integer(k));
        if (e >= cutoff) return {sum, sum + pow2(1 - cutoff)};
        sum += pow2(e.get_si() * -1);
    }
}

// ------------------------------------------------------------------ m-acci

MacciTable::MacciTable(int m) : m_(m) {
    if (m < 1) throw DomainError("m-acci order must be >= 1");
    values_ = {0, 1};
}

const Integer& MacciTable::operator()(int k) {
    if (k < 0) throw DomainError("m-acci index must be >= 0");
    while (static_cast<int>(values_.size()) <= k) {
        const int l = static_cast<int>(values_.size());
        Integer v = 0;
        if (l <= m_ - 1) {
            v = ipow(2, static_cast<unsigned long>(l - 2));
        } else {
            for (int i = std::max(0, l - m_); i < l; ++i) v += values_[static_cast<std::size_t>(i)];
        }
        values_.push_back(v);
    }
    return values_[static_cast<std::size_t>(k)];
}

Integer macci(int m, int k) {
    MacciTable t(m);
    return t(k);
}

bool macci_count_check(int m, int l) {
    if (m < 1 || l < 0 || l > 26) throw DomainError("count check needs m >= 1 and 0 <= l <= 26");
    unsigned long count = 0;
    for (unsigned long s = 0; s < (1ul << l); ++s) {
        int run = 0, worst = 0;
        for (int i = 0; i < l; ++i) {
            run = ((s >> i) & 1ul) ? run + 1 : 0;
            worst = std::max(worst, run);
        }
        if (worst <= m - 1) ++count;
    }
    return Integer(count) == macci(m, l + 2);
}

MacciSum macci_sum(int m, int terms) {
    if (m < 1 || terms < 1) throw DomainError("macci_sum needs m >= 1 and at least one term");
    MacciTable fib(m);
    MacciSum out;
    out.target = Rational(ipow(2, static_cast<unsigned long>(m - 1)) * (ipow(2, static_cast<unsigned long>(m + 1)) - 1),
                          ipow(2, static_cast<unsigned long>(m + 2)) + 1);
    out.target.canonicalize();
    for (int k = 1; k <= terms; ++k) out.partial += Rational(fib(2 * k)) * pow2(-2L * k);

    // growth bound Fib_m(j) <= B q^j with q^m >= 1 + q + ... + q^{m-1}
    Rational q = 1;
    if (m >= 2) {
        auto ok = [&](const Rational& x) {
            Rational pw = 1, sum = 0;
            for (int i = 0; i < m; ++i) {
                sum += pw;
                pw *= x;
            }
            return pw >= sum;
        };
        Rational lo = Rational(3, 2), hi = 2;
        for (int it = 0; it < 40; ++it) {
            Rational mid = (lo + hi) / 2;
            (ok(mid) ? hi : lo) = mid;
        }
        q = hi;
    }
    Rational bound = 0;
    Rational qpow = 1;
    for (int i = 0; i < 2 * terms + 1; ++i) qpow *= q;
    for (int i = 0; i < m; ++i) {
        bound = std::max(bound, Rational(Rational(fib(2 * terms + 1 + i)) / qpow));
        qpow *= q;
    }
    const Rational ratio = q * q / 4;
    Rational first = 1;
    for (int i = 0; i < terms + 1; ++i) first *= ratio;
    out.tail = bound * first / (1 - ratio);

    // even part of x + x^2 (1 - x^m)/(1 - 2x + x^{m+1}) at x = 1/2
    auto gen = [&](const Rational& x) -> Rational {
        Rational xm = 1;
        for (int i = 0; i < m; ++i) xm *= x;
        return x + x * x * (1 - xm) / (1 - 2 * x + xm * x);
    };
    out.exact = (gen(Rational(1, 2)) + gen(Rational(-1, 2))) / 2;
    return out;
}

// --------------------------------------------------------- window anatomy

Window half_window(const Scheme& half, const std::vector<int>& blocks) {
    std::vector<int> symbols{1};  // coordinate 0
    for (int k : blocks) {
        if (k < 1) throw DomainError("zero blocks must have length >= 1");
        symbols.insert(symbols.end(), static_cast<std::size_t>(k), 0);
        symbols.push_back(1);
    }
    symbols.push_back(1);
    std::vector<int> itinerary;
    for (std::size_t i = 1; i + 1 < symbols.size(); ++i) {
        const int prev = symbols[i - 1], cur = symbols[i];
        if (prev == 1 && cur == 1) throw std::logic_error("window passes through the base set");
        itinerary.push_back(prev == 0 ? (cur == 0 ? 0 : 1) : 2);
    }
    auto w = window_from_itinerary(half, itinerary);
    if (!w) throw DomainError("no window with these zero blocks");
    return *w;
}

std::vector<int> zero_blocks(const Window& w) {
    std::vector<int> out;
    int run = 0;
    for (int p = 1; p < w.length; ++p) {
        auto s = w.cylinder.symbol_at(p);
        if (!s) throw DomainError("window does not fix coordinate " + std::to_string(p));
        if (*s == 0) {
            ++run;
        } else if (run > 0) {
            out.push_back(run);
            run = 0;
        }
    }
    return out;
}

std::vector<Component> component_census(const QMatrix& m) {
    std::vector<Component> out;
    for (auto& b : graph_components(m)) {
        Component c;
        c.kernel_dim = b.cols.size() - rank(b.matrix);
        c.vertices = std::move(b.rows);
        out.push_back(std::move(c));
    }
    return out;
}

std::string graph_export(const QMatrix& m, std::size_t window_length, const std::string& name) {
    if (window_length == 0 || m.rows() != m.cols() || m.rows() % window_length != 0)
        throw DomainError("matrix size is not a multiple of the window length");
    auto vertex = [&](std::size_t v) {
        return "L" + std::to_string(v / window_length) + "P" + std::to_string(v % window_length);
    };
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (std::size_t v = 0; v < m.rows(); ++v) os << "  " << vertex(v) << ";\n";
    for (const auto& e : m.entries())
        os << "  " << vertex(e.col) << " -> " << vertex(e.row) << " [label=\"" << to_string(e.value) << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace l2rank
