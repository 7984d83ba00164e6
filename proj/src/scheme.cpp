#include "l2rank/scheme.hpp"

#include <algorithm>

namespace l2rank {

Scheme::Scheme(Space space, Cylinder base, std::vector<Cylinder> parts, std::string tag)
    : space_(std::move(space)), base_(std::move(base)), parts_(std::move(parts)), tag_(std::move(tag)) {
    std::vector<const Cylinder*> all{&base_};
    for (const auto& p : parts_) all.push_back(&p);
    Rational total = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        total += measure(space_, *all[i]);
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (!disjoint(*all[i], *all[j]))
                throw DomainError("scheme members overlap: " + to_string(*all[i]) + " and " + to_string(*all[j]));
    }
    if (total != 1) throw DomainError("scheme members do not cover the space (total measure " + to_string(total) + ")");
}

Scheme Scheme::lamplighter_half() {
    return Scheme(Space::binary(), Cylinder{{-1, 1}, {0, 1}},
                  {Cylinder{{-1, 0}, {0, 0}}, Cylinder{{-1, 0}, {0, 1}}, Cylinder{{-1, 1}, {0, 0}}}, "lamplighter_half");
}

Scheme Scheme::lamplighter(int n) {
    if (n < 0) throw DomainError("lamplighter scheme needs n >= 0");
    if (n > 6) throw DomainError("lamplighter scheme radius too large");
    const int width = 2 * n + 1;
    const unsigned full = (1u << width) - 1;
    std::vector<Cylinder> parts;
    for (unsigned v = 0; v < full; ++v) {
        std::vector<int> sym(static_cast<std::size_t>(width));
        for (int i = 0; i < width; ++i) sym[static_cast<std::size_t>(i)] = static_cast<int>((v >> (width - 1 - i)) & 1u);
        parts.push_back(Cylinder::word(-n, sym));
    }
    return Scheme(Space::binary(), Cylinder::word(-n, std::vector<int>(static_cast<std::size_t>(width), 1)),
                  std::move(parts), "lamplighter_" + std::to_string(n));
}

Scheme Scheme::odometer_level(const RadixSequence& radices, int m) {
    if (m < 1) throw DomainError("odometer level must be >= 1");
    Space space = Space::odometer(radices);
    Integer pm = radices.partial_product(m);
    if (pm > 100000) throw DomainError("odometer level too large");
    std::vector<Cylinder> parts;
    for (long l = 1; l < pm.get_si(); ++l) parts.push_back(prefix_from_index(space, m, l));
    return Scheme(space, prefix_from_index(space, m, 0), std::move(parts), "odometer_level_" + std::to_string(m));
}

std::optional<std::pair<int, int>> Scheme::sliding_block() const {
    if (!space_.is_binary() || base_.is_whole_space()) return std::nullopt;
    int lo = base_.min_coord(), hi = base_.max_coord();
    auto covers = [&](const Cylinder& c) {
        return !c.is_whole_space() && c.min_coord() == lo && c.max_coord() == hi &&
               c.size() == static_cast<std::size_t>(hi - lo + 1);
    };
    if (!covers(base_)) return std::nullopt;
    for (const auto& p : parts_)
        if (!covers(p)) return std::nullopt;
    return std::pair{lo, hi};
}

// ---------------------------------------------------------------- windows

namespace {

void window_dfs(const Scheme& s, const Cylinder& c, std::vector<int>& itinerary, int max_depth,
                const std::function<void(const Window&)>& visit) {
    const int i = static_cast<int>(itinerary.size());
    if (auto closed = intersect(c, shift_image(s.space(), s.base(), -(i + 1)))) {
        Window w;
        w.itinerary = itinerary;
        w.length = i + 1;
        w.measure = measure(s.space(), *closed);
        w.cylinder = std::move(*closed);
        visit(w);
    }
    if (i + 1 > max_depth) return;
    for (std::size_t z = 0; z < s.parts().size(); ++z) {
        if (auto next = intersect(c, shift_image(s.space(), s.parts()[z], -(i + 1)))) {
            itinerary.push_back(static_cast<int>(z));
            window_dfs(s, *next, itinerary, max_depth, visit);
            itinerary.pop_back();
        }
    }
}

}  // namespace

void for_each_window(const Scheme& scheme, int max_depth, const std::function<void(const Window&)>& visit) {
    if (max_depth < 0) return;
    std::vector<int> itinerary;
    window_dfs(scheme, scheme.base(), itinerary, max_depth, visit);
}

WindowSet enumerate_windows(const Scheme& scheme, const StopRule& stop) {
    if (stop.max_depth.has_value() == stop.coverage_target.has_value())
        throw DomainError("exactly one stop criterion is required");
    auto collect = [&](int depth) {
        WindowSet ws;
        ws.depth = depth;
        for_each_window(scheme, depth, [&](const Window& w) {
            ws.coverage += w.measure * w.length;
            ws.windows.push_back(w);
        });
        std::stable_sort(ws.windows.begin(), ws.windows.end(), [](const Window& a, const Window& b) {
            if (a.length != b.length) return a.length < b.length;
            return a.itinerary < b.itinerary;
        });
        return ws;
    };
    if (stop.max_depth) return collect(*stop.max_depth);

    const Rational& target = *stop.coverage_target;
    if (target <= 0) throw DomainError("coverage target must be positive");
    if (target >= 1 && scheme.space().is_binary())
        throw DomainError("full coverage is never reached on the shift space; use a target below 1 or a depth cap");
    constexpr int depth_cap = 200;
    for (int d = 0; d <= depth_cap; ++d) {
        WindowSet ws = collect(d);
        if (ws.coverage >= target) return ws;
    }
    throw DomainError("coverage target not reached within depth " + std::to_string(depth_cap));
}

std::optional<Window> window_from_itinerary(const Scheme& scheme, const std::vector<int>& itinerary) {
    Cylinder c = scheme.base();
    for (std::size_t i = 0; i < itinerary.size(); ++i) {
        int z = itinerary[i];
        if (z < 0 || static_cast<std::size_t>(z) >= scheme.parts().size())
            throw DomainError("itinerary names a part that does not exist: " + std::to_string(z));
        auto next = intersect(c, shift_image(scheme.space(), scheme.parts()[static_cast<std::size_t>(z)],
                                             -static_cast<long>(i + 1)));
        if (!next) return std::nullopt;
        c = std::move(*next);
    }
    const long len = static_cast<long>(itinerary.size()) + 1;
    auto closed = intersect(c, shift_image(scheme.space(), scheme.base(), -len));
    if (!closed) return std::nullopt;
    Window w;
    w.itinerary = itinerary;
    w.length = static_cast<int>(len);
    w.measure = measure(scheme.space(), *closed);
    w.cylinder = std::move(*closed);
    return w;
}

// -------------------------------------------------------- crossed elements

CrossedElement CrossedElement::scalar(const Rational& c) { return monomial(LCFunction::constant(c), 0); }

CrossedElement CrossedElement::monomial(const LCFunction& f, long power) {
    CrossedElement e;
    e.add(power, f);
    return e;
}

CrossedElement CrossedElement::monomial(const Rational& coef, const Cylinder& set, long power) {
    return monomial(LCFunction::indicator(set, coef), power);
}

LCFunction CrossedElement::coefficient(long power) const {
    auto it = terms_.find(power);
    return it == terms_.end() ? LCFunction{} : it->second;
}

void CrossedElement::add(long power, const LCFunction& f) {
    if (f.has_no_terms()) return;
    auto& slot = terms_[power];
    slot += f;
    if (slot.has_no_terms()) terms_.erase(power);
}

CrossedElement& CrossedElement::operator+=(const CrossedElement& o) {
    for (const auto& [j, f] : o.terms_) add(j, f);
    return *this;
}

CrossedElement& CrossedElement::operator-=(const CrossedElement& o) {
    for (const auto& [j, f] : o.terms_) add(j, f * Rational(-1));
    return *this;
}

CrossedElement& CrossedElement::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [j, f] : terms_) f *= s;
    return *this;
}

CrossedElement multiply(const Space& space, const CrossedElement& a, const CrossedElement& b) {
    CrossedElement out;
    for (const auto& [ja, fa] : a.terms())
        for (const auto& [jb, fb] : b.terms()) out.add(ja + jb, fa * compose_shift(space, fb, -ja));
    return out;
}

CrossedElement adjoint(const Space& space, const CrossedElement& a) {
    CrossedElement out;
    for (const auto& [j, f] : a.terms()) out.add(-j, compose_shift(space, f, j));
    return out;
}

bool equivalent(const Space& space, const CrossedElement& a, const CrossedElement& b) {
    CrossedElement d = a - b;
    for (const auto& [j, f] : d.terms())
        if (!is_zero_function(space, f)) return false;
    return true;
}

CrossedMatrix CrossedMatrix::identity(std::size_t size) {
    CrossedMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) m.add(i, i, CrossedElement::scalar(1));
    return m;
}

CrossedMatrix CrossedMatrix::scalar(const CrossedElement& a) {
    CrossedMatrix m(1);
    m.add(0, 0, a);
    return m;
}

CrossedElement CrossedMatrix::at(std::size_t r, std::size_t c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? CrossedElement{} : it->second;
}

void CrossedMatrix::add(std::size_t r, std::size_t c, const CrossedElement& a) {
    if (r >= size_ || c >= size_)
        throw DomainError("matrix entry (" + std::to_string(r) + "," + std::to_string(c) + ") outside size " +
                          std::to_string(size_));
    auto& slot = entries_[{r, c}];
    slot += a;
    if (slot.is_zero()) entries_.erase({r, c});
}

void CrossedMatrix::add(std::size_t r, std::size_t c, const Rational& coef, const Cylinder& set, long power) {
    add(r, c, CrossedElement::monomial(coef, set, power));
}

CrossedMatrix operator+(const CrossedMatrix& a, const CrossedMatrix& b) {
    if (a.size_ != b.size_) throw DomainError("matrix sum size mismatch");
    CrossedMatrix out = a;
    for (const auto& [ix, e] : b.entries_) out.add(ix.first, ix.second, e);
    return out;
}

CrossedMatrix multiply(const Space& space, const CrossedMatrix& a, const CrossedMatrix& b) {
    if (a.size() != b.size()) throw DomainError("matrix product size mismatch");
    CrossedMatrix out(a.size());
    for (const auto& [ia, ea] : a.entries())
        for (const auto& [ib, eb] : b.entries())
            if (ia.second == ib.first) out.add(ia.first, ib.second, multiply(space, ea, eb));
    return out;
}

CrossedMatrix adjoint(const Space& space, const CrossedMatrix& a) {
    CrossedMatrix out(a.size());
    for (const auto& [ix, e] : a.entries()) out.add(ix.second, ix.first, adjoint(space, e));
    return out;
}

CrossedMatrix block_diag(const CrossedMatrix& a, const CrossedMatrix& b) {
    CrossedMatrix out(a.size() + b.size());
    for (const auto& [ix, e] : a.entries()) out.add(ix.first, ix.second, e);
    for (const auto& [ix, e] : b.entries()) out.add(ix.first + a.size(), ix.second + a.size(), e);
    return out;
}

bool equivalent(const Space& space, const CrossedMatrix& a, const CrossedMatrix& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < a.size(); ++c) {
            auto ea = a.at(r, c), eb = b.at(r, c);
            if ((!ea.is_zero() || !eb.is_zero()) && !equivalent(space, ea, eb)) return false;
        }
    return true;
}

// ---------------------------------------------------------------- compress

QMatrix compress(const Scheme& scheme, const CrossedMatrix& a, const Window& w) {
    const auto L = static_cast<std::size_t>(w.length);
    const std::size_t k = a.size();
    std::vector<Cylinder> levels;
    levels.reserve(L);
    for (std::size_t i = 0; i < L; ++i) levels.push_back(shift_image(scheme.space(), w.cylinder, static_cast<long>(i)));
    std::vector<QMatrix::Entry> es;
    for (const auto& [ix, elem] : a.entries()) {
        const auto [r, c] = ix;
        for (const auto& [m, f] : elem.terms()) {
            for (std::size_t i = 0; i < L; ++i) {
                const long col = static_cast<long>(i) - m;
                if (col < 0 || col >= static_cast<long>(L)) continue;
                auto v = lc_eval_on(scheme.space(), f, levels[i]);
                if (!v)
                    throw NonConstant("entry (" + std::to_string(r) + "," + std::to_string(c) + ") power " +
                                      std::to_string(m) + ": coefficient " + to_string(f) +
                                      " is not constant on T^" + std::to_string(i) + " of window " +
                                      to_string(w.cylinder));
                if (*v != 0) es.push_back({r * L + i, c * L + static_cast<std::size_t>(col), std::move(*v)});
            }
        }
    }
    return QMatrix(k * L, k * L, std::move(es));
}

QMatrix compress(const Scheme& scheme, const CrossedElement& a, const Window& w) {
    return compress(scheme, CrossedMatrix::scalar(a), w);
}

}  // namespace l2rank
