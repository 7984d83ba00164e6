#include "l2rank/scheme.hpp"

#include <algorithm>
#include <map>

namespace l2rank {

namespace {

constexpr char kFree = 2;

struct CoefSlot {
    std::size_t row, col;
    long power;
    LCFunction f;
};

using Tuple = std::vector<std::optional<Rational>>;

class ClassWalker {
public:
    ClassWalker(const Scheme& s, const CrossedMatrix& a, int max_depth) : s_(s), a_(a), max_depth_(max_depth) {
        auto block = s.sliding_block();
        if (!block) throw DomainError("aggregated windows need a sliding-block scheme");
        lo_s_ = block->first;
        hi_s_ = block->second;
        width_ = hi_s_ - lo_s_ + 1;
        for (int p = lo_s_; p <= hi_s_; ++p) base_.push_back(static_cast<char>(*s.base().symbol_at(p)));

        bool any = false;
        for (const auto& [ix, e] : a.entries())
            for (const auto& [m, f] : e.terms()) {
                slots_.push_back({ix.first, ix.second, m, f});
                for (const auto& t : f.terms())
                    for (auto [p, sym] : t.set.constraints()) {
                        lo_a_ = any ? std::min(lo_a_, p) : p;
                        hi_a_ = any ? std::max(hi_a_, p) : p;
                        any = true;
                    }
            }
        if (!any) lo_a_ = hi_a_ = lo_s_;
        lead_ = std::max(hi_a_, hi_s_);
        hist_ = std::max(width_, lead_ - lo_a_ + 1);
        hist_parent_.push_back(-1);
        hist_tuple_.push_back(-1);
    }

    void run(const std::function<void(WindowClass&&)>& visit) {
        if (max_depth_ < 0) return;
        struct Entry {
            Integer count;
            std::string sample;
        };
        using Key = std::pair<int, std::string>;
        std::map<Key, Entry> layer;

        int q = hi_s_;
        std::string state(static_cast<std::size_t>(hist_), kFree);
        for (int i = 0; i < hist_; ++i) {
            int coord = q - hist_ + 1 + i;
            if (coord >= lo_s_) state[static_cast<std::size_t>(i)] = base_[static_cast<std::size_t>(coord - lo_s_)];
        }
        int h = 0;
        if (q - lead_ >= 0) h = emit(h, state, q, 0, q);
        layer[{h, state}] = Entry{1, base_};

        while (!layer.empty()) {
            const int next_q = q + 1;
            const int offset = next_q - hi_s_;  // block index being completed
            std::map<int, std::map<int, Entry>> closed;  // length -> final history -> entry
            std::map<Key, Entry> next_layer;
            for (const auto& [key, entry] : layer) {
                for (char b = 0; b <= 1; ++b) {
                    std::string st = key.second.substr(1);
                    st.push_back(b);
                    const bool returns = std::equal(base_.begin(), base_.end(), st.end() - width_);
                    std::string sample = entry.sample;
                    sample.push_back(b);
                    if (returns) {
                        const int length = offset;
                        int hh = key.first;
                        const int first = std::max(0, q - lead_ + 1);
                        for (int i = first; i < length; ++i) hh = emit(hh, st, next_q, i, next_q);
                        auto& slot = closed[length][hh];
                        if (slot.sample.empty()) slot.sample = sample;
                        slot.count += entry.count;
                    } else {
                        if (offset >= max_depth_ + 1) continue;
                        int hh = key.first;
                        const int i = next_q - lead_;
                        if (i >= 0) hh = emit(hh, st, next_q, i, next_q);
                        auto [it, fresh] = next_layer.try_emplace({hh, std::move(st)}, Entry{0, sample});
                        it->second.count += entry.count;
                    }
                }
            }
            for (auto& [length, by_hist] : closed)
                for (auto& [hh, entry] : by_hist) {
                    WindowClass wc;
                    wc.length = length;
                    wc.count = entry.count;
                    wc.measure = pow2(-(length + width_));
                    wc.matrix = build(hh, length);
                    for (char c : entry.sample) wc.sample_symbols.push_back(c);
                    visit(std::move(wc));
                }
            layer = std::move(next_layer);
            q = next_q;
        }
    }

private:
    // Appends the coefficient values at position i to history h. `state` ends at
    // coordinate `frontier`; coordinates past `known` are free.
    int emit(int h, const std::string& state, int frontier, int i, int known) {
        std::string pattern;
        pattern.reserve(static_cast<std::size_t>(hi_a_ - lo_a_ + 1));
        const int first_coord = frontier - hist_ + 1;
        for (int p = lo_a_; p <= hi_a_; ++p) {
            const int coord = p + i;
            if (coord > known || coord < first_coord) {
                pattern.push_back(kFree);
            } else {
                pattern.push_back(state[static_cast<std::size_t>(coord - first_coord)]);
            }
        }
        int tid = tuple_for(pattern);
        auto [it, fresh] = hist_index_.try_emplace({h, tid}, static_cast<int>(hist_parent_.size()));
        if (fresh) {
            hist_parent_.push_back(h);
            hist_tuple_.push_back(tid);
        }
        return it->second;
    }

    int tuple_for(const std::string& pattern) {
        auto found = pattern_memo_.find(pattern);
        if (found != pattern_memo_.end()) return found->second;
        std::vector<Cylinder::Constraint> cs;
        for (int p = lo_a_; p <= hi_a_; ++p) {
            char sym = pattern[static_cast<std::size_t>(p - lo_a_)];
            if (sym != kFree) cs.emplace_back(p, sym);
        }
        const Cylinder where(std::move(cs));
        Tuple t;
        t.reserve(slots_.size());
        for (const auto& slot : slots_) t.push_back(lc_eval_on(s_.space(), slot.f, where));
        auto [it, fresh] = tuple_index_.try_emplace(t, static_cast<int>(tuples_.size()));
        if (fresh) tuples_.push_back(std::move(t));
        pattern_memo_.emplace(pattern, it->second);
        return it->second;
    }

    QMatrix build(int h, int length) const {
        std::vector<int> seq;
        for (int x = h; x != 0; x = hist_parent_[static_cast<std::size_t>(x)])
            seq.push_back(hist_tuple_[static_cast<std::size_t>(x)]);
        std::reverse(seq.begin(), seq.end());
        if (static_cast<int>(seq.size()) != length) throw std::logic_error("window class history has wrong length");
        const auto L = static_cast<std::size_t>(length);
        std::vector<QMatrix::Entry> es;
        for (std::size_t i = 0; i < L; ++i) {
            const Tuple& t = tuples_[static_cast<std::size_t>(seq[i])];
            for (std::size_t k = 0; k < slots_.size(); ++k) {
                const auto& slot = slots_[k];
                const long col = static_cast<long>(i) - slot.power;
                if (col < 0 || col >= static_cast<long>(L)) continue;
                if (!t[k])
                    throw NonConstant("entry (" + std::to_string(slot.row) + "," + std::to_string(slot.col) +
                                      ") power " + std::to_string(slot.power) + ": coefficient " + to_string(slot.f) +
                                      " is not constant at level " + std::to_string(i) + " of a window of length " +
                                      std::to_string(length));
                if (*t[k] != 0) es.push_back({slot.row * L + i, slot.col * L + static_cast<std::size_t>(col), *t[k]});
            }
        }
        return QMatrix(a_.size() * L, a_.size() * L, std::move(es));
    }

    const Scheme& s_;
    const CrossedMatrix& a_;
    int max_depth_;
    int lo_s_ = 0, hi_s_ = 0, width_ = 0;
    int lo_a_ = 0, hi_a_ = 0, lead_ = 0, hist_ = 0;
    std::string base_;
    std::vector<CoefSlot> slots_;
    std::map<std::string, int> pattern_memo_;
    std::map<Tuple, int> tuple_index_;
    std::vector<Tuple> tuples_;
    std::map<std::pair<int, int>, int> hist_index_;
    std::vector<int> hist_parent_, hist_tuple_;
};

}  // namespace

void for_each_window_class(const Scheme& scheme, const CrossedMatrix& a, int max_depth,
                           const std::function<void(WindowClass&&)>& visit) {
    ClassWalker walker(scheme, a, max_depth);
    walker.run(visit);
}

}  // namespace l2rank
