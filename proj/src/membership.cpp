#include "l2rank/scheme.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace l2rank {

namespace {

int radius_of(const Space& space, const LCFunction& f) {
    int r = 0;
    for (const auto& t : f.terms())
        for (auto [p, s] : t.set.constraints()) r = std::max(r, space.is_binary() ? std::abs(p) : p);
    return r;
}

std::string gen(int z) { return "g" + std::to_string(z); }

/// Builds generator expressions for degree-zero coefficients and word sums.
class Translator {
public:
    explicit Translator(const Scheme& s) : s_(s) {
        const std::size_t n = s.parts().size();
        std::ostringstream base, base_shift;
        base << "(1 - (";
        base_shift << "(1 - (";
        for (std::size_t z = 0; z < n; ++z) {
            if (z) {
                base << " + ";
                base_shift << " + ";
            }
            base << gen(static_cast<int>(z)) << "*" << gen(static_cast<int>(z)) << "'";
            base_shift << gen(static_cast<int>(z)) << "'*" << gen(static_cast<int>(z));
        }
        base << "))";
        base_shift << "))";
        chi_base_ = base.str();
        chi_base_shift_ = base_shift.str();

        if (s.space().is_binary()) {
            hull_lo_ = s.base().min_coord();
            hull_hi_ = s.base().max_coord();
            for (const auto& p : s.parts()) {
                hull_lo_ = std::min(hull_lo_, p.min_coord());
                hull_hi_ = std::max(hull_hi_, p.max_coord());
            }
        }
    }

    std::string element(const CrossedElement& a) {
        std::vector<std::string> parts;
        for (const auto& [j, f] : a.terms()) {
            std::string e = power_part(f, j);
            if (e != "0") parts.push_back(e);
        }
        return join(parts);
    }

private:
    static std::string join(const std::vector<std::string>& parts) {
        if (parts.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += " + ";
            out += parts[i];
        }
        return out;
    }

    const Cylinder& member(int z) const {
        return z < 0 ? s_.base() : s_.parts()[static_cast<std::size_t>(z)];
    }

    std::string power_part(const LCFunction& f, long j) {
        if (j == 0) return degree_zero(f);
        if (j < 0) {
            std::string inner = power_part(compose_shift(s_.space(), f, j), -j);
            return inner == "0" ? inner : "adj(" + inner + ")";
        }
        for (long i = 0; i < j; ++i) {
            LCFunction on_base = f * LCFunction::indicator(shift_image(s_.space(), s_.base(), i));
            if (!is_zero_function(s_.space(), on_base))
                throw Reject("coefficient " + to_string(f) + " of t^" + std::to_string(j) +
                             " does not vanish on T^" + std::to_string(i) + "(E)");
        }
        std::vector<std::string> terms;
        std::vector<int> word;
        words(f, j, Cylinder{}, word, terms);
        return join(terms);
    }

    void words(const LCFunction& f, long j, const Cylinder& ws, std::vector<int>& word, std::vector<std::string>& out) {
        const auto k = static_cast<long>(word.size());
        if (k == j) {
            LCFunction h = f * LCFunction::indicator(ws);
            std::string coef = degree_zero(h);
            if (coef == "0") return;
            std::string w;
            for (std::size_t i = 0; i < word.size(); ++i) w += (i ? "*" : "") + gen(word[i]);
            out.push_back("(" + coef + ")*" + w);
            return;
        }
        for (std::size_t z = 0; z < s_.parts().size(); ++z) {
            auto next = intersect(ws, shift_image(s_.space(), s_.parts()[z], k));
            if (!next) continue;
            if (is_zero_function(s_.space(), f * LCFunction::indicator(*next))) continue;
            word.push_back(static_cast<int>(z));
            words(f, j, *next, word, out);
            word.pop_back();
        }
    }

    std::string degree_zero(const LCFunction& h) {
        if (is_zero_function(s_.space(), h)) return "0";
        if (auto why = degree_zero_check(s_, h)) throw Reject(*why);
        if (auto v = lc_eval_on(s_.space(), h, Cylinder{})) return "(" + to_string(*v) + ")";

        int back = 0, fwd = 0;
        if (s_.space().is_binary()) {
            auto [lo, hi] = h.coordinate_hull();
            back = std::max(0, hull_lo_ - lo);
            fwd = std::max(0, hi - hull_hi_);
        } else if (radius_of(s_.space(), h) > static_cast<int>(s_.base().size())) {
            throw Reject("coefficient " + to_string(h) + " is finer than the scheme's prefixes");
        }
        std::vector<std::string> terms;
        const int nmembers = static_cast<int>(s_.parts().size());
        for (int z0 = -1; z0 < nmembers; ++z0) {
            std::vector<int> letters{z0};
            backward(h, member(z0), letters, back, fwd, terms);
        }
        return terms.empty() ? "0" : "(" + join(terms) + ")";
    }

    void backward(const LCFunction& h, const Cylinder& c, std::vector<int>& letters, int back, int fwd,
                  std::vector<std::string>& out) {
        const int k = static_cast<int>(letters.size());  // next backward step
        if (letters.back() < 0 || k > back) {
            std::vector<int> ahead;
            forward(h, c, letters, ahead, fwd, out);
            return;
        }
        for (int z = -1; z < static_cast<int>(s_.parts().size()); ++z) {
            auto next = intersect(c, shift_image(s_.space(), member(z), k));
            if (!next) continue;
            letters.push_back(z);
            backward(h, *next, letters, back, fwd, out);
            letters.pop_back();
        }
    }

    void forward(const LCFunction& h, const Cylinder& c, const std::vector<int>& behind, std::vector<int>& ahead,
                 int fwd, std::vector<std::string>& out) {
        const int k = static_cast<int>(ahead.size()) + 1;
        if ((!ahead.empty() && ahead.back() < 0) || k > fwd) {
            auto v = lc_eval_on(s_.space(), h, c);
            if (!v)
                throw Reject("coefficient " + to_string(h) + " depends on coordinates beyond the return to E near " +
                             to_string(c));
            if (*v != 0) out.push_back("(" + to_string(*v) + ")*" + back_factor(behind) + "*" + fwd_factor(ahead));
            return;
        }
        for (int z = -1; z < static_cast<int>(s_.parts().size()); ++z) {
            auto next = intersect(c, shift_image(s_.space(), member(z), -k));
            if (!next) continue;
            ahead.push_back(z);
            forward(h, *next, behind, ahead, fwd, out);
            ahead.pop_back();
        }
    }

    // x ∈ Z_0, T^{-1}x ∈ B_1, ..., T^{-a}x ∈ B_a (B_a possibly E)
    std::string back_factor(const std::vector<int>& letters) const {
        if (letters.front() < 0) return chi_base_;
        std::vector<int> word = letters;
        bool ends_in_base = word.back() < 0;
        if (ends_in_base) word.pop_back();
        std::string u;
        for (std::size_t i = 0; i < word.size(); ++i) u += (i ? "*" : "") + gen(word[i]);
        if (ends_in_base) return "(" + u + ")*" + chi_base_ + "*(" + u + ")'";
        return "(" + u + ")*(" + u + ")'";
    }

    // T^1 x ∈ F_1, ..., T^b x ∈ F_b (F_b possibly E)
    std::string fwd_factor(const std::vector<int>& ahead) const {
        if (ahead.empty()) return "1";
        std::vector<int> word = ahead;
        bool ends_in_base = word.back() < 0;
        if (ends_in_base) word.pop_back();
        std::string v;
        for (std::size_t i = word.size(); i-- > 0;) v += (v.empty() ? "" : "*") + gen(word[i]);
        if (ends_in_base) {
            if (v.empty()) return chi_base_shift_;
            return "(" + v + ")'*" + chi_base_shift_ + "*(" + v + ")";
        }
        return "(" + v + ")'*(" + v + ")";
    }

    const Scheme& s_;
    std::string chi_base_, chi_base_shift_;
    int hull_lo_ = 0, hull_hi_ = 0;
};

}  // namespace

std::optional<std::string> degree_zero_check(const Scheme& scheme, const LCFunction& f) {
    const Space& space = scheme.space();
    const int R = radius_of(space, f);
    int depth = 2 * R + 2;
    if (!space.is_binary()) depth = std::max(depth, static_cast<int>(scheme.parts().size()));
    std::optional<std::string> failure;
    for_each_window(scheme, depth, [&](const Window& w) {
        if (failure) return;
        for (int i = 0; i < w.length; ++i)
            if (!lc_eval_on(space, f, shift_image(space, w.cylinder, i))) {
                failure = "coefficient " + to_string(f) + " is not constant on T^" + std::to_string(i) + " of window " +
                          to_string(w.cylinder);
                return;
            }
    });
    if (failure) return failure;
    std::vector<Cylinder::Constraint> near;
    const int y = scheme.fixed_point_symbol();
    if (space.is_binary()) {
        for (int p = -R; p <= R; ++p) near.emplace_back(p, y);
    } else {
        for (int p = 1; p <= std::max(R, 1); ++p) near.emplace_back(p, y);
    }
    if (!lc_eval_on(space, f, Cylinder(near)))
        return "coefficient " + to_string(f) + " is not constant near the fixed point";
    return std::nullopt;
}

std::string membership_translate(const Scheme& scheme, const CrossedElement& a) {
    Translator tr(scheme);
    std::string expr = tr.element(a);
    CrossedElement back = generator_expr_eval(scheme, expr);
    if (!equivalent(scheme.space(), back, a))
        throw Reject("generator witness does not reproduce the element");
    return expr;
}

MembershipWitness membership_translate(const Scheme& scheme, const CrossedMatrix& a) {
    MembershipWitness w;
    for (const auto& [ix, e] : a.entries()) {
        try {
            w.expressions[ix] = membership_translate(scheme, e);
        } catch (const Reject& r) {
            throw Reject("entry (" + std::to_string(ix.first) + "," + std::to_string(ix.second) + "): " + r.what());
        }
    }
    return w;
}

}  // namespace l2rank
