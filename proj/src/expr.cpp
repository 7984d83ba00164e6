#include "l2rank/scheme.hpp"

#include <cctype>

namespace l2rank {

namespace {

class ExprParser {
public:
    ExprParser(const Scheme& scheme, const std::string& text) : s_(scheme), text_(text) {}

    CrossedElement parse() {
        CrossedElement e = sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw DomainError("generator expression: " + what + " at offset " + std::to_string(pos_) + " in \"" + text_ +
                          "\"");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    CrossedElement sum() {
        CrossedElement acc = product();
        for (;;) {
            if (accept('+')) acc += product();
            else if (accept('-')) acc -= product();
            else return acc;
        }
    }

    CrossedElement product() {
        CrossedElement acc = unary();
        while (accept('*')) acc = multiply(s_.space(), acc, unary());
        return acc;
    }

    CrossedElement unary() {
        if (accept('-')) return Rational(-1) * unary();
        return postfix();
    }

    CrossedElement postfix() {
        CrossedElement e = primary();
        while (accept('\'')) e = adjoint(s_.space(), e);
        return e;
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    CrossedElement primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            CrossedElement e = sum();
            if (!accept(')')) fail("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string lit = digits();
            std::size_t save = pos_;
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skip_space();
                std::string den = digits();
                if (den.empty()) {
                    pos_ = save;
                } else {
                    lit += "/" + den;
                }
            } else {
                pos_ = save;
            }
            return CrossedElement::scalar(parse_rational(lit));
        }
        if (text_.compare(pos_, 3, "adj") == 0) {
            pos_ += 3;
            if (!accept('(')) fail("adj needs '('");
            CrossedElement e = sum();
            if (!accept(')')) fail("missing ')'");
            return adjoint(s_.space(), e);
        }
        if (c == 'g') {
            ++pos_;
            std::string idx = digits();
            if (idx.empty()) fail("generator index expected");
            std::size_t z = std::stoul(idx);
            if (z >= s_.parts().size()) fail("no generator g" + idx);
            return CrossedElement::monomial(1, s_.parts()[z], 1);
        }
        fail("unexpected character");
    }

    const Scheme& s_;
    std::string text_;
    std::size_t pos_ = 0;
};

}  // namespace

CrossedElement generator_expr_eval(const Scheme& scheme, const std::string& expr) {
    return ExprParser(scheme, expr).parse();
}

}  // namespace l2rank
