#include <cctype>
#include <limits>

#include "jetlaw/errors.hpp"
#include "jetlaw/expr.hpp"

namespace jetlaw {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        Expr e = expression();
        skip_space();
        if (pos_ != text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

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

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool at_digit() {
        skip_space();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    std::string digits() {
        if (!at_digit()) fail("expected integer");
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    int small_int() {
        skip_space();
        const std::size_t start = pos_;
        const bool negative = accept('-');
        const std::string d = digits();
        if (d.size() > 9) {
            pos_ = start;
            fail("integer out of range");
        }
        const int v = std::stoi(d);
        return negative ? -v : v;
    }

    Expr expression() {
        skip_space();
        Expr result;
        if (accept('-')) {
            result = -term();
        } else {
            accept('+');
            result = term();
        }
        for (;;) {
            if (accept('+')) {
                result += term();
            } else if (accept('-')) {
                result -= term();
            } else {
                return result;
            }
        }
    }

    Expr term() {
        Expr result = unary();
        for (;;) {
            if (accept('*')) {
                result *= unary();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                Rational d = Rational::parse(digits());
                if (d.is_zero()) throw ParseError("division by zero", at);
                result *= Expr(d.inverse());
            } else {
                return result;
            }
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return factor();
    }

    Expr factor() {
        Expr b = base();
        if (!accept('^')) return b;
        const int exponent = small_int();
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '/') fail("rational powers are not supported");
        try {
            return pow(b, exponent);
        } catch (const std::domain_error& e) {
            fail(e.what());
        }
    }

    Expr base() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return Expr(Rational::parse(digits()));
        if (c == '(') {
            ++pos_;
            Expr inner = expression();
            expect(')');
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return named();
        fail(std::string("unexpected character '") + c + "'");
    }

    Expr named() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        skip_space();
        const char next = pos_ < text_.size() ? text_[pos_] : '\0';

        const bool is_function = name == "exp" || name == "sin" || name == "cos" || name == "ln";
        if (next == '(') {
            if (!is_function) {
                pos_ = start;
                fail("unknown function '" + name + "'");
            }
            ++pos_;
            Expr arg = expression();
            expect(')');
            if (name == "exp") return exp(arg);
            if (name == "sin") return sin(arg);
            if (name == "cos") return cos(arg);
            try {
                return ln(arg);
            } catch (const std::domain_error& e) {
                pos_ = start;
                fail(e.what());
            }
        }
        if (is_function) {
            pos_ = start;
            fail("function '" + name + "' needs an argument");
        }
        if (auto s = symbol_from_name(name)) {
            if (next == '[') fail("independent variable '" + name + "' cannot carry a jet index");
            return Expr::symbol(*s);
        }
        if (next != '[') return Expr::jet(name, 0, 0);
        ++pos_;
        const std::size_t first_at = (skip_space(), pos_);
        const int i = small_int();
        expect(',');
        const std::size_t second_at = (skip_space(), pos_);
        const int j = small_int();
        expect(']');
        if (i < 0) throw ParseError("negative jet index", first_at);
        if (j < 0) throw ParseError("negative jet index", second_at);
        return Expr::jet(name, i, j);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace jetlaw
