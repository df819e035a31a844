#include "poly_parse.hpp"

#include <cctype>

namespace g4 {

namespace {

class Parser {
public:
    Parser(const std::string& text, VarTablePtr vars)
        : s_(text), vars_(std::move(vars)) {}

    MPoly run() {
        MPoly p = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error("polynomial syntax error at offset " + std::to_string(pos_) +
                          ": " + msg, pos_);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    MPoly parse_expr() {
        MPoly acc = parse_term();
        while (true) {
            if (eat('+')) acc += parse_term();
            else if (eat('-')) acc -= parse_term();
            else return acc;
        }
    }

    MPoly parse_term() {
        MPoly acc = parse_factor();
        while (true) {
            char c = peek();
            if (c == '*') { ++pos_; acc *= parse_factor(); }
            else return acc;
        }
    }

    MPoly parse_factor() {
        MPoly base = parse_atom();
        if (eat('^')) {
            int e = parse_int();
            if (e < 0) fail("negative exponent");
            return pow(base, e);
        }
        return base;
    }

    int parse_int() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected integer");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    MPoly parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MPoly inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return -parse_factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_var();
        fail(std::string("unexpected character '") + c + "'");
    }

    MPoly parse_number() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string numtext = s_.substr(start, pos_ - start);
        // fraction: only when followed by '/digits' (no whitespace ambiguity here)
        size_t save = pos_;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            skip_ws();
            size_t dstart = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == dstart) fail("expected denominator");
            std::string dentext = s_.substr(dstart, pos_ - dstart);
            auto q = parse_rational(numtext + "/" + dentext);
            if (!q) fail("bad rational literal");
            return MPoly::constant(vars_, *q);
        }
        pos_ = save;
        auto q = parse_rational(numtext);
        if (!q) fail("bad integer literal");
        return MPoly::constant(vars_, *q);
    }

    MPoly parse_var() {
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        auto idx = vars_->index_of(name);
        if (!idx) {
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        return MPoly::variable(vars_, *idx);
    }

    const std::string& s_;
    VarTablePtr vars_;
    size_t pos_ = 0;
};

} // namespace

MPoly parse_poly(const std::string& text, const VarTablePtr& vars) {
    return Parser(text, vars).run();
}

} // namespace g4
