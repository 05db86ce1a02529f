#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace lutcalc {

using Rational = boost::multiprecision::cpp_rational;

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact rational arithmetic over + - * / ^ and parentheses; identifiers resolve through lookup.
class ExprReader {
public:
    using Lookup = std::function<std::optional<Rational>(const std::string&)>;

    ExprReader(std::string text, Lookup lookup) : s_(std::move(text)), lookup_(std::move(lookup)) {}

    Rational parse() {
        Rational v = sum();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ExprError("expression '" + s_ + "' at " + std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Rational sum() {
        Rational v = product();
        for (;;) {
            if (eat('+'))
                v += product();
            else if (eat('-'))
                v -= product();
            else
                return v;
        }
    }

    Rational product() {
        Rational v = unary();
        for (;;) {
            if (eat('*')) {
                v *= unary();
            } else if (eat('/')) {
                Rational d = unary();
                if (d == 0) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    Rational unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Rational power() {
        Rational base = atom();
        if (!eat('^')) return base;
        Rational ex = unary();
        if (boost::multiprecision::denominator(ex) != 1) fail("non-integral exponent");
        long long n = static_cast<long long>(boost::multiprecision::numerator(ex));
        if (n < 0 && base == 0) fail("zero to a negative power");
        Rational r = 1;
        for (long long i = 0; i < (n < 0 ? -n : n); ++i) r *= base;
        return n < 0 ? Rational(1) / r : r;
    }

    Rational atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected a value");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Rational v = sum();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Rational(boost::multiprecision::cpp_int(s_.substr(st, pos_ - st)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t st = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(st, pos_ - st);
            auto v = lookup_ ? lookup_(name) : std::nullopt;
            if (!v) {
                pos_ = st;
                fail("unknown name '" + name + "'");
            }
            return *v;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    Lookup lookup_;
    size_t pos_ = 0;
};

inline Rational eval_expr(const std::string& text, const ExprReader::Lookup& lookup) {
    return ExprReader(text, lookup).parse();
}

inline long long eval_integer(const std::string& text, const ExprReader::Lookup& lookup) {
    Rational v = eval_expr(text, lookup);
    if (boost::multiprecision::denominator(v) != 1) throw ExprError("expression '" + text + "' is not an integer");
    return static_cast<long long>(boost::multiprecision::numerator(v));
}

}  // namespace lutcalc
