#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "presentation.hpp"

namespace lutcalc {

struct ParamDecl {
    std::string name;
    long long def = 0;
    std::optional<long long> lo, hi;

    bool operator==(const ParamDecl&) const = default;
};

enum class StepKind { Block, Sum2, SumT, Surgery, Fill, Blowup, Copy, Rename };

struct PieceRef {
    std::string var;
    std::string piece;

    bool operator==(const PieceRef&) const = default;
    std::string str() const { return var + "." + piece; }
};

struct Step {
    StepKind kind = StepKind::Block;
    int line = 0;
    // block ID[(ARG)] as VAR
    std::string block_id, block_arg, var;
    // sum2 / sumT / surgery / fill / copy
    PieceRef first, second;
    std::string map_name;  // empty when inline
    std::vector<std::string> inline_words;
    bool quotient = false;
    // surgery coefficients, as integer expressions
    std::string p, q, a, b;
    // blowup on / copy as / rename from to
    std::string on, as, from, to;

    bool operator==(const Step& o) const {
        return kind == o.kind && block_id == o.block_id && block_arg == o.block_arg && var == o.var &&
               first == o.first && second == o.second && map_name == o.map_name && inline_words == o.inline_words &&
               quotient == o.quotient && p == o.p && q == o.q && a == o.a && b == o.b && on == o.on && as == o.as &&
               from == o.from && to == o.to;
    }
};

struct AssertionSpec {
    std::string kind;  // pi1, h1, e_sigma, freedman, word_trivial, word_equals, pushoffs, identity
    std::string args;  // whitespace-normalized remainder
    bool require_exact = false;
    int line = 0;

    bool operator==(const AssertionSpec& o) const {
        return kind == o.kind && args == o.args && require_exact == o.require_exact;
    }
};

struct Recipe {
    std::string name;
    std::vector<ParamDecl> params;
    std::vector<Step> steps;
    std::vector<AssertionSpec> assertions;

    bool operator==(const Recipe& o) const {
        return name == o.name && params == o.params && steps == o.steps && assertions == o.assertions;
    }
};

inline const std::vector<std::string>& assertion_kinds() {
    static const std::vector<std::string> k{"pi1", "h1", "e_sigma", "freedman", "word_trivial", "word_equals",
                                            "pushoffs", "identity"};
    return k;
}

namespace detail {

struct Token {
    std::string text;
    int col;
};

// Splits on whitespace outside brackets and parentheses.
inline std::vector<Token> tokenize(const std::string& line, int lineno) {
    std::vector<Token> out;
    int depth = 0;
    std::vector<int> openers;
    std::string cur;
    int start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
        char c = i < line.size() ? line[i] : ' ';
        if ((c == ' ' || c == '\t') && depth == 0) {
            if (!cur.empty()) out.push_back({cur, start});
            cur.clear();
            continue;
        }
        if (cur.empty()) start = static_cast<int>(i) + 1;
        if (c == '(' || c == '[') {
            ++depth;
            openers.push_back(static_cast<int>(i) + 1);
        }
        if (c == ')' || c == ']') {
            if (--depth < 0) throw ParseError(lineno, static_cast<int>(i) + 1, "unbalanced '" + std::string(1, c) + "'");
            openers.pop_back();
        }
        cur += c;
    }
    if (depth != 0) throw ParseError(lineno, openers.back(), "unclosed bracket");
    return out;
}

// Splits a comma list at depth zero.
inline std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ' && c != '\t') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!is_symbol_char(c) && c != '\'') return false;
    return true;
}

class LineParser {
public:
    LineParser(std::vector<Token> toks, int line) : t_(std::move(toks)), line_(line) {}

    bool done() const { return i_ >= t_.size(); }

    [[noreturn]] void fail(const std::string& msg) const {
        int col = i_ < t_.size() ? t_[i_].col : (t_.empty() ? 1 : t_.back().col + static_cast<int>(t_.back().text.size()));
        throw ParseError(line_, col, msg);
    }

    const std::string& next(const std::string& what) {
        if (done()) fail("expected " + what);
        return t_[i_++].text;
    }

    void expect(const std::string& kw) {
        if (done() || t_[i_].text != kw) fail("expected '" + kw + "'");
        ++i_;
    }

    bool accept(const std::string& kw) {
        if (!done() && t_[i_].text == kw) {
            ++i_;
            return true;
        }
        return false;
    }

    std::string identifier(const std::string& what) {
        if (done()) fail("expected " + what);
        if (!is_identifier(t_[i_].text)) fail("expected " + what + ", got '" + t_[i_].text + "'");
        return t_[i_++].text;
    }

    PieceRef piece() {
        if (done()) fail("expected VAR.PIECE");
        const std::string& s = t_[i_].text;
        auto dot = s.find('.');
        if (dot == std::string::npos || !is_identifier(s.substr(0, dot)) || !is_identifier(s.substr(dot + 1)))
            fail("expected VAR.PIECE, got '" + s + "'");
        ++i_;
        return {s.substr(0, dot), s.substr(dot + 1)};
    }

    long long integer(const std::string& what) {
        std::string s = next(what);
        try {
            size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            --i_;
            fail("expected an integer for " + what);
        }
    }

    void finish() {
        if (!done()) fail("unexpected '" + t_[i_].text + "'");
    }

    std::string rest() {
        std::string out;
        while (!done()) {
            if (!out.empty()) out += ' ';
            out += t_[i_++].text;
        }
        return out;
    }

    size_t remaining() const { return t_.size() - i_; }
    const std::string& peek_back() const { return t_.back().text; }
    void drop_back(size_t n) { t_.resize(t_.size() - n); }

private:
    std::vector<Token> t_;
    int line_;
    size_t i_ = 0;
};

inline std::vector<std::string> parse_inline(const std::string& tok, size_t n, LineParser& lp) {
    if (tok.rfind("inline(", 0) != 0 || tok.back() != ')') lp.fail("expected a map name or inline(...)");
    auto parts = split_top(tok.substr(7, tok.size() - 8));
    if (parts.size() != n) lp.fail("inline map needs " + std::to_string(n) + " words");
    for (const auto& w : parts)
        if (w.empty()) lp.fail("empty word in inline map");
    return parts;
}

}  // namespace detail

// Line-oriented recipe text. Blank lines and lines starting with '#' are ignored.
inline Recipe parse_recipe(const std::string& text) {
    Recipe r;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool named = false;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        auto toks = detail::tokenize(raw, lineno);
        if (toks.empty() || toks[0].text[0] == '#') continue;
        detail::LineParser lp(toks, lineno);
        std::string kw = lp.next("directive");
        if (kw == "recipe") {
            if (named) lp.fail("duplicate recipe directive");
            r.name = lp.next("recipe name");
            for (char c : r.name)
                if (!is_symbol_char(c) && c != '-' && c != '+') lp.fail("bad recipe name '" + r.name + "'");
            named = true;
            lp.finish();
            continue;
        }
        if (!named) throw ParseError(lineno, 1, "recipe must start with 'recipe NAME'");
        if (kw == "param") {
            ParamDecl d;
            d.name = lp.identifier("parameter name");
            for (const auto& q : r.params)
                if (q.name == d.name) lp.fail("duplicate parameter '" + d.name + "'");
            lp.expect("default");
            d.def = lp.integer("default");
            if (lp.accept("range")) {
                std::string rg = lp.next("range LO..HI");
                auto dd = rg.find("..");
                try {
                    if (dd == std::string::npos) throw std::invalid_argument(rg);
                    d.lo = std::stoll(rg.substr(0, dd));
                    d.hi = std::stoll(rg.substr(dd + 2));
                } catch (const std::exception&) {
                    lp.fail("bad range '" + rg + "'");
                }
                if (*d.lo > *d.hi) lp.fail("empty range '" + rg + "'");
            }
            lp.finish();
            r.params.push_back(d);
            continue;
        }
        Step s;
        s.line = lineno;
        if (kw == "block") {
            s.kind = StepKind::Block;
            std::string id = lp.next("block id");
            auto paren = id.find('(');
            if (paren != std::string::npos) {
                if (id.back() != ')') lp.fail("bad block id '" + id + "'");
                s.block_arg = id.substr(paren + 1, id.size() - paren - 2);
                id = id.substr(0, paren);
                if (s.block_arg.empty()) lp.fail("empty block argument");
            }
            if (!detail::is_identifier(id)) lp.fail("bad block id '" + id + "'");
            s.block_id = id;
            lp.expect("as");
            s.var = lp.identifier("variable name");
        } else if (kw == "sum2" || kw == "sumT") {
            s.kind = kw == "sum2" ? StepKind::Sum2 : StepKind::SumT;
            s.first = lp.piece();
            s.second = lp.piece();
            lp.expect("map");
            std::string m = lp.next("map");
            if (m.rfind("inline(", 0) == 0)
                s.inline_words = detail::parse_inline(m, s.kind == StepKind::Sum2 ? 4 : 2, lp);
            else if (s.kind == StepKind::Sum2 && detail::is_identifier(m.substr(0, m.find('-'))))
                s.map_name = m;
            else
                lp.fail("expected a map name or inline(...)");
            if (s.kind == StepKind::Sum2) s.quotient = lp.accept("quotient");
        } else if (kw == "surgery") {
            s.kind = StepKind::Surgery;
            s.first = lp.piece();
            lp.expect("p");
            s.p = lp.next("p");
            lp.expect("q");
            s.q = lp.next("q");
            lp.expect("dir");
            std::string m = lp.next("m^INT"), l = lp.next("l^INT");
            if (m.rfind("m^", 0) != 0 || m.size() < 3) lp.fail("expected m^INT");
            if (l.rfind("l^", 0) != 0 || l.size() < 3) lp.fail("expected l^INT");
            s.a = m.substr(2);
            s.b = l.substr(2);
        } else if (kw == "fill") {
            s.kind = StepKind::Fill;
            s.first = lp.piece();
        } else if (kw == "blowup") {
            s.kind = StepKind::Blowup;
            s.var = lp.identifier("variable name");
            if (lp.accept("on")) s.on = lp.identifier("surface name");
        } else if (kw == "copy") {
            s.kind = StepKind::Copy;
            s.first = lp.piece();
            lp.expect("as");
            s.as = lp.identifier("surface name");
        } else if (kw == "rename") {
            s.kind = StepKind::Rename;
            s.var = lp.identifier("variable name");
            s.from = lp.identifier("generator");
            s.to = lp.identifier("generator");
        } else if (kw == "assert") {
            AssertionSpec a;
            a.line = lineno;
            a.kind = lp.next("assertion kind");
            bool known = false;
            for (const auto& k : assertion_kinds()) known = known || k == a.kind;
            if (!known) throw ParseError(lineno, toks[1].col, "unknown assertion kind '" + a.kind + "'");
            if (lp.remaining() >= 2 && lp.peek_back() == "exact") {
                auto all = toks;
                if (all[all.size() - 2].text == "requires") {
                    a.require_exact = true;
                    lp.drop_back(2);
                }
            }
            a.args = lp.rest();
            if (a.args.empty()) throw ParseError(lineno, toks[1].col, "assertion needs arguments");
            r.assertions.push_back(a);
            continue;
        } else {
            throw ParseError(lineno, toks[0].col, "unknown directive '" + kw + "'");
        }
        lp.finish();
        r.steps.push_back(s);
    }
    if (!named) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing 'recipe NAME'");
    return r;
}

inline std::string serialize_step(const Step& s) {
    switch (s.kind) {
        case StepKind::Block:
            return "block " + s.block_id + (s.block_arg.empty() ? "" : "(" + s.block_arg + ")") + " as " + s.var;
        case StepKind::Sum2:
        case StepKind::SumT: {
            std::string out = (s.kind == StepKind::Sum2 ? "sum2 " : "sumT ") + s.first.str() + " " + s.second.str() + " map ";
            if (s.map_name.empty()) {
                out += "inline(";
                for (size_t i = 0; i < s.inline_words.size(); ++i) out += (i ? "," : "") + s.inline_words[i];
                out += ")";
            } else {
                out += s.map_name;
            }
            if (s.quotient) out += " quotient";
            return out;
        }
        case StepKind::Surgery:
            return "surgery " + s.first.str() + " p " + s.p + " q " + s.q + " dir m^" + s.a + " l^" + s.b;
        case StepKind::Fill:
            return "fill " + s.first.str();
        case StepKind::Blowup:
            return "blowup " + s.var + (s.on.empty() ? "" : " on " + s.on);
        case StepKind::Copy:
            return "copy " + s.first.str() + " as " + s.as;
        default:
            return "rename " + s.var + " " + s.from + " " + s.to;
    }
}

// Canonical form: one directive per line, no comments.
inline std::string serialize_recipe(const Recipe& r) {
    std::string out = "recipe " + r.name + "\n";
    for (const auto& p : r.params) {
        out += "param " + p.name + " default " + std::to_string(p.def);
        if (p.lo) out += " range " + std::to_string(*p.lo) + ".." + std::to_string(*p.hi);
        out += "\n";
    }
    for (const auto& s : r.steps) out += serialize_step(s) + "\n";
    for (const auto& a : r.assertions) out += "assert " + a.kind + " " + a.args + (a.require_exact ? " requires exact" : "") + "\n";
    return out;
}

}  // namespace lutcalc
