#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "word.hpp"

namespace lutcalc {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}
};

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    int ngens() const { return static_cast<int>(generators.size()); }

    std::optional<int> find(const std::string& sym) const {
        for (int i = 0; i < ngens(); ++i)
            if (generators[static_cast<size_t>(i)] == sym) return i;
        return std::nullopt;
    }

    int index(const std::string& sym) const {
        auto i = find(sym);
        if (!i) throw std::invalid_argument("unknown generator '" + sym + "'");
        return *i;
    }

    int add_generator(const std::string& sym) {
        if (find(sym)) throw std::invalid_argument("duplicate generator '" + sym + "'");
        generators.push_back(sym);
        return ngens() - 1;
    }

    // Stores r cyclically reduced; trivial and duplicate relators are dropped.
    bool add_relator(const Word& r) {
        Word c = r.cyclically_reduced();
        if (c.empty()) return false;
        if (c.max_gen() >= ngens()) throw std::invalid_argument("relator mentions an unlisted generator");
        auto key = canonical_cyclic(c);
        for (const auto& q : relators)
            if (canonical_cyclic(q) == key) return false;
        relators.push_back(c);
        return true;
    }

    bool operator==(const Presentation&) const = default;
};

inline std::string format_word(const Word& w, const std::vector<std::string>& names) {
    if (w.empty()) return "1";
    std::string out;
    for (const auto& s : w.syllables()) {
        if (!out.empty()) out += '*';
        out += names.at(static_cast<size_t>(s.gen));
        if (s.exp != 1) out += '^' + std::to_string(s.exp);
    }
    return out;
}

inline std::string format_word(const Word& w, const Presentation& p) { return format_word(w, p.generators); }

inline bool is_symbol_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool is_symbol_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

// Recursive-descent reader for words such as  x^-1*[b1^-1,y^-1]*(a b)^2.
// Juxtaposition separated by spaces or '*' multiplies; "1" is the identity.
class WordReader {
public:
    using SymbolLookup = std::function<std::optional<int>(const std::string&)>;
    using ParamLookup = std::function<std::optional<long long>(const std::string&)>;

    WordReader(std::string text, SymbolLookup sym, ParamLookup param = nullptr, int line = 1, int col0 = 1)
        : s_(std::move(text)), sym_(std::move(sym)), param_(std::move(param)), line_(line), col0_(col0) {}

    Word parse() {
        Word w = product();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col0_ + static_cast<int>(pos_), msg); }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool at_factor_start() {
        skip_ws();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return is_symbol_start(c) || c == '[' || c == '(' || c == '1';
    }

    Word product() {
        Word w;
        if (!at_factor_start()) fail("expected a word");
        w *= factor();
        for (;;) {
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                if (!at_factor_start()) fail("expected a factor after '*'");
                w *= factor();
            } else if (at_factor_start()) {
                w *= factor();
            } else {
                break;
            }
        }
        return w;
    }

    Word factor() {
        skip_ws();
        Word base;
        char c = s_[pos_];
        if (c == '[') {
            ++pos_;
            Word u = product();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ',') fail("expected ',' in commutator");
            ++pos_;
            Word v = product();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ']') fail("expected ']'");
            ++pos_;
            base = commutator(u, v);
        } else if (c == '(') {
            ++pos_;
            base = product();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
            ++pos_;
        } else if (c == '1' && (pos_ + 1 >= s_.size() || !is_symbol_char(s_[pos_ + 1]))) {
            ++pos_;
        } else if (is_symbol_start(c)) {
            size_t start = pos_;
            while (pos_ < s_.size() && is_symbol_char(s_[pos_])) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            auto g = sym_(name);
            if (!g) {
                pos_ = start;
                fail("unknown generator '" + name + "'");
            }
            base = Word::gen(*g);
        } else {
            fail("unexpected '" + std::string(1, c) + "'");
        }
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            base = base.pow(exponent());
        }
        return base;
    }

    long long exponent() {
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            long long v = std::stoll(s_.substr(start, pos_ - start));
            return neg ? -v : v;
        }
        if (pos_ < s_.size() && is_symbol_start(s_[pos_])) {
            size_t start = pos_;
            while (pos_ < s_.size() && is_symbol_char(s_[pos_])) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            std::optional<long long> v = param_ ? param_(name) : std::nullopt;
            if (!v) {
                pos_ = start;
                fail("unknown parameter '" + name + "'");
            }
            return neg ? -*v : *v;
        }
        fail("expected an exponent");
    }

    std::string s_;
    SymbolLookup sym_;
    ParamLookup param_;
    int line_;
    int col0_;
    size_t pos_ = 0;
};

inline Word parse_word(const std::string& text, const Presentation& p,
                       const WordReader::ParamLookup& params = nullptr) {
    return WordReader(text, [&p](const std::string& s) { return p.find(s); }, params).parse();
}

// Builds a presentation from symbol list and relator strings.
inline Presentation make_presentation(const std::vector<std::string>& gens, const std::vector<std::string>& rels) {
    Presentation p;
    for (const auto& g : gens) p.add_generator(g);
    for (const auto& r : rels) p.add_relator(parse_word(r, p));
    return p;
}

}  // namespace lutcalc
