#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lutcalc {

struct Syllable {
    int gen;
    long long exp;

    bool operator==(const Syllable&) const = default;
};

// A letter is a signed generator index shifted by one: +(g+1) or -(g+1).
using Letter = int;

inline Letter letter_of(int gen, bool inverse) { return inverse ? -(gen + 1) : gen + 1; }
inline int letter_gen(Letter l) { return std::abs(l) - 1; }

// Free-group element stored as reduced run-length syllables.
class Word {
public:
    Word() = default;

    Word(std::initializer_list<Syllable> s) {
        for (const auto& x : s) push(x.gen, x.exp);
    }

    static Word gen(int g, long long e = 1) {
        Word w;
        w.push(g, e);
        return w;
    }

    static Word from_letters(const std::vector<Letter>& ls) {
        Word w;
        for (Letter l : ls) w.push(letter_gen(l), l > 0 ? 1 : -1);
        return w;
    }

    const std::vector<Syllable>& syllables() const { return syl_; }
    bool empty() const { return syl_.empty(); }

    long long length() const {
        long long n = 0;
        for (const auto& s : syl_) n += std::llabs(s.exp);
        return n;
    }

    std::vector<Letter> letters() const {
        std::vector<Letter> out;
        out.reserve(static_cast<size_t>(length()));
        for (const auto& s : syl_) {
            Letter l = letter_of(s.gen, s.exp < 0);
            for (long long i = 0; i < std::llabs(s.exp); ++i) out.push_back(l);
        }
        return out;
    }

    // Appends g^e, cancelling against the tail.
    void push(int g, long long e) {
        if (e == 0) return;
        if (!syl_.empty() && syl_.back().gen == g) {
            syl_.back().exp += e;
            if (syl_.back().exp == 0) syl_.pop_back();
        } else {
            syl_.push_back({g, e});
        }
    }

    Word inverse() const {
        Word w;
        for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) w.syl_.push_back({it->gen, -it->exp});
        return w;
    }

    Word& operator*=(const Word& o) {
        for (const auto& s : o.syl_) push(s.gen, s.exp);
        return *this;
    }

    friend Word operator*(Word a, const Word& b) { return a *= b; }

    Word pow(long long n) const {
        Word base = n < 0 ? inverse() : *this;
        Word out;
        for (long long i = 0; i < std::llabs(n); ++i) out *= base;
        return out;
    }

    long long exponent_sum(int g) const {
        long long n = 0;
        for (const auto& s : syl_)
            if (s.gen == g) n += s.exp;
        return n;
    }

    bool mentions(int g) const {
        return std::any_of(syl_.begin(), syl_.end(), [g](const Syllable& s) { return s.gen == g; });
    }

    int max_gen() const {
        int m = -1;
        for (const auto& s : syl_) m = std::max(m, s.gen);
        return m;
    }

    // Replaces every generator g by images[g].
    Word substitute(const std::vector<Word>& images) const {
        Word out;
        for (const auto& s : syl_) out *= images.at(static_cast<size_t>(s.gen)).pow(s.exp);
        return out;
    }

    Word substitute(const std::function<Word(int)>& image) const {
        Word out;
        for (const auto& s : syl_) out *= image(s.gen).pow(s.exp);
        return out;
    }

    Word cyclically_reduced() const {
        Word w = *this;
        while (w.syl_.size() >= 2 && w.syl_.front().gen == w.syl_.back().gen) {
            long long e = w.syl_.front().exp + w.syl_.back().exp;
            int g = w.syl_.front().gen;
            w.syl_.erase(w.syl_.begin());
            w.syl_.pop_back();
            if (e != 0) {
                if (!w.syl_.empty() && w.syl_.front().gen == g) {
                    // cannot happen in a reduced word, but keep the form reduced
                    w.syl_.front().exp += e;
                } else {
                    w.syl_.insert(w.syl_.begin(), {g, e});
                }
                break;
            }
        }
        return w;
    }

    bool operator==(const Word&) const = default;
    bool operator<(const Word& o) const { return letters() < o.letters(); }

private:
    std::vector<Syllable> syl_;
};

inline Word reduce(const Word& w) { return w; }

inline Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

inline Word conjugate(const Word& w, const Word& by) { return by * w * by.inverse(); }

// Letter-level free reduction of a raw letter sequence.
inline std::vector<Letter> free_reduce(const std::vector<Letter>& in) {
    std::vector<Letter> out;
    out.reserve(in.size());
    for (Letter l : in) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

// Minimal rotation among all rotations of w and of w^-1, on cyclically reduced letters.
inline std::vector<Letter> canonical_cyclic(const Word& w) {
    auto base = w.cyclically_reduced().letters();
    std::vector<Letter> best = base;
    auto consider = [&](const std::vector<Letter>& v) {
        size_t n = v.size();
        for (size_t r = 0; r < n; ++r) {
            std::vector<Letter> rot(v.begin() + static_cast<long>(r), v.end());
            rot.insert(rot.end(), v.begin(), v.begin() + static_cast<long>(r));
            if (rot < best) best = rot;
        }
    };
    consider(base);
    auto inv = w.cyclically_reduced().inverse().letters();
    if (inv < best) best = inv;
    consider(inv);
    return best;
}

}  // namespace lutcalc
