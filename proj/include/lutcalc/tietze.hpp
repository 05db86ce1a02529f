#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "derivation.hpp"

namespace lutcalc {

struct Elimination {
    std::string generator;
    Word relator;  // the defining relator, in the presentation current at that pass
    Word value;    // what the generator was replaced by
};

struct SimplifyResult {
    Presentation presentation;
    std::vector<Word> map;  // image of each original generator, in the new generators
    std::vector<Elimination> trace;
    int passes = 0;
    int probes = 0;  // generators shown trivial by derivation search
};

namespace detail {

inline void tidy(Presentation& p) {
    std::vector<Word> rels;
    rels.swap(p.relators);
    for (const auto& r : rels) p.add_relator(r);
}

// Generators occurring as a single syllable with exponent +-1 in r.
inline std::vector<int> solvable_generators(const Word& r) {
    std::vector<int> out;
    std::vector<int> count;
    for (const auto& s : r.syllables()) {
        if (static_cast<size_t>(s.gen) >= count.size()) count.resize(static_cast<size_t>(s.gen) + 1, 0);
        ++count[static_cast<size_t>(s.gen)];
    }
    for (const auto& s : r.syllables())
        if (count[static_cast<size_t>(s.gen)] == 1 && (s.exp == 1 || s.exp == -1)) out.push_back(s.gen);
    std::sort(out.begin(), out.end());
    return out;
}

// Solves r = 1 for generator g occurring once with exponent +-1.
inline Word solve_for(const Word& r, int g) {
    const auto& syl = r.syllables();
    size_t k = 0;
    while (syl[k].gen != g) ++k;
    Word before, after;
    for (size_t i = 0; i < k; ++i) before.push(syl[i].gen, syl[i].exp);
    for (size_t i = k + 1; i < syl.size(); ++i) after.push(syl[i].gen, syl[i].exp);
    // before * g^e * after = 1  =>  g^e = before^-1 * after^-1
    Word ge = before.inverse() * after.inverse();
    return syl[k].exp == 1 ? ge : ge.inverse();
}

// Pair of distinct generators when r is a commutator of two single letters.
inline std::optional<std::pair<int, int>> commuting_pair(const Word& r) {
    auto ls = r.letters();
    if (ls.size() != 4 || ls[0] != -ls[2] || ls[1] != -ls[3]) return std::nullopt;
    int g = letter_gen(ls[0]), h = letter_gen(ls[1]);
    if (g == h) return std::nullopt;
    return std::make_pair(std::min(g, h), std::max(g, h));
}

using CommutationTable = std::vector<std::vector<bool>>;

inline CommutationTable commutation_table(const Presentation& p) {
    CommutationTable t(static_cast<size_t>(p.ngens()), std::vector<bool>(static_cast<size_t>(p.ngens()), false));
    for (const auto& r : p.relators)
        if (auto c = commuting_pair(r)) {
            t[static_cast<size_t>(c->first)][static_cast<size_t>(c->second)] = true;
            t[static_cast<size_t>(c->second)][static_cast<size_t>(c->first)] = true;
        }
    return t;
}

// Cancels a letter against a later inverse when every letter in between commutes with it.
// With cyclic set, the word is read as a cyclic word.
inline Word commutation_reduce(const Word& w, const CommutationTable& comm, bool cyclic) {
    std::vector<Letter> ls = w.letters();
    bool changed = true;
    while (changed) {
        changed = false;
        size_t n = ls.size();
        for (size_t i = 0; i < n && !changed; ++i) {
            int g = letter_gen(ls[i]);
            for (size_t k = 1; k < n; ++k) {
                size_t j = i + k;
                if (j >= n) {
                    if (!cyclic) break;
                    j -= n;
                }
                if (ls[j] == -ls[i]) {
                    ls.erase(ls.begin() + static_cast<long>(std::max(i, j)));
                    ls.erase(ls.begin() + static_cast<long>(std::min(i, j)));
                    changed = true;
                    break;
                }
                int h = letter_gen(ls[j]);
                if (h != g && !comm[static_cast<size_t>(g)][static_cast<size_t>(h)]) break;
            }
        }
    }
    return Word::from_letters(ls);
}

// Rewrites every relator that is not itself a commutation relation, until nothing shrinks.
inline bool shorten_by_commutation(Presentation& p, std::vector<Word>& map) {
    bool any = false;
    for (;;) {
        CommutationTable comm = commutation_table(p);
        bool changed = false;
        std::vector<Word> rels;
        rels.swap(p.relators);
        for (const auto& r : rels) {
            Word nr = commuting_pair(r) ? r : commutation_reduce(r, comm, true);
            if (nr.length() != r.length()) changed = true;
            p.add_relator(nr);
        }
        if (p.relators.size() != rels.size()) changed = true;
        for (auto& w : map) w = commutation_reduce(w, comm, false);
        if (!changed) return any;
        any = true;
    }
}

}  // namespace detail

// Repeatedly eliminates a generator defined by a relator in which it occurs exactly once
// with exponent +-1. The shortest such relator wins; ties go to the lowest generator index.
inline SimplifyResult tietze_simplify(const Presentation& in, const Budget& budget = {}) {
    SimplifyResult res;
    res.presentation = in;
    detail::tidy(res.presentation);
    for (int g = 0; g < in.ngens(); ++g) res.map.push_back(Word::gen(g));
    Presentation& p = res.presentation;
    while (res.passes < budget.max_tietze_passes) {
        detail::shorten_by_commutation(p, res.map);
        std::optional<std::tuple<long long, int, size_t>> best;
        for (size_t i = 0; i < p.relators.size(); ++i) {
            long long len = p.relators[i].length();
            for (int g : detail::solvable_generators(p.relators[i])) {
                auto cand = std::make_tuple(len, g, i);
                if (!best || cand < *best) best = cand;
            }
        }
        if (!best) {
            // stuck: look for a generator that is trivial by a short derivation and add it as a relator
            bool found = false;
            for (int g = 0; g < p.ngens() && !found; ++g) {
                auto d = prove_word_trivial(p, Word::gen(g), budget);
                if (d.derivation) {
                    p.relators.push_back(Word::gen(g));
                    ++res.probes;
                    found = true;
                }
            }
            if (!found) break;
            continue;
        }
        auto [len, g, ri] = *best;
        Word rel = p.relators[ri];
        Word value = detail::solve_for(rel, g);
        res.trace.push_back({p.generators[static_cast<size_t>(g)], rel, value});
        // image of each current generator after removing g, renumbered
        std::vector<Word> image;
        for (int h = 0; h < p.ngens(); ++h) image.push_back(h == g ? Word() : Word::gen(h < g ? h : h - 1));
        Word renumbered_value = value.substitute(image);
        image[static_cast<size_t>(g)] = renumbered_value;
        Presentation next;
        for (int h = 0; h < p.ngens(); ++h)
            if (h != g) next.generators.push_back(p.generators[static_cast<size_t>(h)]);
        for (size_t i = 0; i < p.relators.size(); ++i)
            if (i != ri) next.add_relator(p.relators[i].substitute(image));
        for (auto& w : res.map) w = w.substitute(image);
        p = std::move(next);
        ++res.passes;
    }
    return res;
}

}  // namespace lutcalc
