#pragma once

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coset.hpp"

namespace lutcalc {

// conjugator * relator^sign * conjugator^-1
struct DerivationFactor {
    Word conjugator;
    size_t relator = 0;
    int sign = 1;

    Word value(const Presentation& p) const {
        return conjugate(p.relators.at(relator).pow(sign), conjugator);
    }
};

struct Derivation {
    std::vector<DerivationFactor> factors;

    Word expand(const Presentation& p) const {
        Word w;
        for (const auto& f : factors) w *= f.value(p);
        return w;
    }

    size_t depth() const { return factors.size(); }
};

struct DerivationResult {
    std::optional<Derivation> derivation;
    long long nodes = 0;
    int depth_reached = 0;
};

namespace detail {

struct LetterHash {
    size_t operator()(const std::vector<Letter>& v) const {
        size_t h = 1469598103934665603ull;
        for (Letter l : v) h = (h ^ static_cast<size_t>(l + 0x9e37)) * 1099511628211ull;
        return h;
    }
};

struct Rotation {
    std::vector<Letter> letters;
    size_t relator;
    int sign;
    size_t shift;  // rotation = r^sign[shift:] r^sign[:shift]
};

struct SearchNode {
    std::vector<Letter> word;
    int parent;
    size_t rotation;
    size_t position;
};

}  // namespace detail

// Breadth-first search for w as a product of conjugated relators. Each step inserts a cyclic
// rotation of a relator or its inverse at some position of the current word and freely reduces;
// only insertions that cancel at least one letter are tried. Layers are capped at
// budget.max_frontier words, shortest first.
inline DerivationResult prove_word_trivial(const Presentation& p, const Word& w, const Budget& budget = {}) {
    using detail::Rotation;
    using detail::SearchNode;
    DerivationResult res;
    std::vector<Rotation> rots;
    size_t max_rel = 0;
    for (size_t i = 0; i < p.relators.size(); ++i) {
        for (int sign : {1, -1}) {
            auto ls = p.relators[i].pow(sign).letters();
            max_rel = std::max(max_rel, ls.size());
            for (size_t k = 0; k < ls.size(); ++k) {
                std::vector<Letter> rot(ls.begin() + static_cast<long>(k), ls.end());
                rot.insert(rot.end(), ls.begin(), ls.begin() + static_cast<long>(k));
                bool dup = std::any_of(rots.begin(), rots.end(), [&](const Rotation& r) { return r.letters == rot; });
                if (!dup) rots.push_back({rot, i, sign, k});
            }
        }
    }
    // rotations indexed by first letter and by last letter
    std::unordered_map<Letter, std::vector<size_t>> by_first, by_last;
    for (size_t i = 0; i < rots.size(); ++i) {
        by_first[rots[i].letters.front()].push_back(i);
        by_last[rots[i].letters.back()].push_back(i);
    }

    std::vector<SearchNode> nodes;
    nodes.push_back({w.letters(), -1, 0, 0});
    auto build = [&](int leaf) {
        Derivation d;
        int cur = leaf;
        std::vector<DerivationFactor> rev;
        while (nodes[static_cast<size_t>(cur)].parent >= 0) {
            const SearchNode& n = nodes[static_cast<size_t>(cur)];
            const SearchNode& par = nodes[static_cast<size_t>(n.parent)];
            const Rotation& rot = rots[n.rotation];
            std::vector<Letter> u(par.word.begin(), par.word.begin() + static_cast<long>(n.position));
            // rho = c^-1 r^sign c with c = first `shift` letters of r^sign
            auto rl = p.relators[rot.relator].pow(rot.sign).letters();
            std::vector<Letter> c(rl.begin(), rl.begin() + static_cast<long>(rot.shift));
            Word conj = Word::from_letters(u) * Word::from_letters(c).inverse();
            rev.push_back({conj, rot.relator, -rot.sign});
            cur = n.parent;
        }
        d.factors.assign(rev.rbegin(), rev.rend());
        return d;
    };
    if (nodes[0].word.empty()) {
        res.derivation = Derivation{};
        return res;
    }
    std::unordered_map<std::vector<Letter>, int, detail::LetterHash> seen;
    seen[nodes[0].word] = 0;
    std::vector<int> layer{0};
    size_t length_cap = nodes[0].word.size() + 2 * max_rel;
    for (int depth = 1; depth <= budget.max_depth && !layer.empty(); ++depth) {
        res.depth_reached = depth;
        std::vector<int> next;
        for (int id : layer) {
            const std::vector<Letter> cur = nodes[static_cast<size_t>(id)].word;
            for (size_t pos = 0; pos <= cur.size(); ++pos) {
                std::vector<size_t> cands;
                if (pos > 0) {
                    auto it = by_first.find(-cur[pos - 1]);
                    if (it != by_first.end()) cands.insert(cands.end(), it->second.begin(), it->second.end());
                }
                if (pos < cur.size()) {
                    auto it = by_last.find(-cur[pos]);
                    if (it != by_last.end()) cands.insert(cands.end(), it->second.begin(), it->second.end());
                }
                std::sort(cands.begin(), cands.end());
                cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
                for (size_t ri : cands) {
                    std::vector<Letter> nw(cur.begin(), cur.begin() + static_cast<long>(pos));
                    nw.insert(nw.end(), rots[ri].letters.begin(), rots[ri].letters.end());
                    nw.insert(nw.end(), cur.begin() + static_cast<long>(pos), cur.end());
                    nw = free_reduce(nw);
                    ++res.nodes;
                    if (nw.size() > length_cap || seen.count(nw)) continue;
                    nodes.push_back({nw, id, ri, pos});
                    int nid = static_cast<int>(nodes.size()) - 1;
                    seen[nw] = nid;
                    if (nw.empty()) {
                        res.derivation = build(nid);
                        return res;
                    }
                    next.push_back(nid);
                }
            }
        }
        std::stable_sort(next.begin(), next.end(), [&](int a, int b) {
            return nodes[static_cast<size_t>(a)].word.size() < nodes[static_cast<size_t>(b)].word.size();
        });
        if (next.size() > static_cast<size_t>(budget.max_frontier)) next.resize(static_cast<size_t>(budget.max_frontier));
        layer = std::move(next);
    }
    return res;
}

}  // namespace lutcalc
