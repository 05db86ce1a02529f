#pragma once

#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "lutcalc/builtins.hpp"

namespace oracle {

using lutcalc::BigInt;
using lutcalc::Rational;

// Stack-based free reduction over signed letters.
inline std::vector<int> free_reduce(const std::vector<int>& in) {
    std::vector<int> st;
    for (int l : in) {
        if (!st.empty() && st.back() == -l)
            st.pop_back();
        else
            st.push_back(l);
    }
    return st;
}

inline BigInt det_cofactor(const std::vector<std::vector<BigInt>>& a) {
    size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    BigInt d = 0;
    for (size_t c = 0; c < n; ++c) {
        if (a[0][c] == 0) continue;
        std::vector<std::vector<BigInt>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<BigInt> row;
            for (size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(row);
        }
        BigInt t = a[0][c] * det_cofactor(minor);
        d += (c % 2 == 0) ? t : BigInt(-t);
    }
    return d;
}

inline void choose(size_t n, size_t k, std::vector<std::vector<size_t>>& out, std::vector<size_t>& cur, size_t from = 0) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (size_t i = from; i < n; ++i) {
        cur.push_back(i);
        choose(n, k, out, cur, i + 1);
        cur.pop_back();
    }
}

inline BigInt gcd_big(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}, D_k = gcd of k x k minors.
struct InvariantFactors {
    long long free_rank = 0;
    std::vector<BigInt> torsion;
};

inline InvariantFactors invariant_factors(const std::vector<std::vector<BigInt>>& m, size_t cols) {
    size_t rows = m.size();
    std::vector<BigInt> D{1};
    for (size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<size_t>> rs, cs;
        std::vector<size_t> cur;
        choose(rows, k, rs, cur);
        choose(cols, k, cs, cur);
        BigInt g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                std::vector<std::vector<BigInt>> sub(k, std::vector<BigInt>(k));
                for (size_t i = 0; i < k; ++i)
                    for (size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
                g = gcd_big(g, det_cofactor(sub));
            }
        if (g == 0) break;
        D.push_back(g);
    }
    InvariantFactors out;
    size_t rank = D.size() - 1;
    out.free_rank = static_cast<long long>(cols - rank);
    for (size_t k = 1; k <= rank; ++k) {
        BigInt d = D[k] / D[k - 1];
        if (d != 1) out.torsion.push_back(d);
    }
    return out;
}

inline InvariantFactors invariant_factors(const lutcalc::Presentation& p) {
    std::vector<std::vector<BigInt>> m;
    for (const auto& r : p.relators) {
        std::vector<BigInt> row(static_cast<size_t>(p.ngens()), 0);
        for (int g = 0; g < p.ngens(); ++g) row[static_cast<size_t>(g)] = r.exponent_sum(g);
        m.push_back(row);
    }
    return invariant_factors(m, static_cast<size_t>(p.ngens()));
}

// Characteristic polynomial by Faddeev-LeVerrier; coefficients of x^n, x^(n-1), ..., x^0.
inline std::vector<Rational> charpoly(const std::vector<std::vector<long long>>& a) {
    size_t n = a.size();
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n)), M(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) A[i][j] = a[i][j];
    std::vector<Rational> c(n + 1);
    c[0] = 1;
    for (size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{k-1} I
        std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Rational s = 0;
                for (size_t t = 0; t < n; ++t) s += A[i][t] * M[t][j];
                next[i][j] = s + (i == j ? c[k - 1] : Rational(0));
            }
        M = next;
        Rational tr = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t t = 0; t < n; ++t) tr += A[i][t] * M[t][i];
        c[k] = -tr / Rational(static_cast<long long>(k));
    }
    return c;
}

inline int sign_changes(const std::vector<Rational>& c) {
    int changes = 0, last = 0;
    for (const auto& x : c) {
        int s = x > 0 ? 1 : x < 0 ? -1 : 0;
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// Signature of a symmetric matrix: its characteristic polynomial is real-rooted, so Descartes'
// rule counts positive and negative eigenvalues exactly.
inline long long signature(const std::vector<std::vector<long long>>& a) {
    auto c = charpoly(a);
    size_t n = a.size();
    std::vector<Rational> neg(c);
    for (size_t k = 0; k <= n; ++k)
        if ((n - k) % 2 == 1) neg[k] = -neg[k];
    return sign_changes(c) - sign_changes(neg);
}

inline BigInt determinant(const std::vector<std::vector<long long>>& a) {
    std::vector<std::vector<BigInt>> b;
    for (const auto& r : a) b.emplace_back(r.begin(), r.end());
    return det_cofactor(b);
}

}  // namespace oracle

namespace gen {

using Rng = std::mt19937_64;

inline lutcalc::Word random_word(Rng& rng, int ngens, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len), g(0, ngens - 1), sgn(0, 1);
    std::vector<int> ls;
    int n = len(rng);
    for (int i = 0; i < n; ++i) ls.push_back(lutcalc::letter_of(g(rng), sgn(rng) == 1));
    return lutcalc::Word::from_letters(oracle::free_reduce(ls));
}

inline std::vector<int> random_letters(Rng& rng, int ngens, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len), g(0, ngens - 1), sgn(0, 1);
    std::vector<int> ls;
    int n = len(rng);
    for (int i = 0; i < n; ++i) ls.push_back(lutcalc::letter_of(g(rng), sgn(rng) == 1));
    return ls;
}

inline lutcalc::Presentation random_presentation(Rng& rng, int max_gens, int max_rels, int max_len) {
    std::uniform_int_distribution<int> ng(1, max_gens), nr(0, max_rels);
    lutcalc::Presentation p;
    int n = ng(rng);
    for (int i = 0; i < n; ++i) p.add_generator(std::string(1, static_cast<char>('a' + i)));
    int r = nr(rng);
    for (int i = 0; i < r; ++i) p.add_relator(random_word(rng, n, max_len));
    return p;
}

}  // namespace gen
