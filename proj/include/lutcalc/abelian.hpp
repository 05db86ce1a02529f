#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "presentation.hpp"

namespace lutcalc {

using BigInt = boost::multiprecision::cpp_int;

struct AbelianGroup {
    long long free_rank = 0;
    std::vector<BigInt> torsion;  // invariant factors d1 | d2 | ..., each > 1

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    bool finite() const { return free_rank == 0; }

    BigInt order() const {
        BigInt n = 1;
        for (const auto& d : torsion) n *= d;
        return n;
    }

    bool operator==(const AbelianGroup&) const = default;
};

// Invariant factors of an integer matrix (rows = relations, cols = generators).
// Returns the nonzero diagonal of the Smith normal form, sorted so each divides the next.
inline std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> a, size_t cols) {
    using boost::multiprecision::abs;
    size_t rows = a.size();
    std::vector<BigInt> diag;
    size_t t = 0;
    while (t < rows && t < cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        size_t pr = rows, pc = cols;
        BigInt best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (best == 0 || abs(a[i][j]) < best)) {
                    best = abs(a[i][j]);
                    pr = i;
                    pc = j;
                }
        if (best == 0) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                BigInt q = a[i][t] / a[t][t];
                for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    clean = false;
                    if (abs(a[i][t]) < abs(a[t][t])) std::swap(a[t], a[i]);
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                BigInt q = a[t][j] / a[t][t];
                for (size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    clean = false;
                    if (abs(a[t][j]) < abs(a[t][t]))
                        for (auto& row : a) std::swap(row[t], row[j]);
                }
            }
            if (clean) {
                // enforce divisibility of the remaining block by the pivot
                for (size_t i = t + 1; i < rows && clean; ++i)
                    for (size_t j = t + 1; j < cols; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                            clean = false;
                            break;
                        }
            }
        }
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    return diag;
}

inline std::vector<std::vector<BigInt>> exponent_matrix(const Presentation& p) {
    std::vector<std::vector<BigInt>> m;
    for (const auto& r : p.relators) {
        std::vector<BigInt> row(static_cast<size_t>(p.ngens()), 0);
        for (const auto& s : r.syllables()) row[static_cast<size_t>(s.gen)] += s.exp;
        m.push_back(std::move(row));
    }
    return m;
}

inline AbelianGroup abelian_from_matrix(const std::vector<std::vector<BigInt>>& m, size_t cols) {
    auto d = smith_diagonal(m, cols);
    AbelianGroup g;
    g.free_rank = static_cast<long long>(cols - d.size());
    for (const auto& x : d)
        if (x > 1) g.torsion.push_back(x);
    return g;
}

inline AbelianGroup abelianize(const Presentation& p) {
    return abelian_from_matrix(exponent_matrix(p), static_cast<size_t>(p.ngens()));
}

// Canonical form of Z^r + Z/d1 + ... for arbitrary (not necessarily dividing) orders; 0 means Z.
inline AbelianGroup abelian_from_cyclic_orders(const std::vector<long long>& orders) {
    std::vector<std::vector<BigInt>> m;
    for (size_t i = 0; i < orders.size(); ++i) {
        std::vector<BigInt> row(orders.size(), 0);
        row[i] = orders[i];
        m.push_back(row);
    }
    return abelian_from_matrix(m, orders.size());
}

inline std::string format_abelian(const AbelianGroup& g) {
    if (g.trivial()) return "1";
    std::string out;
    if (g.free_rank > 0) out = g.free_rank == 1 ? "Z" : "Z^" + std::to_string(g.free_rank);
    for (const auto& d : g.torsion) {
        if (!out.empty()) out += '+';
        out += "Z/" + d.str();
    }
    return out;
}

// Reads forms like 1, Z, Z^3, Z/5, Z^2+Z/2+Z/3 (summands need not be canonical).
inline AbelianGroup parse_abelian(const std::string& s) {
    if (s == "1" || s == "0") return {};
    std::vector<long long> orders;
    size_t i = 0;
    auto num = [&](size_t& k) {
        size_t st = k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (st == k) throw std::invalid_argument("bad abelian group '" + s + "'");
        return std::stoll(s.substr(st, k - st));
    };
    while (i < s.size()) {
        if (s[i] != 'Z') throw std::invalid_argument("bad abelian group '" + s + "'");
        ++i;
        if (i < s.size() && s[i] == '^') {
            ++i;
            long long r = num(i);
            for (long long k = 0; k < r; ++k) orders.push_back(0);
        } else if (i < s.size() && s[i] == '/') {
            ++i;
            orders.push_back(num(i));
        } else {
            orders.push_back(0);
        }
        if (i < s.size()) {
            if (s[i] != '+') throw std::invalid_argument("bad abelian group '" + s + "'");
            ++i;
        }
    }
    return abelian_from_cyclic_orders(orders);
}

}  // namespace lutcalc
