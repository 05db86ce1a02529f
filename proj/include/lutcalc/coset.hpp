#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "presentation.hpp"

namespace lutcalc {

struct Budget {
    long long max_cosets = 1'000'000;
    int max_depth = 8;
    int max_tietze_passes = 10'000;
    int max_frontier = 400;  // derivation search: words kept per breadth-first layer

    bool operator==(const Budget&) const = default;
};

struct EnumerationResult {
    std::optional<long long> index;  // empty means Exceeded
    long long cosets_defined = 0;
    long long peak_table = 0;
};

// Coset enumeration, HLT strategy with lookahead when the table fills.
class CosetTable {
public:
    CosetTable(const Presentation& p, const std::vector<Word>& subgroup, long long max_cosets)
        : ncols_(2 * p.ngens()), cap_(max_cosets) {
        for (const auto& r : p.relators) rels_.push_back(columns(r));
        for (const auto& h : subgroup) subs_.push_back(columns(h));
    }

    EnumerationResult run() {
        EnumerationResult res;
        new_coset();
        for (const auto& h : subs_)
            while (scan_and_fill(0, h) == Status::Full)
                if (!make_room(0)) return finish(res, false);
        size_t c = 0;
        while (c < rows()) {
            if (!alive(static_cast<int>(c))) {
                ++c;
                continue;
            }
            Status st = process(static_cast<int>(c));
            if (st == Status::Full) {
                std::optional<size_t> nc = make_room(c);
                if (!nc) return finish(res, false);
                c = *nc;
                continue;
            }
            ++c;
        }
        return finish(res, true);
    }

private:
    enum class Status { Ok, Full };

    static std::vector<int> columns(const Word& w) {
        std::vector<int> out;
        for (Letter l : w.letters()) out.push_back(2 * letter_gen(l) + (l < 0 ? 1 : 0));
        return out;
    }

    size_t rows() const { return fwd_.size(); }
    int& at(int c, int col) { return table_[static_cast<size_t>(c) * static_cast<size_t>(ncols_) + static_cast<size_t>(col)]; }
    bool alive(int c) const { return fwd_[static_cast<size_t>(c)] == c; }

    int rep(int c) {
        int r = c;
        while (fwd_[static_cast<size_t>(r)] != r) r = fwd_[static_cast<size_t>(r)];
        while (fwd_[static_cast<size_t>(c)] != r) {
            int n = fwd_[static_cast<size_t>(c)];
            fwd_[static_cast<size_t>(c)] = r;
            c = n;
        }
        return r;
    }

    int new_coset() {
        int c = static_cast<int>(rows());
        fwd_.push_back(c);
        table_.insert(table_.end(), static_cast<size_t>(ncols_), -1);
        ++live_;
        ++defined_;
        peak_ = std::max(peak_, static_cast<long long>(rows()));
        return c;
    }

    bool define(int c, int col) {
        if (static_cast<long long>(rows()) >= cap_) return false;
        int d = new_coset();
        at(c, col) = d;
        at(d, col ^ 1) = c;
        return true;
    }

    Status process(int c) {
        for (const auto& r : rels_) {
            if (scan_and_fill(c, r) == Status::Full) return Status::Full;
            if (!alive(c)) return Status::Ok;
        }
        for (int col = 0; col < ncols_; ++col)
            if (at(c, col) < 0 && !define(c, col)) return Status::Full;
        return Status::Ok;
    }

    Status scan_and_fill(int c, const std::vector<int>& w) {
        if (w.empty()) return Status::Ok;
        for (;;) {
            int f = c, b = c;
            long long i = 0, j = static_cast<long long>(w.size()) - 1;
            while (i <= j && at(f, w[static_cast<size_t>(i)]) >= 0) f = at(f, w[static_cast<size_t>(i++)]);
            if (i > j) {
                if (f != b) coincidence(f, b);
                return Status::Ok;
            }
            while (j >= i && at(b, w[static_cast<size_t>(j)] ^ 1) >= 0) b = at(b, w[static_cast<size_t>(j--)] ^ 1);
            if (j < i) {
                coincidence(f, b);
                return Status::Ok;
            }
            if (i == j) {
                at(f, w[static_cast<size_t>(i)]) = b;
                at(b, w[static_cast<size_t>(i)] ^ 1) = f;
                return Status::Ok;
            }
            if (!define(f, w[static_cast<size_t>(i)])) return Status::Full;
            if (!alive(c)) return Status::Ok;
        }
    }

    void scan(int c, const std::vector<int>& w) {
        if (w.empty()) return;
        int f = c, b = c;
        long long i = 0, j = static_cast<long long>(w.size()) - 1;
        while (i <= j && at(f, w[static_cast<size_t>(i)]) >= 0) f = at(f, w[static_cast<size_t>(i++)]);
        if (i > j) {
            if (f != b) coincidence(f, b);
            return;
        }
        while (j >= i && at(b, w[static_cast<size_t>(j)] ^ 1) >= 0) b = at(b, w[static_cast<size_t>(j--)] ^ 1);
        if (j < i) {
            coincidence(f, b);
        } else if (i == j) {
            at(f, w[static_cast<size_t>(i)]) = b;
            at(b, w[static_cast<size_t>(i)] ^ 1) = f;
        }
    }

    void merge(int a, int b, std::deque<int>& q) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        fwd_[static_cast<size_t>(b)] = a;
        --live_;
        q.push_back(b);
    }

    void coincidence(int a, int b) {
        std::deque<int> q;
        merge(a, b, q);
        while (!q.empty()) {
            int e = q.front();
            q.pop_front();
            for (int col = 0; col < ncols_; ++col) {
                int f = at(e, col);
                if (f < 0) continue;
                if (at(f, col ^ 1) == e) at(f, col ^ 1) = -1;
                int e1 = rep(e), f1 = rep(f);
                if (at(e1, col) >= 0) {
                    merge(f1, at(e1, col), q);
                } else if (at(f1, col ^ 1) >= 0) {
                    merge(e1, at(f1, col ^ 1), q);
                } else {
                    at(e1, col) = f1;
                    at(f1, col ^ 1) = e1;
                }
            }
        }
    }

    // Lookahead over all live cosets, then compaction. Returns the new position of row c.
    std::optional<size_t> make_room(size_t c) {
        for (size_t k = 0; k < rows(); ++k) {
            if (!alive(static_cast<int>(k))) continue;
            for (const auto& r : rels_) {
                scan(static_cast<int>(k), r);
                if (!alive(static_cast<int>(k))) break;
            }
        }
        std::vector<int> newid(rows(), -1);
        int n = 0;
        size_t newc = 0;
        bool cset = false;
        for (size_t k = 0; k < rows(); ++k) {
            if (!cset && k >= c) {
                newc = static_cast<size_t>(n);
                cset = true;
            }
            if (alive(static_cast<int>(k))) newid[k] = n++;
        }
        if (!cset) newc = static_cast<size_t>(n);
        long long freed = static_cast<long long>(rows()) - n;
        if (freed < std::max<long long>(1, cap_ / 64)) return std::nullopt;
        std::vector<int> table(static_cast<size_t>(n) * static_cast<size_t>(ncols_), -1);
        for (size_t k = 0; k < rows(); ++k) {
            if (newid[k] < 0) continue;
            for (int col = 0; col < ncols_; ++col) {
                int v = at(static_cast<int>(k), col);
                table[static_cast<size_t>(newid[k]) * static_cast<size_t>(ncols_) + static_cast<size_t>(col)] =
                    v < 0 ? -1 : newid[static_cast<size_t>(v)];
            }
        }
        table_ = std::move(table);
        fwd_.resize(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) fwd_[static_cast<size_t>(k)] = k;
        return newc;
    }

    EnumerationResult finish(EnumerationResult res, bool done) {
        res.cosets_defined = defined_;
        res.peak_table = peak_;
        if (done) res.index = live_;
        return res;
    }

    int ncols_;
    long long cap_;
    std::vector<std::vector<int>> rels_;
    std::vector<std::vector<int>> subs_;
    std::vector<int> table_;
    std::vector<int> fwd_;
    long long live_ = 0;
    long long defined_ = 0;
    long long peak_ = 0;
};

inline EnumerationResult todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup, const Budget& b) {
    return CosetTable(p, subgroup, b.max_cosets).run();
}

}  // namespace lutcalc
