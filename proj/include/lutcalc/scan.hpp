#pragma once

#include <algorithm>
#include <atomic>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "runner.hpp"

namespace lutcalc {

struct ScanChoice {
    std::string torus;
    long long k = 0;
    char dir = 'm';  // unused when k = 0
};

struct ScanOptions {
    std::string base = "Z";
    std::vector<long long> ks{-1, 0, 1};
    std::string dirs = "ml";
    std::vector<std::string> tori;  // empty means every available torus not fixed below
    std::vector<ScanChoice> fixed;  // applied to every cell
    Budget budget{20'000, 4, 200, 64};
    unsigned jobs = 1;
};

struct ScanRow {
    std::vector<ScanChoice> choices;
    AbelianGroup h1;
    long long e = 0;
    long long sigma = 0;
    long long c1sq = 0;
    Rational chi_h;
    Certificate certificate;
};

inline std::string format_choices(const std::vector<ScanChoice>& cs) {
    std::string out;
    for (const auto& c : cs) {
        if (!out.empty()) out += ' ';
        out += c.torus + "=";
        out += c.k == 0 ? std::string("1/0") : std::to_string(c.k) + "/1:" + std::string(1, c.dir);
    }
    return out;
}

// Surgery coefficient k along m or l on every chosen torus (k = 0 fills), all surfaces filled.
inline std::vector<ScanRow> geography_scan(const ScanOptions& opt) {
    ManifoldModel base = resolve_block(opt.base, std::nullopt);
    if (!base.has_group()) throw std::invalid_argument("scan needs a presentation-level block");
    auto is_fixed = [&](const std::string& n) {
        return std::any_of(opt.fixed.begin(), opt.fixed.end(), [&](const ScanChoice& c) { return c.torus == n; });
    };
    std::vector<std::string> tori = opt.tori;
    if (tori.empty())
        for (const auto& t : base.tori)
            if (t.status == PieceStatus::Available && !is_fixed(t.name)) tori.push_back(t.name);
    for (const auto& t : tori) {
        if (!base.find_torus(t)) throw std::invalid_argument("no torus '" + t + "' in " + opt.base);
        if (is_fixed(t)) throw std::invalid_argument("torus '" + t + "' is both fixed and scanned");
    }
    auto spec = [](const ScanChoice& c) {
        if (c.k == 0) return SurgerySpec{c.torus, 1, 0, 1, 0};
        return SurgerySpec{c.torus, c.k, 1, c.dir == 'm' ? 1 : 0, c.dir == 'm' ? 0 : 1};
    };
    for (const auto& c : opt.fixed) {
        if (!base.find_torus(c.torus)) throw std::invalid_argument("no torus '" + c.torus + "' in " + opt.base);
        base = torus_surgery(base, spec(c));
    }
    if (tori.empty()) throw std::invalid_argument("block " + opt.base + " has no available tori");
    std::vector<std::pair<long long, char>> options;
    for (long long k : opt.ks) {
        if (k == 0) {
            options.emplace_back(0, '-');
            continue;
        }
        for (char d : opt.dirs) options.emplace_back(k, d);
    }
    std::sort(options.begin(), options.end());
    options.erase(std::unique(options.begin(), options.end()), options.end());

    std::vector<ScanRow> rows;
    std::vector<Presentation> pres;
    std::set<std::vector<std::vector<Letter>>> seen;
    std::vector<size_t> digit(tori.size(), 0);
    for (bool done = false; !done;) {
        ManifoldModel m = base;
        ScanRow row;
        row.choices = opt.fixed;
        for (size_t i = 0; i < tori.size(); ++i) {
            auto [k, d] = options[digit[i]];
            row.choices.push_back({tori[i], k, d});
            m = torus_surgery(m, spec(row.choices.back()));
        }
        for (const auto& s : m.surfaces)
            if (s.status == PieceStatus::Available) m = fill(m, s.name);
        Presentation p = m.closed_presentation();
        std::vector<std::vector<Letter>> key;
        for (const auto& r : p.relators) key.push_back(canonical_cyclic(r));
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) {
            row.e = m.e;
            row.sigma = m.sigma;
            row.c1sq = 2 * m.e + 3 * m.sigma;
            row.chi_h = Rational(m.e + m.sigma, 4);
            row.h1 = abelianize(p);
            rows.push_back(row);
            pres.push_back(p);
        }
        // odometer over the option digits
        size_t i = tori.size();
        for (;;) {
            if (i == 0) {
                done = true;
                break;
            }
            --i;
            if (++digit[i] < options.size()) break;
            digit[i] = 0;
        }
    }

    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next++; i < rows.size(); i = next++) rows[i].certificate = classify(pres[i], opt.budget);
    };
    unsigned jobs = std::max(1u, opt.jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return rows;
}

}  // namespace lutcalc
