#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "blocks.hpp"
#include "classify.hpp"
#include "expr.hpp"

namespace lutcalc {

struct CalculusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SurgerySpec {
    std::string torus;
    long long p = 1;
    long long q = 0;
    long long a = 1;  // exponent of m in the direction m^a l^b
    long long b = 0;  // exponent of l
};

namespace detail {

inline std::optional<long long> closed_b1(const ManifoldModel& m) {
    if (!m.has_group()) return std::nullopt;
    return abelianize(m.closed_presentation()).free_rank;
}

inline TrackedTorus& available_torus(ManifoldModel& m, const std::string& name) {
    TrackedTorus* t = m.find_torus(name);
    if (!t) throw CalculusError("no torus '" + name + "' in " + m.name);
    if (t->status != PieceStatus::Available)
        throw CalculusError("torus '" + name + "' in " + m.name + " is already " + status_name(t->status));
    return *t;
}

inline TrackedSurface& available_surface(ManifoldModel& m, const std::string& name) {
    TrackedSurface* s = m.find_surface(name);
    if (!s) throw CalculusError("no surface '" + name + "' in " + m.name);
    if (s->status != PieceStatus::Available)
        throw CalculusError("surface '" + name + "' in " + m.name + " is already " + status_name(s->status));
    if (s->square != 0) throw CalculusError("surface '" + name + "' does not have square zero");
    return *s;
}

inline ModelLevel weaker(ModelLevel a, ModelLevel b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

inline Exactness weaker(Exactness a, Exactness b) {
    return a == Exactness::UpperBound || b == Exactness::UpperBound ? Exactness::UpperBound : Exactness::Exact;
}

inline void record(ManifoldModel& m, std::string step, const std::vector<Word>& added, long long de, long long ds,
                   std::optional<long long> before) {
    ProvenanceEntry e;
    e.step = std::move(step);
    for (const auto& w : added) e.relators_added.push_back(format_word(w, m.presentation));
    e.de = de;
    e.dsigma = ds;
    e.b1_before = before;
    e.b1_after = closed_b1(m);
    m.log.push_back(std::move(e));
}

inline std::string unused_symbol(const std::string& base, const std::string& prefix,
                                 const std::function<bool(const std::string&)>& taken) {
    if (!taken(base)) return base;
    std::string s = prefix + "_" + base;
    while (taken(s)) s = prefix + "_" + s;
    return s;
}

// Appends other's generators, relators and pieces to bound. Clashing generator and piece names
// from other get the prefix. Returns other's generator images in the combined numbering.
inline std::vector<Word> absorb(ManifoldModel& bound, const ManifoldModel& other, const std::string& prefix) {
    std::vector<Word> image;
    Presentation& p = bound.presentation;
    for (const auto& g : other.presentation.generators) {
        std::string n = unused_symbol(g, prefix, [&](const std::string& s) {
            return p.find(s).has_value() || (other.presentation.find(s).has_value() && s != g);
        });
        image.push_back(Word::gen(p.add_generator(n)));
    }
    for (const auto& r : other.presentation.relators) p.add_relator(r.substitute(image));
    for (auto t : other.tori) {
        t.name = unused_symbol(t.name, prefix, [&](const std::string& s) { return bound.find_torus(s) != nullptr; });
        t.mu = t.mu.substitute(image);
        t.m = t.m.substitute(image);
        t.ell = t.ell.substitute(image);
        bound.tori.push_back(t);
    }
    for (auto s : other.surfaces) {
        s.name = unused_symbol(s.name, prefix, [&](const std::string& n) { return bound.find_surface(n) != nullptr; });
        s.mu = s.mu.substitute(image);
        for (auto& l : s.loops) l = l.substitute(image);
        bound.surfaces.push_back(s);
    }
    for (auto c : other.cores) {
        c.beta = c.beta.substitute(image);
        bound.cores.push_back(c);
    }
    return image;
}

inline long long gcd(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace detail

// Luttinger-type surgery: appends mu^p (m^a l^b)^q.
inline ManifoldModel torus_surgery(ManifoldModel m, const SurgerySpec& s) {
    if (detail::gcd(s.p, s.q) != 1) throw CalculusError("surgery coefficients p, q must be coprime");
    if (s.q != 0 && detail::gcd(s.a, s.b) != 1) throw CalculusError("surgery direction must be primitive");
    auto before = detail::closed_b1(m);
    TrackedTorus& t = detail::available_torus(m, s.torus);
    t.status = PieceStatus::Surgered;
    std::vector<Word> added;
    Word gamma = t.m.pow(s.a) * t.ell.pow(s.b);
    if (m.has_group()) {
        Word r = t.mu.pow(s.p) * gamma.pow(s.q);
        m.presentation.add_relator(r);
        added.push_back(r);
    }
    if (s.p != 1 && s.p != -1) m.symplectic = false;
    if ((s.p == 1 || s.p == -1) && s.q != 0) m.cores.push_back({s.torus, gamma});
    std::string step = "surgery " + s.torus + " p " + std::to_string(s.p) + " q " + std::to_string(s.q) + " dir m^" +
                       std::to_string(s.a) + " l^" + std::to_string(s.b);
    detail::record(m, step, added, 0, 0, before);
    return m;
}

// Glues the neighborhood of a tracked surface or torus back in.
inline ManifoldModel fill(ManifoldModel m, const std::string& piece) {
    auto before = detail::closed_b1(m);
    Word mu;
    if (m.find_surface(piece)) {
        TrackedSurface& s = detail::available_surface(m, piece);
        s.status = PieceStatus::Filled;
        mu = s.mu;
    } else {
        TrackedTorus& t = detail::available_torus(m, piece);
        t.status = PieceStatus::Filled;
        mu = t.mu;
    }
    std::vector<Word> added;
    if (m.has_group() && m.presentation.add_relator(mu)) added.push_back(mu);
    detail::record(m, "fill " + piece, added, 0, 0, before);
    return m;
}

inline ManifoldModel blow_up(ManifoldModel m, const std::optional<std::string>& on_surface = std::nullopt) {
    auto before = detail::closed_b1(m);
    m.e += 1;
    m.sigma -= 1;
    m.odd_form = true;
    std::string step = "blowup";
    if (on_surface) {
        TrackedSurface* s = m.find_surface(*on_surface);
        if (!s) throw CalculusError("no surface '" + *on_surface + "' in " + m.name);
        s->dual_sphere = true;
        s->mu = Word();
        step += " on " + *on_surface;
    }
    detail::record(m, step, {}, 1, -1, before);
    return m;
}

inline ManifoldModel copy_surface(ManifoldModel m, const std::string& surface, const std::string& as) {
    const TrackedSurface* s = m.find_surface(surface);
    if (!s) throw CalculusError("no surface '" + surface + "' in " + m.name);
    if (m.find_surface(as) || m.find_torus(as)) throw CalculusError("piece '" + as + "' already exists");
    TrackedSurface c = *s;
    c.name = as;
    c.status = PieceStatus::Available;
    m.surfaces.push_back(c);
    m.log.push_back({"copy " + surface + " as " + as, {}, 0, 0, std::nullopt, std::nullopt});
    return m;
}

inline ManifoldModel rename_generator(ManifoldModel m, const std::string& from, const std::string& to) {
    int g = m.presentation.index(from);
    if (m.presentation.find(to)) throw CalculusError("generator '" + to + "' already exists");
    m.presentation.generators[static_cast<size_t>(g)] = to;
    m.log.push_back({"rename " + from + " " + to, {}, 0, 0, std::nullopt, std::nullopt});
    return m;
}

// Images of the four standard generators of a target surface, as words in the target model.
inline std::vector<Word> resolve_gluing(const GluingMap& map, const TrackedSurface& target) {
    if (!gluing_invertible(map.images, 4)) throw CalculusError("gluing map '" + map.name + "' is not invertible");
    std::vector<Word> out;
    for (const auto& w : map.images) out.push_back(w.substitute(target.loops));
    return out;
}

// Inline images over the target model; checked when the target loops are distinct generators.
inline std::vector<Word> check_inline_gluing(const std::vector<Word>& images, const std::vector<Word>& loops) {
    if (images.size() != loops.size()) throw CalculusError("gluing map needs " + std::to_string(loops.size()) + " images");
    std::vector<int> gens;
    for (const auto& l : loops) {
        if (l.syllables().size() != 1 || l.syllables()[0].exp != 1) return images;
        gens.push_back(l.syllables()[0].gen);
    }
    std::vector<std::vector<BigInt>> mat;
    for (const auto& w : images) {
        std::vector<BigInt> row(loops.size(), 0);
        for (size_t i = 0; i < gens.size(); ++i) row[i] = w.exponent_sum(gens[i]);
        mat.push_back(row);
    }
    BigInt d = determinant(mat);
    if (d != 1 && d != -1) throw CalculusError("inline gluing map is not invertible on homology");
    return images;
}

// Seifert-Van Kampen sum along genus-2 surfaces. The result keeps P's name and symbols.
inline ManifoldModel sum_genus2_amalgam(const ManifoldModel& K, const std::string& FK, ManifoldModel P,
                                        const std::string& FP, const std::vector<Word>& phi) {
    ManifoldModel k = K;
    TrackedSurface& sk = detail::available_surface(k, FK);
    TrackedSurface& sp = detail::available_surface(P, FP);
    if (sk.genus != 2 || sp.genus != 2) throw CalculusError("surface sums need genus-2 surfaces");
    if (phi.size() != 4) throw CalculusError("genus-2 gluing needs four images");
    sk.status = PieceStatus::Summed;
    sp.status = PieceStatus::Summed;
    Word mu_p = sp.mu;
    auto before = detail::closed_b1(P);
    std::vector<Word> added;
    P.level = detail::weaker(P.level, k.level);
    if (P.level == ModelLevel::ArithmeticOnly) {
        for (auto t : k.tori) {
            t.name = detail::unused_symbol(t.name, k.name, [&](const std::string& s) { return P.find_torus(s) != nullptr; });
            P.tori.push_back(t);
        }
    } else {
        std::vector<Word> loops = sk.loops;
        Word mu_k = sk.mu;
        auto image = detail::absorb(P, k, k.name);
        for (size_t i = 0; i < 4; ++i) {
            Word r = loops[i].substitute(image) * phi[i].inverse();
            if (P.presentation.add_relator(r)) added.push_back(r);
        }
        Word r = mu_k.substitute(image) * mu_p.inverse();
        if (P.presentation.add_relator(r)) added.push_back(r);
    }
    P.e += k.e + 4;
    P.sigma += k.sigma;
    P.exactness = detail::weaker(P.exactness, k.exactness);
    P.odd_form = P.odd_form || k.odd_form;
    P.symplectic = P.symplectic && k.symplectic;
    P.form.reset();
    detail::record(P, "sum2 " + k.name + "." + FK + " " + P.name + "." + FP, added, k.e + 4, k.sigma, before);
    return P;
}

// Sum where only the killing effect of K on P's group is kept.
inline ManifoldModel sum_genus2_quotient(const ManifoldModel& K, const std::string& FK, ManifoldModel P,
                                         const std::string& FP, const std::vector<Word>& phi) {
    ManifoldModel k = K;
    TrackedSurface& sk = detail::available_surface(k, FK);
    TrackedSurface& sp = detail::available_surface(P, FP);
    if (sk.genus != 2 || sp.genus != 2) throw CalculusError("surface sums need genus-2 surfaces");
    if (phi.size() != 4) throw CalculusError("genus-2 gluing needs four images");
    std::vector<Word> kills;
    if (sk.complement_simply_connected) {
        kills = phi;
    } else if (sk.dual_sphere && !sk.kernel_words.empty()) {
        for (const auto& r : sk.kernel_words) kills.push_back(r.substitute(phi));
    } else {
        throw CalculusError("surface '" + FK + "' of " + k.name + " carries no kernel certificate");
    }
    // both certificates make the killer's meridian bound, so P's meridian dies too
    kills.push_back(sp.mu);
    sp.status = PieceStatus::Summed;
    auto before = detail::closed_b1(P);
    std::vector<Word> added;
    if (P.has_group())
        for (const auto& w : kills)
            if (P.presentation.add_relator(w)) added.push_back(w);
    P.e += k.e + 4;
    P.sigma += k.sigma;
    P.exactness = Exactness::UpperBound;
    P.odd_form = P.odd_form || k.odd_form;
    P.symplectic = P.symplectic && k.symplectic;
    P.form.reset();
    detail::record(P, "sum2 " + k.name + "." + FK + " " + P.name + "." + FP + " quotient", added, k.e + 4, k.sigma,
                   before);
    return P;
}

// Sum along square-zero tori; phi gives L's push-offs (m, l) as words in R. The result keeps L's
// name and symbols; R's torus must carry exact complement data.
inline ManifoldModel sum_torus(ManifoldModel L, const std::string& TL, const ManifoldModel& R, const std::string& TR,
                               const std::vector<Word>& phi) {
    ManifoldModel r = R;
    TrackedTorus& tl = detail::available_torus(L, TL);
    TrackedTorus& tr = detail::available_torus(r, TR);
    if (!tr.complement_exact) throw CalculusError("torus '" + TR + "' of " + r.name + " lacks exact complement data");
    if (phi.size() != 2) throw CalculusError("torus gluing needs two images");
    tl.status = PieceStatus::Summed;
    tr.status = PieceStatus::Summed;
    if (r.has_group()) check_inline_gluing(phi, {tr.m, tr.ell});
    Word ml = tl.m, ll = tl.ell, mul = tl.mu, mur = tr.mu;
    auto before = detail::closed_b1(L);
    std::vector<Word> added;
    L.level = detail::weaker(L.level, r.level);
    if (L.level == ModelLevel::ArithmeticOnly) {
        for (auto t : r.tori) {
            t.name = detail::unused_symbol(t.name, r.name, [&](const std::string& s) { return L.find_torus(s) != nullptr; });
            L.tori.push_back(t);
        }
    } else {
        auto image = detail::absorb(L, r, r.name);
        std::vector<Word> rels{ml * phi[0].substitute(image).inverse(), ll * phi[1].substitute(image).inverse(),
                               mul * mur.substitute(image).inverse()};
        for (const auto& w : rels)
            if (L.presentation.add_relator(w)) added.push_back(w);
    }
    L.e += r.e;
    L.sigma += r.sigma;
    L.exactness = detail::weaker(L.exactness, r.exactness);
    L.odd_form = L.odd_form || r.odd_form;
    L.symplectic = L.symplectic && r.symplectic;
    L.form.reset();
    detail::record(L, "sumT " + L.name + "." + TL + " " + r.name + "." + TR, added, r.e, r.sigma, before);
    return L;
}

// Signature of hyperbolic pairs plus the odd block, by exact congruence diagonalization.
inline long long form_signature(const IntersectionFormRecord& rec) {
    size_t n = rec.odd_block.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = rec.odd_block[i][j];
    long long pos = 0, neg = 0;
    std::vector<bool> done(n, false);
    for (size_t step = 0; step < n; ++step) {
        size_t piv = n;
        for (size_t i = 0; i < n && piv == n; ++i)
            if (!done[i] && a[i][i] != 0) piv = i;
        if (piv == n) {
            // zero diagonal: add row/column j to i to create a pivot
            for (size_t i = 0; i < n && piv == n; ++i)
                for (size_t j = 0; j < n && piv == n; ++j)
                    if (!done[i] && !done[j] && i != j && a[i][j] != 0) {
                        for (size_t k = 0; k < n; ++k) a[i][k] += a[j][k];
                        for (size_t k = 0; k < n; ++k) a[k][i] += a[k][j];
                        piv = i;
                    }
            if (piv == n) break;
        }
        Rational d = a[piv][piv];
        (d > 0 ? pos : neg) += 1;
        done[piv] = true;
        for (size_t i = 0; i < n; ++i) {
            if (done[i] || a[i][piv] == 0) continue;
            Rational f = a[i][piv] / d;
            for (size_t k = 0; k < n; ++k) a[i][k] -= f * a[piv][k];
            for (size_t k = 0; k < n; ++k) a[k][i] -= f * a[k][piv];
        }
    }
    return pos - neg;
}

inline std::string rational_string(const Rational& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

struct FreedmanType {
    long long m = 0;
    long long n = 0;
    bool operator==(const FreedmanType&) const = default;
};

struct CharacteristicReport {
    long long e = 0;
    long long sigma = 0;
    std::optional<long long> b1;
    std::optional<AbelianGroup> h1;
    std::optional<long long> b2;
    Rational chi_h;
    bool chi_h_integral = true;
    long long c1sq = 0;
    std::optional<FreedmanType> freedman;
    std::optional<Certificate> certificate;
};

inline CharacteristicReport characteristic_report(const ManifoldModel& m, const std::optional<Certificate>& cert) {
    CharacteristicReport r;
    r.e = m.e;
    r.sigma = m.sigma;
    if (m.has_group()) {
        AbelianGroup h = abelianize(m.closed_presentation());
        r.b1 = h.free_rank;
        r.h1 = h;
        r.b2 = m.e - 2 + 2 * h.free_rank;
    }
    r.chi_h = Rational(m.e + m.sigma, 4);
    r.chi_h_integral = boost::multiprecision::denominator(r.chi_h) == 1;
    r.c1sq = 2 * m.e + 3 * m.sigma;
    r.certificate = cert;
    if (cert && cert->claim == Claim::Trivial && m.odd_form && (m.e + m.sigma) % 2 == 0)
        r.freedman = FreedmanType{(m.e + m.sigma - 2) / 2, (m.e - m.sigma - 2) / 2};
    return r;
}

inline CharacteristicReport characteristic_report(const ManifoldModel& m, const Budget& budget) {
    std::optional<Certificate> cert;
    if (m.level == ModelLevel::Presentation) cert = classify(m.closed_presentation(), budget);
    return characteristic_report(m, cert);
}

}  // namespace lutcalc
