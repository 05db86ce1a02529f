#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "presentation.hpp"

namespace lutcalc {

enum class Exactness { Exact, UpperBound };
enum class PieceStatus { Available, Surgered, Filled, Summed };

// How much of the model is tracked: full presentations, H1 only, or e and sigma only.
enum class ModelLevel { Presentation, AbelianOnly, ArithmeticOnly };

inline std::string exactness_name(Exactness e) { return e == Exactness::Exact ? "exact" : "upper_bound"; }

inline std::string status_name(PieceStatus s) {
    switch (s) {
        case PieceStatus::Available: return "available";
        case PieceStatus::Surgered: return "surgered";
        case PieceStatus::Filled: return "filled";
        default: return "summed";
    }
}

struct TrackedTorus {
    std::string name;
    Word mu, m, ell;
    bool lagrangian = true;
    bool homology_essential = true;
    bool complement_exact = false;  // complement group taken as exactly known (torus sums)
    PieceStatus status = PieceStatus::Available;
};

struct TrackedSurface {
    std::string name;
    int genus = 2;
    int square = 0;
    std::vector<Word> loops;                  // standard generators, in model generators
    Word mu;
    std::vector<std::string> abstract_names;  // names of the four standard generators
    std::vector<Word> kernel_words;           // over the abstract generators 0..3
    bool dual_sphere = false;
    bool complement_simply_connected = false;
    PieceStatus status = PieceStatus::Available;
};

struct IntersectionFormRecord {
    int hyperbolic_pairs = 0;
    std::vector<std::string> basis;
    std::vector<std::vector<long long>> odd_block;

    bool has_odd_diagonal() const {
        for (size_t i = 0; i < odd_block.size(); ++i)
            if (odd_block[i][i] % 2 != 0) return true;
        return false;
    }
};

// Record left by a +-1 surgery with q != 0: the core torus is nullhomologous.
struct CoreRecord {
    std::string torus;
    Word beta;
};

struct ProvenanceEntry {
    std::string step;
    std::vector<std::string> relators_added;
    long long de = 0;
    long long dsigma = 0;
    std::optional<long long> b1_before;
    std::optional<long long> b1_after;
};

struct ManifoldModel {
    std::string name;
    ModelLevel level = ModelLevel::Presentation;
    Presentation presentation;
    std::vector<TrackedTorus> tori;
    std::vector<TrackedSurface> surfaces;
    long long e = 0;
    long long sigma = 0;
    Exactness exactness = Exactness::Exact;
    std::optional<IntersectionFormRecord> form;
    bool odd_form = false;
    bool symplectic = true;
    std::vector<CoreRecord> cores;
    std::vector<ProvenanceEntry> log;

    bool has_group() const { return level != ModelLevel::ArithmeticOnly; }

    TrackedTorus* find_torus(const std::string& n) {
        for (auto& t : tori)
            if (t.name == n) return &t;
        return nullptr;
    }
    const TrackedTorus* find_torus(const std::string& n) const {
        for (const auto& t : tori)
            if (t.name == n) return &t;
        return nullptr;
    }
    TrackedSurface* find_surface(const std::string& n) {
        for (auto& s : surfaces)
            if (s.name == n) return &s;
        return nullptr;
    }
    const TrackedSurface* find_surface(const std::string& n) const {
        for (const auto& s : surfaces)
            if (s.name == n) return &s;
        return nullptr;
    }

    // The closed manifold: every piece still available is glued back in.
    Presentation closed_presentation() const {
        Presentation p = presentation;
        for (const auto& t : tori)
            if (t.status == PieceStatus::Available) p.add_relator(t.mu);
        for (const auto& s : surfaces)
            if (s.status == PieceStatus::Available) p.add_relator(s.mu);
        return p;
    }

    // Closed everywhere except the named surface.
    Presentation complement_of(const std::string& surface) const {
        Presentation p = presentation;
        for (const auto& t : tori)
            if (t.status == PieceStatus::Available) p.add_relator(t.mu);
        for (const auto& s : surfaces)
            if (s.status == PieceStatus::Available && s.name != surface) p.add_relator(s.mu);
        return p;
    }

    Word word(const std::string& text) const { return parse_word(text, presentation); }
};

struct GluingMap {
    std::string name;
    std::vector<Word> images;  // over the target piece's abstract generators
};

namespace detail {

inline TrackedTorus torus(const ManifoldModel& m, std::string name, const char* mu, const char* pm, const char* pl) {
    TrackedTorus t;
    t.name = std::move(name);
    t.mu = m.word(mu);
    t.m = m.word(pm);
    t.ell = m.word(pl);
    return t;
}

inline TrackedSurface genus2(const ManifoldModel& m, std::string name, const std::vector<std::string>& loops,
                             const char* mu) {
    TrackedSurface s;
    s.name = std::move(name);
    for (const auto& l : loops) s.loops.push_back(m.word(l));
    s.mu = m.word(mu);
    return s;
}

inline Presentation abstract_surface(const std::vector<std::string>& names) {
    Presentation p;
    for (const auto& n : names) p.add_generator(n);
    return p;
}

inline ManifoldModel with_presentation(std::string name, const std::vector<std::string>& gens,
                                       const std::vector<std::string>& rels) {
    ManifoldModel m;
    m.name = std::move(name);
    m.presentation = make_presentation(gens, rels);
    return m;
}

}  // namespace detail

inline const std::vector<std::string>& catalog_block_ids() {
    static const std::vector<std::string> ids{"HxK", "W1", "W2", "M", "Z"};
    return ids;
}

inline ManifoldModel make_block(const std::string& id) {
    using detail::genus2;
    using detail::torus;
    if (id == "HxK") {
        auto m = detail::with_presentation(
            "HxK", {"x", "y", "a", "b"},
            {"[x,a]", "[y,a]", "[y,b*a*b^-1]", "[[x,y],b]", "[x,[a,b]]", "[y,[a,b]]"});
        m.tori.push_back(torus(m, "T1", "[b^-1,y^-1]", "x", "a"));
        m.tori.push_back(torus(m, "T2", "[x^-1,b]", "y", "b*a*b^-1"));
        return m;
    }
    if (id == "W1") {
        auto m = detail::with_presentation("W1", {"s", "t"}, {"[s,t]"});
        auto f = genus2(m, "F1", {"s", "t", "s^-1", "t^-1"}, "1");
        f.abstract_names = {"s1", "t1", "s2", "t2"};
        auto abs = detail::abstract_surface(f.abstract_names);
        for (const char* k : {"s1*s2", "t1*t2", "[s1,t1]"}) f.kernel_words.push_back(parse_word(k, abs));
        f.dual_sphere = true;
        m.surfaces.push_back(f);
        m.e = 4;
        m.sigma = -4;
        m.form = IntersectionFormRecord{1, {"E1", "E2", "E3", "E4"}, {{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}};
        m.odd_form = true;
        return m;
    }
    if (id == "W2") {
        std::vector<std::string> rels{"[s1,s2]", "[t1,s2]", "[t1,t2*s2*t2^-1]", "[s1,t1]", "[s2,t2]"};
        auto m = detail::with_presentation("W2", {"s1", "t1", "s2", "t2"}, rels);
        m.tori.push_back(torus(m, "T1'", "[t2^-1,t1^-1]", "s1", "s2"));
        m.tori.push_back(torus(m, "T2'", "[s1^-1,t2]", "t1", "s2"));
        auto f = genus2(m, "F2", {"s1", "t1", "s2", "t2"}, "1");
        f.abstract_names = {"s1", "t1", "s2", "t2"};
        auto abs = detail::abstract_surface(f.abstract_names);
        for (const auto& r : rels) f.kernel_words.push_back(parse_word(r, abs));
        f.dual_sphere = true;
        m.surfaces.push_back(f);
        m.e = 2;
        m.sigma = -2;
        m.form = IntersectionFormRecord{3, {"E1", "E2"}, {{-1, 0}, {0, -1}}};
        m.odd_form = true;
        return m;
    }
    if (id == "M") {
        auto m = detail::with_presentation(
            "M", {"x", "y", "a1", "b1", "a2", "b2"},
            {"[x,a1]", "[y,a1]", "[y,b1*a1*b1^-1]", "[x,a2]", "[y,a2]", "[y,b2*a2*b2^-1]"});
        m.tori.push_back(torus(m, "T1", "[b1^-1,y^-1]", "x", "a1"));
        m.tori.push_back(torus(m, "T2", "[x^-1,b1]", "y", "b1*a1*b1^-1"));
        m.tori.push_back(torus(m, "T3", "[b2^-1,y^-1]", "x", "a2"));
        m.tori.push_back(torus(m, "T4", "[x^-1,b2]", "y", "b2*a2*b2^-1"));
        auto f = genus2(m, "F", {"a1", "b1", "a2", "b2"}, "[x,y]");
        f.abstract_names = {"a1", "b1", "a2", "b2"};
        m.surfaces.push_back(f);
        return m;
    }
    if (id == "Z") {
        auto m = detail::with_presentation(
            "Z", {"x", "y", "a1", "b1", "a2", "b2"},
            {"[b1,b2]", "[a1,b2]", "[b1,a1]", "[b2,a2]", "[x,a1]", "[y,a1]", "[x,a2]", "[y,a2]"});
        m.tori.push_back(torus(m, "T1'", "[a2^-1,a1^-1]", "b1^-1", "b2^-1"));
        m.tori.push_back(torus(m, "T2'", "[b1,a2]", "b1*a2*b1^-1", "b2^-1"));
        m.tori.push_back(torus(m, "T1", "[b1^-1,y^-1]", "x", "a1"));
        m.tori.push_back(torus(m, "T2", "[x^-1,b1]", "y", "a1"));
        m.tori.push_back(torus(m, "T3", "[b2^-1,y^-1]", "x", "a2"));
        m.tori.push_back(torus(m, "T4", "[x^-1,b2]", "y", "a2"));
        auto f = genus2(m, "F", {"a1", "b1", "a2", "b2"}, "[x,y]");
        f.abstract_names = {"a1", "b1", "a2", "b2"};
        m.surfaces.push_back(f);
        m.e = 6;
        m.sigma = -2;
        m.exactness = Exactness::UpperBound;
        m.form = IntersectionFormRecord{
            6, {"H1", "H2", "H3", "F"}, {{-1, 0, 0, 1}, {0, -1, 0, 1}, {0, 0, 0, 1}, {1, 1, 1, 0}}};
        m.odd_form = true;
        return m;
    }
    throw std::invalid_argument("unknown block '" + id + "'");
}

// Y x S^1 for the surface bundle Y with the given monodromy on x1,y1,...,xn,yn.
// Monodromy images are words over the surface generators.
inline ManifoldModel mapping_torus_block(int genus, const std::vector<std::string>& monodromy,
                                         const std::string& name = "Y") {
    if (genus < 1) throw std::invalid_argument("mapping torus genus must be at least 1");
    if (monodromy.size() != static_cast<size_t>(2 * genus))
        throw std::invalid_argument("monodromy needs " + std::to_string(2 * genus) + " images");
    ManifoldModel m;
    m.name = name;
    Presentation& p = m.presentation;
    for (int i = 1; i <= genus; ++i) {
        p.add_generator("x" + std::to_string(i));
        p.add_generator("y" + std::to_string(i));
    }
    int t = p.add_generator("t");
    int s = p.add_generator("s");
    Presentation surface;
    for (int g = 0; g < 2 * genus; ++g) surface.add_generator(p.generators[static_cast<size_t>(g)]);
    Word prod;
    for (int i = 0; i < genus; ++i) prod *= commutator(Word::gen(2 * i), Word::gen(2 * i + 1));
    p.add_relator(prod);
    for (int g = 0; g < 2 * genus; ++g) {
        Word img = parse_word(monodromy[static_cast<size_t>(g)], surface);
        p.add_relator(conjugate(Word::gen(g), Word::gen(t)) * img.inverse());
    }
    for (int g = 0; g < s; ++g) p.add_relator(commutator(Word::gen(s), Word::gen(g)));
    TrackedTorus t0;
    t0.name = "T0";
    t0.m = Word::gen(s);
    t0.ell = Word::gen(t);
    m.tori.push_back(t0);
    return m;
}

// Composite of the Dehn twists along every x_i: x_i -> x_i, y_i -> y_i x_i.
inline std::vector<std::string> twist_monodromy(int genus) {
    std::vector<std::string> out;
    for (int i = 1; i <= genus; ++i) {
        out.push_back("x" + std::to_string(i));
        out.push_back("y" + std::to_string(i) + "*x" + std::to_string(i));
    }
    return out;
}

inline std::vector<std::string> identity_monodromy(int genus) {
    std::vector<std::string> out;
    for (int i = 1; i <= genus; ++i) {
        out.push_back("x" + std::to_string(i));
        out.push_back("y" + std::to_string(i));
    }
    return out;
}

// Symmetric square of a genus-g surface, tracked through H1 only.
inline ManifoldModel sym2_block(int g) {
    if (g < 3) throw std::invalid_argument("Sym2 block needs genus at least 3");
    ManifoldModel m;
    m.name = "Sym2(" + std::to_string(g) + ")";
    m.level = ModelLevel::AbelianOnly;
    Presentation& p = m.presentation;
    for (int i = 1; i <= g; ++i) {
        p.add_generator("a" + std::to_string(i));
        p.add_generator("b" + std::to_string(i));
    }
    for (int i = 0; i < p.ngens(); ++i)
        for (int j = i + 1; j < p.ngens(); ++j) p.add_relator(commutator(Word::gen(i), Word::gen(j)));
    auto add = [&](const std::string& name, const std::string& mw, const std::string& lw) {
        TrackedTorus t;
        t.name = name;
        t.m = m.word(mw);
        t.ell = m.word(lw);
        m.tori.push_back(t);
    };
    add("Ta1b2", "a1", "b2");
    add("Tb1b3", "b1", "b3");
    add("Ta2a3", "a2", "a3");
    for (int j = 4; j <= g; ++j) {
        std::string js = std::to_string(j);
        add("Tx" + js + "a" + js, "a1", "a" + js);
        add("Ty" + js + "b" + js, "a1", "b" + js);
    }
    m.e = 2LL * g * g - 5LL * g + 3;
    m.sigma = 1 - g;
    return m;
}

// Characteristic numbers only, with named tori whose words are not tracked.
inline ManifoldModel arithmetic_block(std::string name, long long e, long long sigma,
                                      const std::vector<std::string>& tori) {
    ManifoldModel m;
    m.name = std::move(name);
    m.level = ModelLevel::ArithmeticOnly;
    m.e = e;
    m.sigma = sigma;
    for (const auto& n : tori) {
        TrackedTorus t;
        t.name = n;
        m.tori.push_back(t);
    }
    return m;
}

inline ManifoldModel sym2_arithmetic_block(int g) {
    if (g < 1) throw std::invalid_argument("Sym2 genus must be at least 1");
    return arithmetic_block("Sym2Arith(" + std::to_string(g) + ")", 2LL * g * g - 5LL * g + 3, 1 - g, {"T"});
}

// Product of a fibered 3-manifold with a circle carrying tori T0..Tk.
inline ManifoldModel fibered_product_block(int k) {
    if (k < 0) throw std::invalid_argument("torus count must be nonnegative");
    std::vector<std::string> names;
    for (int i = 0; i <= k; ++i) names.push_back("T" + std::to_string(i));
    return arithmetic_block("N(" + std::to_string(k) + ")", 0, 0, names);
}

inline std::vector<GluingMap> standard_gluings() {
    Presentation g = detail::abstract_surface({"g1", "g2", "g3", "g4"});
    auto map = [&](std::string name, const std::vector<std::string>& imgs) {
        GluingMap m;
        m.name = std::move(name);
        for (const auto& w : imgs) m.images.push_back(parse_word(w, g));
        return m;
    };
    return {
        map("identity4", {"g1", "g2", "g3", "g4"}),
        map("theorem-five", {"g2^-1", "g2*g1*g2^-1", "g3", "g4"}),
        map("eq-phi", {"g2^-1", "g2*g1*g2^-1", "g4^-1", "g4*g3*g4^-1"}),
    };
}

inline std::optional<GluingMap> find_gluing(const std::string& name) {
    for (auto& m : standard_gluings())
        if (m.name == name) return m;
    return std::nullopt;
}

// Abelianized image matrix: rows are images, columns the four abstract generators.
inline std::vector<std::vector<BigInt>> gluing_matrix(const std::vector<Word>& images, int ngens) {
    std::vector<std::vector<BigInt>> m;
    for (const auto& w : images) {
        std::vector<BigInt> row(static_cast<size_t>(ngens), 0);
        for (const auto& s : w.syllables())
            if (s.gen < ngens) row[static_cast<size_t>(s.gen)] += s.exp;
        m.push_back(row);
    }
    return m;
}

inline BigInt determinant(std::vector<std::vector<BigInt>> a) {
    // Bareiss fraction-free elimination
    size_t n = a.size();
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline bool gluing_invertible(const std::vector<Word>& images, int ngens) {
    if (images.size() != static_cast<size_t>(ngens)) return false;
    BigInt d = determinant(gluing_matrix(images, ngens));
    return d == 1 || d == -1;
}

}  // namespace lutcalc
