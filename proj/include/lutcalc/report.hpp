#pragma once

#include <json.hpp>
#include <sstream>
#include <string>

#include "runner.hpp"
#include "scan.hpp"

namespace lutcalc {

using Json = nlohmann::ordered_json;

inline std::string level_name(ModelLevel l) {
    switch (l) {
        case ModelLevel::Presentation: return "presentation";
        case ModelLevel::AbelianOnly: return "abelian_only";
        default: return "arithmetic_only";
    }
}

namespace detail {

inline Json big(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

template <class T>
Json opt(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

inline Json used_json(const BudgetUsed& u) {
    return Json{{"cosets", u.cosets},
                {"peak_table", u.peak_table},
                {"tietze_passes", u.tietze_passes},
                {"derivation_depth", u.derivation_depth},
                {"derivation_nodes", u.derivation_nodes}};
}

}  // namespace detail

inline Json abelian_json(const AbelianGroup& g) {
    Json t = Json::array();
    for (const auto& d : g.torsion) t.push_back(detail::big(d));
    return Json{{"rank", g.free_rank}, {"torsion", t}};
}

inline Json budget_json(const Budget& b) {
    return Json{{"max_cosets", b.max_cosets},
                {"max_depth", b.max_depth},
                {"max_tietze_passes", b.max_tietze_passes},
                {"max_frontier", b.max_frontier}};
}

inline Json certificate_json(const Certificate& c) {
    Json j{{"claim", claim_name(c)}, {"method", method_name(c.method)}, {"budget_used", detail::used_json(c.used)}};
    if (c.simplified_generators >= 0) {
        j["simplified_generators"] = c.simplified_generators;
        j["simplified_relators"] = c.simplified_relators;
    }
    if (!c.commutators.empty()) {
        Json depths = Json::array();
        for (const auto& d : c.commutators) depths.push_back(d.depth());
        j["commutator_derivation_depths"] = depths;
    }
    return j;
}

// Canonical report body; wall time only when asked for.
inline Json report_json(const RunReport& r, bool with_timing = false) {
    Json params = Json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    Json steps = Json::array();
    for (const auto& s : r.steps)
        steps.push_back(Json{{"step", s.text},
                             {"applied", s.entry.step},
                             {"model", s.target},
                             {"relators_added", s.entry.relators_added},
                             {"de", s.entry.de},
                             {"dsigma", s.entry.dsigma},
                             {"b1_before", detail::opt(s.entry.b1_before)},
                             {"b1_after", detail::opt(s.entry.b1_after)}});
    const auto& c = r.chars;
    Json j;
    j["recipe"] = r.recipe;
    j["params"] = params;
    j["model"] = r.model;
    j["level"] = level_name(r.level);
    j["exactness"] = exactness_name(r.exactness);
    j["steps"] = steps;
    j["e"] = c.e;
    j["sigma"] = c.sigma;
    j["b1"] = detail::opt(c.b1);
    j["h1"] = c.h1 ? abelian_json(*c.h1) : Json(nullptr);
    j["b2"] = detail::opt(c.b2);
    j["chi_h"] = rational_string(c.chi_h);
    j["chi_h_integral"] = c.chi_h_integral;
    j["c1sq"] = c.c1sq;
    j["freedman"] = c.freedman ? Json{{"m", c.freedman->m}, {"n", c.freedman->n}} : Json(nullptr);
    j["certificate"] = c.certificate ? certificate_json(*c.certificate) : Json(nullptr);
    Json as = Json::array();
    for (const auto& a : r.assertions)
        as.push_back(Json{{"kind", a.kind},
                          {"expected", a.expected},
                          {"outcome", outcome_name(a.outcome)},
                          {"method", a.method},
                          {"observed", a.detail},
                          {"budget_used", detail::used_json(a.used)}});
    j["assertions"] = as;
    j["budget"] = budget_json(r.budget);
    j["exit_code"] = r.exit_code();
    if (with_timing) j["wall_ms"] = static_cast<long long>(r.wall_ms + 0.5);
    return j;
}

inline std::string report_text(const RunReport& r) {
    std::ostringstream o;
    o << "recipe " << r.recipe;
    for (const auto& [k, v] : r.params) o << " " << k << "=" << v;
    o << "\nmodel " << r.model << " (" << level_name(r.level) << ", " << exactness_name(r.exactness) << ")\n";
    o << "steps:\n";
    for (const auto& s : r.steps) {
        o << "  " << s.text;
        if (s.entry.b1_after) {
            o << "  [b1 ";
            if (s.entry.b1_before) o << *s.entry.b1_before << "->";
            o << *s.entry.b1_after << "]";
        }
        o << "\n";
        for (const auto& rel : s.entry.relators_added) o << "      + " << rel << "\n";
    }
    const auto& c = r.chars;
    o << "e = " << c.e << ", sigma = " << c.sigma << ", c1^2 = " << c.c1sq << ", chi_h = " << rational_string(c.chi_h)
      << (c.chi_h_integral ? "" : " (non-integral)") << "\n";
    if (c.h1) o << "H1 = " << format_abelian(*c.h1) << ", b1 = " << *c.b1 << ", b2 = " << *c.b2 << "\n";
    if (c.certificate)
        o << "pi1: " << claim_name(*c.certificate) << " via " << method_name(c.certificate->method) << " (cosets "
          << c.certificate->used.cosets << ", tietze passes " << c.certificate->used.tietze_passes
          << ", derivation depth " << c.certificate->used.derivation_depth << ")\n";
    if (c.freedman) o << "Freedman type: " << c.freedman->m << " CP2 # " << c.freedman->n << " -CP2\n";
    o << "assertions:\n";
    for (const auto& a : r.assertions) {
        o << "  " << outcome_name(a.outcome) << "  " << a.kind << " " << a.expected;
        if (!a.detail.empty()) o << "  (observed " << a.detail << ", " << a.method << ")";
        o << "\n";
    }
    return o.str();
}

inline Json block_json(const ManifoldModel& m) {
    const Presentation& p = m.presentation;
    Json rels = Json::array();
    for (const auto& r : p.relators) rels.push_back(format_word(r, p));
    Json tori = Json::array();
    for (const auto& t : m.tori) {
        Json j{{"name", t.name}, {"status", status_name(t.status)}};
        if (m.level != ModelLevel::ArithmeticOnly) {
            j["mu"] = format_word(t.mu, p);
            j["m"] = format_word(t.m, p);
            j["l"] = format_word(t.ell, p);
        }
        j["complement_exact"] = t.complement_exact;
        tori.push_back(j);
    }
    Json surfs = Json::array();
    for (const auto& s : m.surfaces) {
        Json loops = Json::array();
        for (const auto& l : s.loops) loops.push_back(format_word(l, p));
        Json kernel = Json::array();
        for (const auto& k : s.kernel_words) kernel.push_back(format_word(k, s.abstract_names));
        surfs.push_back(Json{{"name", s.name},
                             {"genus", s.genus},
                             {"square", s.square},
                             {"loops", loops},
                             {"mu", format_word(s.mu, p)},
                             {"kernel_words", kernel},
                             {"dual_sphere", s.dual_sphere},
                             {"complement_simply_connected", s.complement_simply_connected},
                             {"status", status_name(s.status)}});
    }
    Json j;
    j["block"] = m.name;
    j["level"] = level_name(m.level);
    j["generators"] = p.generators;
    j["relators"] = rels;
    j["tori"] = tori;
    j["surfaces"] = surfs;
    j["e"] = m.e;
    j["sigma"] = m.sigma;
    j["exactness"] = exactness_name(m.exactness);
    if (m.form) {
        j["form"] = Json{{"hyperbolic_pairs", m.form->hyperbolic_pairs},
                         {"basis", m.form->basis},
                         {"odd_block", m.form->odd_block},
                         {"signature", form_signature(*m.form)}};
    }
    if (m.has_group()) j["h1"] = abelian_json(abelianize(m.presentation));
    return j;
}

inline std::string block_text(const ManifoldModel& m) {
    std::ostringstream o;
    const Presentation& p = m.presentation;
    o << "block " << m.name << " (" << level_name(m.level) << ", " << exactness_name(m.exactness) << ")\n";
    if (m.level != ModelLevel::ArithmeticOnly) {
        o << "generators:";
        for (const auto& g : p.generators) o << " " << g;
        o << "\nrelators (" << p.relators.size() << "):\n";
        for (const auto& r : p.relators) o << "  " << format_word(r, p) << "\n";
    }
    o << "tori (" << m.tori.size() << "):\n";
    for (const auto& t : m.tori) {
        o << "  " << t.name;
        if (m.level != ModelLevel::ArithmeticOnly)
            o << "  mu = " << format_word(t.mu, p) << "  m = " << format_word(t.m, p) << "  l = " << format_word(t.ell, p);
        o << "  [" << status_name(t.status) << (t.complement_exact ? ", exact complement" : "") << "]\n";
    }
    for (const auto& s : m.surfaces) {
        o << "surface " << s.name << " genus " << s.genus << " square " << s.square << " loops";
        for (const auto& l : s.loops) o << " " << format_word(l, p);
        o << "  mu = " << format_word(s.mu, p);
        if (!s.kernel_words.empty()) {
            o << "  kernel";
            for (const auto& k : s.kernel_words) o << " " << format_word(k, s.abstract_names);
        }
        if (s.complement_simply_connected) o << "  complement simply connected";
        o << "\n";
    }
    o << "e = " << m.e << ", sigma = " << m.sigma << "\n";
    if (m.form) {
        o << "form: " << m.form->hyperbolic_pairs << " hyperbolic pairs plus block on";
        for (const auto& b : m.form->basis) o << " " << b;
        o << "\n";
        for (const auto& row : m.form->odd_block) {
            o << "  ";
            for (auto v : row) o << (v >= 0 ? " " : "") << v << " ";
            o << "\n";
        }
        o << "signature " << form_signature(*m.form) << "\n";
    }
    if (m.has_group()) o << "H1 = " << format_abelian(abelianize(m.presentation)) << "\n";
    return o.str();
}

inline Json scan_row_json(const ScanRow& r) {
    Json cs = Json::array();
    for (const auto& c : r.choices) {
        Json j{{"torus", c.torus}, {"k", c.k}};
        j["dir"] = c.k == 0 ? Json(nullptr) : Json(std::string(1, c.dir));
        cs.push_back(j);
    }
    return Json{{"choices", cs},
                {"h1", format_abelian(r.h1)},
                {"e", r.e},
                {"sigma", r.sigma},
                {"c1sq", r.c1sq},
                {"chi_h", rational_string(r.chi_h)},
                {"certificate", claim_name(r.certificate)},
                {"method", method_name(r.certificate.method)}};
}

inline std::string scan_row_text(const ScanRow& r) {
    return format_choices(r.choices) + "\t" + format_abelian(r.h1) + "\t" + std::to_string(r.e) + "\t" +
           std::to_string(r.sigma) + "\t" + std::to_string(r.c1sq) + "\t" + rational_string(r.chi_h) + "\t" +
           claim_name(r.certificate);
}

}  // namespace lutcalc
