#pragma once

#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "expr.hpp"
#include "recipe.hpp"

namespace lutcalc {

struct RecipeError : std::runtime_error {
    int line;
    RecipeError(int l, const std::string& msg)
        : std::runtime_error(l > 0 ? "line " + std::to_string(l) + ": " + msg : msg), line(l) {}
};

using ParamValues = std::vector<std::pair<std::string, long long>>;

enum class Outcome { Pass, Fail, Unknown };

inline std::string outcome_name(Outcome o) {
    return o == Outcome::Pass ? "pass" : o == Outcome::Fail ? "fail" : "unknown";
}

struct AssertionOutcome {
    std::string kind;
    std::string expected;
    Outcome outcome = Outcome::Unknown;
    std::string method = "none";
    std::string detail;
    BudgetUsed used;
};

struct StepReport {
    std::string text;
    std::string target;
    ProvenanceEntry entry;
};

struct RunReport {
    std::string recipe;
    ParamValues params;
    std::vector<StepReport> steps;
    std::string model;
    ModelLevel level = ModelLevel::Presentation;
    Exactness exactness = Exactness::Exact;
    Presentation closed;
    CharacteristicReport chars;
    std::vector<AssertionOutcome> assertions;
    Budget budget;
    double wall_ms = 0;

    int exit_code() const {
        bool unknown = false;
        for (const auto& a : assertions) {
            if (a.outcome == Outcome::Fail) return 1;
            unknown = unknown || a.outcome == Outcome::Unknown;
        }
        return unknown ? 2 : 0;
    }
};

using ModelEnv = std::map<std::string, ManifoldModel>;

struct ExecResult {
    ModelEnv env;
    std::string last;
    std::vector<StepReport> steps;
};

inline ManifoldModel resolve_block(const std::string& id, std::optional<long long> arg);

namespace detail {

inline ParamValues bind_params(const Recipe& r, const std::map<std::string, long long>& overrides) {
    for (const auto& [k, v] : overrides) {
        bool found = false;
        for (const auto& p : r.params) found = found || p.name == k;
        if (!found) throw RecipeError(0, "recipe " + r.name + " has no parameter '" + k + "'");
    }
    ParamValues out;
    for (const auto& p : r.params) {
        long long v = p.def;
        if (auto it = overrides.find(p.name); it != overrides.end()) v = it->second;
        if (p.lo && (v < *p.lo || v > *p.hi))
            throw RecipeError(0, "parameter " + p.name + "=" + std::to_string(v) + " outside " + std::to_string(*p.lo) +
                                     ".." + std::to_string(*p.hi));
        out.emplace_back(p.name, v);
    }
    return out;
}

inline std::optional<long long> param_value(const ParamValues& ps, const std::string& n) {
    for (const auto& [k, v] : ps)
        if (k == n) return v;
    return std::nullopt;
}

inline ExprReader::Lookup param_lookup(const ParamValues& ps) {
    return [&ps](const std::string& n) -> std::optional<Rational> {
        if (auto v = param_value(ps, n)) return Rational(*v);
        return std::nullopt;
    };
}

inline WordReader::ParamLookup word_params(const ParamValues& ps) {
    return [&ps](const std::string& n) { return param_value(ps, n); };
}

inline ManifoldModel& model_of(ModelEnv& env, const std::string& var, int line) {
    auto it = env.find(var);
    if (it == env.end()) throw RecipeError(line, "unbound model '" + var + "'");
    return it->second;
}

inline Word read_word(const std::string& text, const ManifoldModel& m, const ParamValues& ps, int line) {
    try {
        return WordReader(text, [&m](const std::string& s) { return m.presentation.find(s); }, word_params(ps), line)
            .parse();
    } catch (const ParseError& e) {
        throw RecipeError(line, std::string("word '") + text + "' in " + m.name + ": " + e.what());
    }
}

inline void apply_step(ExecResult& ex, const Step& s, const ParamValues& ps) {
    auto num = [&](const std::string& e) { return eval_integer(e, param_lookup(ps)); };
    std::string target;
    switch (s.kind) {
        case StepKind::Block: {
            std::optional<long long> arg;
            if (!s.block_arg.empty()) arg = num(s.block_arg);
            if (ex.env.count(s.var)) throw RecipeError(s.line, "model '" + s.var + "' already bound");
            ManifoldModel m = resolve_block(s.block_id, arg);
            m.name = s.var;
            m.log.clear();
            ProvenanceEntry e;
            e.step = serialize_step(s);
            e.de = m.e;
            e.dsigma = m.sigma;
            e.b1_after = closed_b1(m);
            ex.steps.push_back({serialize_step(s), s.var, e});
            ex.env[s.var] = std::move(m);
            ex.last = s.var;
            return;
        }
        case StepKind::Sum2: {
            if (s.first.var == s.second.var) throw RecipeError(s.line, "a model cannot be summed with itself");
            ManifoldModel& k = model_of(ex.env, s.first.var, s.line);
            ManifoldModel& p = model_of(ex.env, s.second.var, s.line);
            const TrackedSurface* fp = p.find_surface(s.second.piece);
            if (!fp) throw RecipeError(s.line, "no surface '" + s.second.piece + "' in " + p.name);
            std::vector<Word> phi;
            if (!s.map_name.empty()) {
                auto g = find_gluing(s.map_name);
                if (!g) throw RecipeError(s.line, "unknown gluing map '" + s.map_name + "'");
                phi = resolve_gluing(*g, *fp);
            } else {
                for (const auto& w : s.inline_words) phi.push_back(read_word(w, p, ps, s.line));
                check_inline_gluing(phi, fp->loops);
            }
            ManifoldModel r = s.quotient ? sum_genus2_quotient(k, s.first.piece, p, s.second.piece, phi)
                                         : sum_genus2_amalgam(k, s.first.piece, p, s.second.piece, phi);
            ex.env.erase(s.first.var);
            ex.env[s.second.var] = std::move(r);
            target = s.second.var;
            break;
        }
        case StepKind::SumT: {
            if (s.first.var == s.second.var) throw RecipeError(s.line, "a model cannot be summed with itself");
            ManifoldModel& l = model_of(ex.env, s.first.var, s.line);
            ManifoldModel& r = model_of(ex.env, s.second.var, s.line);
            std::vector<Word> phi;
            for (const auto& w : s.inline_words) phi.push_back(read_word(w, r, ps, s.line));
            ManifoldModel out = sum_torus(l, s.first.piece, r, s.second.piece, phi);
            ex.env.erase(s.second.var);
            ex.env[s.first.var] = std::move(out);
            target = s.first.var;
            break;
        }
        case StepKind::Surgery: {
            ManifoldModel& m = model_of(ex.env, s.first.var, s.line);
            m = torus_surgery(m, {s.first.piece, num(s.p), num(s.q), num(s.a), num(s.b)});
            target = s.first.var;
            break;
        }
        case StepKind::Fill: {
            ManifoldModel& m = model_of(ex.env, s.first.var, s.line);
            m = fill(m, s.first.piece);
            target = s.first.var;
            break;
        }
        case StepKind::Blowup: {
            ManifoldModel& m = model_of(ex.env, s.var, s.line);
            m = blow_up(m, s.on.empty() ? std::nullopt : std::optional<std::string>(s.on));
            target = s.var;
            break;
        }
        case StepKind::Copy: {
            ManifoldModel& m = model_of(ex.env, s.first.var, s.line);
            m = copy_surface(m, s.first.piece, s.as);
            target = s.first.var;
            break;
        }
        case StepKind::Rename: {
            ManifoldModel& m = model_of(ex.env, s.var, s.line);
            m = rename_generator(m, s.from, s.to);
            target = s.var;
            break;
        }
    }
    const ManifoldModel& m = ex.env.at(target);
    ProvenanceEntry e = m.log.empty() ? ProvenanceEntry{} : m.log.back();
    ex.steps.push_back({serialize_step(s), target, e});
    ex.last = target;
}

}  // namespace detail

inline ExecResult execute_steps(const Recipe& r, const ParamValues& ps) {
    ExecResult ex;
    for (const auto& s : r.steps) {
        try {
            detail::apply_step(ex, s, ps);
        } catch (const RecipeError&) {
            throw;
        } catch (const std::exception& e) {
            throw RecipeError(s.line, e.what());
        }
    }
    if (ex.last.empty()) throw RecipeError(0, "recipe " + r.name + " produces no model");
    return ex;
}

namespace detail {

inline const char* derived_x_text() {
    return "recipe X\n"
           "block Z as X\n"
           "surgery X.T1' p 1 q 1 dir m^1 l^0\n"
           "surgery X.T1 p -1 q 1 dir m^1 l^0\n"
           "surgery X.T2 p -1 q 1 dir m^0 l^1\n"
           "surgery X.T2' p 1 q 1 dir m^0 l^1\n"
           "surgery X.T3 p -1 q 1 dir m^0 l^1\n"
           "surgery X.T4 p -1 q 1 dir m^1 l^0\n";
}

inline const char* derived_x1_text() {
    return "recipe X1\n"
           "block Z as X1\n"
           "surgery X1.T1' p 1 q 1 dir m^1 l^0\n"
           "surgery X1.T1 p -1 q 1 dir m^1 l^0\n"
           "surgery X1.T2 p -1 q 1 dir m^0 l^1\n"
           "surgery X1.T2' p 1 q 1 dir m^0 l^1\n"
           "surgery X1.T3 p -1 q 1 dir m^0 l^1\n"
           "fill X1.F\n";
}

inline const char* derived_b_text() {
    return "recipe B\n"
           "block M as B\n"
           "block X as K\n"
           "copy B.F as S\n"
           "sum2 K.F B.S map identity4 quotient\n"
           "surgery B.T1 p -1 q 1 dir m^1 l^0\n"
           "surgery B.T2 p -1 q 1 dir m^1 l^0\n"
           "fill B.F\n";
}

inline ManifoldModel build_derived(const std::string& id) {
    const char* text = id == "X" ? derived_x_text() : id == "X1" ? derived_x1_text() : derived_b_text();
    Recipe r = parse_recipe(text);
    ExecResult ex = execute_steps(r, {});
    ManifoldModel m = ex.env.at(ex.last);
    if (id == "X") {
        // certified: the complement of F has trivial group
        auto tc = todd_coxeter(m.complement_of("F"), {}, Budget{});
        m.find_surface("F")->complement_simply_connected = tc.index && *tc.index == 1;
    } else if (id == "X1") {
        m.find_torus("T4")->complement_exact = true;
    } else {
        m.find_torus("T3")->complement_exact = true;
        m.find_torus("T4")->complement_exact = true;
    }
    m.name = id;
    return m;
}

}  // namespace detail

inline const std::vector<std::string>& derived_block_ids() {
    static const std::vector<std::string> ids{"X", "X1", "B"};
    return ids;
}

inline ManifoldModel derived_block(const std::string& id) {
    static std::mutex mu;
    static std::map<std::string, ManifoldModel> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(id); it != cache.end()) return it->second;
    }
    ManifoldModel m = detail::build_derived(id);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(id, std::move(m)).first->second;
}

inline ManifoldModel resolve_block(const std::string& id, std::optional<long long> arg) {
    auto need = [&](bool takes) {
        if (takes && !arg) throw std::invalid_argument("block " + id + " needs an argument");
        if (!takes && arg) throw std::invalid_argument("block " + id + " takes no argument");
    };
    for (const auto& c : catalog_block_ids())
        if (c == id) {
            need(false);
            return make_block(id);
        }
    for (const auto& c : derived_block_ids())
        if (c == id) {
            need(false);
            return derived_block(id);
        }
    if (id == "Y" || id == "Yid") {
        need(true);
        int n = static_cast<int>(*arg);
        return mapping_torus_block(n, id == "Y" ? twist_monodromy(n) : identity_monodromy(n), id);
    }
    if (id == "Sym2") {
        need(true);
        return sym2_block(static_cast<int>(*arg));
    }
    if (id == "Sym2Arith") {
        need(true);
        return sym2_arithmetic_block(static_cast<int>(*arg));
    }
    if (id == "N") {
        need(true);
        return fibered_product_block(static_cast<int>(*arg));
    }
    throw std::invalid_argument("unknown block '" + id + "'");
}

struct WordCheck {
    Outcome outcome = Outcome::Unknown;
    std::string method = "none";
    BudgetUsed used;
};

// Decides w = 1 in p: homology rules out, derivation or simplification rules in.
inline WordCheck check_word_trivial(const Presentation& p, const Word& w, const Budget& budget,
                                    const SimplifyResult* simplified = nullptr, bool group_trivial = false) {
    WordCheck c;
    if (w.empty()) {
        c.outcome = Outcome::Pass;
        c.method = "reduction";
        return c;
    }
    Presentation with = p;
    with.add_relator(w);
    if (!(abelianize(with) == abelianize(p))) {
        c.outcome = Outcome::Fail;
        c.method = "abelianization";
        return c;
    }
    auto d = prove_word_trivial(p, w, budget);
    c.used.derivation_nodes = d.nodes;
    c.used.derivation_depth = d.derivation ? static_cast<int>(d.derivation->depth()) : d.depth_reached;
    if (d.derivation) {
        c.outcome = Outcome::Pass;
        c.method = "derivation";
        return c;
    }
    SimplifyResult local;
    if (!simplified) {
        local = tietze_simplify(p, budget);
        simplified = &local;
    }
    c.used.tietze_passes = simplified->passes;
    Word img = w.substitute(simplified->map);
    if (img.empty()) {
        c.outcome = Outcome::Pass;
        c.method = "simplification";
        return c;
    }
    auto d2 = prove_word_trivial(simplified->presentation, img, budget);
    c.used.derivation_nodes += d2.nodes;
    if (d2.derivation) {
        c.outcome = Outcome::Pass;
        c.method = "derivation";
        c.used.derivation_depth = static_cast<int>(d2.derivation->depth());
        return c;
    }
    if (group_trivial) {
        c.outcome = Outcome::Pass;
        c.method = "enumeration";
    }
    return c;
}

namespace detail {

inline std::string claim_from_abelian(const AbelianGroup& g) {
    Certificate c;
    c.group = g;
    if (g.trivial()) {
        c.claim = Claim::Trivial;
    } else if (g.torsion.empty()) {
        c.claim = g.free_rank == 1 ? Claim::InfiniteCyclic : Claim::FreeAbelian;
        c.n = g.free_rank;
    } else {
        c.claim = g.finite() ? Claim::FiniteAbelian : Claim::Abelian;
    }
    return claim_name(c);
}

// Canonical certificate name for an expected claim written in recipe text.
inline std::string expected_claim(const std::string& args, const ExprReader::Lookup& lookup) {
    auto sp = args.find(' ');
    std::string head = args.substr(0, sp);
    std::string tail = sp == std::string::npos ? "" : args.substr(sp + 1);
    auto count = [&] { return eval_integer(tail, lookup); };
    if (head == "finite" && !tail.empty()) {
        long long n = count();
        return n == 1 ? "trivial" : "finite-of-order-" + std::to_string(n);
    }
    if (head == "free-abelian" && !tail.empty()) {
        long long n = count();
        return n == 0 ? "trivial" : n == 1 ? "infinite-cyclic" : "free-abelian-rank-" + std::to_string(n);
    }
    if (head == "free" && !tail.empty()) {
        long long n = count();
        return n == 0 ? "trivial" : n == 1 ? "infinite-cyclic" : "free-rank-" + std::to_string(n);
    }
    if ((head == "finite-abelian" || head == "abelian") && !tail.empty()) return claim_from_abelian(parse_abelian(tail));
    return args;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

}  // namespace detail

struct RunOptions {
    Budget budget;
    std::map<std::string, long long> overrides;
};

namespace detail {

struct AssertionContext {
    const ManifoldModel& model;
    const CharacteristicReport& chars;
    const ParamValues& params;
    const Budget& budget;
    const Presentation& closed;
    std::optional<SimplifyResult> simplified;

    const SimplifyResult& simple() {
        if (!simplified) simplified = tietze_simplify(closed, budget);
        return *simplified;
    }

    bool group_trivial() const { return chars.certificate && chars.certificate->claim == Claim::Trivial; }

    ExprReader::Lookup lookup() const {
        return [this](const std::string& n) -> std::optional<Rational> {
            if (auto v = param_value(params, n)) return Rational(*v);
            if (n == "e") return Rational(chars.e);
            if (n == "sigma") return Rational(chars.sigma);
            if (n == "c1sq") return Rational(chars.c1sq);
            if (n == "chi_h") return chars.chi_h;
            if (n == "b1" && chars.b1) return Rational(*chars.b1);
            if (n == "b2" && chars.b2) return Rational(*chars.b2);
            return std::nullopt;
        };
    }
};

inline std::string json_kind(const std::string& k) {
    if (k == "pi1") return "pi1_certificate";
    if (k == "h1") return "h1_equals";
    if (k == "e_sigma") return "e_sigma_equals";
    if (k == "freedman") return "freedman_equals";
    if (k == "identity") return "arithmetic_identity";
    return k;
}

inline void merge_used(BudgetUsed& a, const BudgetUsed& b) {
    a.cosets += b.cosets;
    a.peak_table = std::max(a.peak_table, b.peak_table);
    a.tietze_passes = std::max(a.tietze_passes, b.tietze_passes);
    a.derivation_depth = std::max(a.derivation_depth, b.derivation_depth);
    a.derivation_nodes += b.derivation_nodes;
}

inline AssertionOutcome evaluate(const AssertionSpec& a, AssertionContext& ctx) {
    AssertionOutcome out;
    out.kind = json_kind(a.kind);
    out.expected = a.args;
    const bool group_level = ctx.model.has_group();
    auto words = split_ws(a.args);
    try {
        if (a.kind == "pi1") {
            std::string want = expected_claim(a.args, ctx.lookup());
            out.expected = want;
            const auto& cert = ctx.chars.certificate;
            if (!cert) {
                out.detail = "no presentation-level group";
                return out;
            }
            out.method = method_name(cert->method);
            out.used = cert->used;
            std::string got = claim_name(*cert);
            out.detail = got;
            if (cert->claim == Claim::Unknown) return out;
            bool same = got == want;
            if (!same && cert->claim == Claim::FiniteAbelian)
                same = want == "finite-of-order-" + cert->group.order().str();
            out.outcome = same ? Outcome::Pass : Outcome::Fail;
        } else if (a.kind == "h1") {
            AbelianGroup want = parse_abelian(a.args);
            out.expected = format_abelian(want);
            if (!ctx.chars.h1) {
                out.detail = "no group data";
                return out;
            }
            out.method = "abelianization";
            out.detail = format_abelian(*ctx.chars.h1);
            out.outcome = *ctx.chars.h1 == want ? Outcome::Pass : Outcome::Fail;
        } else if (a.kind == "e_sigma" || a.kind == "freedman") {
            if (words.size() != 2) throw ExprError(a.kind + " needs two values");
            long long x = eval_integer(words[0], ctx.lookup()), y = eval_integer(words[1], ctx.lookup());
            out.expected = std::to_string(x) + " " + std::to_string(y);
            out.method = "arithmetic";
            if (a.kind == "e_sigma") {
                out.detail = std::to_string(ctx.chars.e) + " " + std::to_string(ctx.chars.sigma);
                out.outcome = ctx.chars.e == x && ctx.chars.sigma == y ? Outcome::Pass : Outcome::Fail;
            } else if (ctx.chars.freedman) {
                out.detail = std::to_string(ctx.chars.freedman->m) + " " + std::to_string(ctx.chars.freedman->n);
                out.outcome = ctx.chars.freedman == FreedmanType{x, y} ? Outcome::Pass : Outcome::Fail;
            } else {
                const auto& cert = ctx.chars.certificate;
                if (cert) out.used = cert->used;
                bool nontrivial = cert && cert->claim != Claim::Trivial && cert->claim != Claim::Unknown;
                out.detail = nontrivial ? "group not trivial" : "no trivial-group certificate or parity";
                out.outcome = nontrivial ? Outcome::Fail : Outcome::Unknown;
            }
        } else if (a.kind == "identity") {
            auto eq = a.args.find('=');
            if (eq == std::string::npos) throw ExprError("identity needs '='");
            Rational l = eval_expr(a.args.substr(0, eq), ctx.lookup());
            Rational r = eval_expr(a.args.substr(eq + 1), ctx.lookup());
            out.method = "arithmetic";
            out.detail = rational_string(l) + " = " + rational_string(r);
            out.outcome = l == r ? Outcome::Pass : Outcome::Fail;
        } else {
            // word_trivial, word_equals, pushoffs
            if (!group_level) {
                out.detail = "no presentation-level group";
                return out;
            }
            std::vector<std::pair<Word, std::string>> checks;
            auto word = [&](const std::string& t) { return read_word(t, ctx.model, ctx.params, a.line); };
            if (a.kind == "word_trivial") {
                checks.emplace_back(word(a.args), a.args);
            } else if (a.kind == "word_equals") {
                if (words.size() != 2) throw ExprError("word_equals needs two words");
                checks.emplace_back(word(words[0]) * word(words[1]).inverse(), a.args);
            } else {
                if (words.size() != 4) throw ExprError("pushoffs needs TORUS MU M L");
                const TrackedTorus* t = ctx.model.find_torus(words[0]);
                if (!t) throw ExprError("no torus '" + words[0] + "'");
                checks.emplace_back(t->mu * word(words[1]).inverse(), "mu");
                checks.emplace_back(t->m * word(words[2]).inverse(), "m");
                checks.emplace_back(t->ell * word(words[3]).inverse(), "l");
            }
            out.outcome = Outcome::Pass;
            std::vector<std::string> methods;
            for (const auto& [w, label] : checks) {
                WordCheck c = check_word_trivial(ctx.closed, w, ctx.budget, &ctx.simple(), ctx.group_trivial());
                merge_used(out.used, c.used);
                methods.push_back(c.method);
                if (c.outcome == Outcome::Fail) {
                    out.outcome = Outcome::Fail;
                    out.detail = label + " differs";
                } else if (c.outcome == Outcome::Unknown && out.outcome == Outcome::Pass) {
                    out.outcome = Outcome::Unknown;
                    out.detail = label + " undecided";
                }
            }
            out.method = methods.front();
            for (const auto& m : methods)
                if (m != "reduction") out.method = m;
        }
    } catch (const std::exception& e) {
        throw RecipeError(a.line, e.what());
    }
    if (a.require_exact && ctx.model.exactness != Exactness::Exact && out.outcome == Outcome::Pass) {
        out.outcome = Outcome::Unknown;
        out.detail = "model is only an upper bound";
    }
    return out;
}

}  // namespace detail

inline RunReport run_recipe(const Recipe& r, const RunOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.recipe = r.name;
    rep.budget = opt.budget;
    rep.params = detail::bind_params(r, opt.overrides);
    ExecResult ex = execute_steps(r, rep.params);
    const ManifoldModel& m = ex.env.at(ex.last);
    rep.steps = std::move(ex.steps);
    rep.model = ex.last;
    rep.level = m.level;
    rep.exactness = m.exactness;
    if (m.has_group()) rep.closed = m.closed_presentation();
    rep.chars = characteristic_report(m, opt.budget);
    detail::AssertionContext ctx{m, rep.chars, rep.params, opt.budget, rep.closed, std::nullopt};
    for (const auto& a : r.assertions) rep.assertions.push_back(detail::evaluate(a, ctx));
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline RunReport run_recipe_text(const std::string& text, const RunOptions& opt = {}) {
    return run_recipe(parse_recipe(text), opt);
}

}  // namespace lutcalc
