#include <chrono>
#include <cstdio>
#include <functional>

#include "properties.hpp"

using namespace lutcalc;

namespace {

struct Check {
    std::vector<std::string> problems;
    void require(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool claim_is(const RunReport& r, Claim c) { return r.chars.certificate && r.chars.certificate->claim == c; }

std::string describe(const RunReport& r) {
    std::string s = r.recipe + " e=" + std::to_string(r.chars.e) + " sigma=" + std::to_string(r.chars.sigma);
    if (r.chars.certificate) s += " " + claim_name(*r.chars.certificate);
    return s;
}

void exact_numbers(Check& c, const std::string& name, long long e, long long sigma, FreedmanType f) {
    auto t0 = std::chrono::steady_clock::now();
    RunReport r = run_builtin(name);
    double s = seconds_since(t0);
    c.require(claim_is(r, Claim::Trivial), name + ": no trivial-group certificate (" + describe(r) + ")");
    c.require(r.chars.e == e && r.chars.sigma == sigma, name + ": wrong (e, sigma)");
    c.require(r.chars.freedman && *r.chars.freedman == f, name + ": wrong Freedman type");
    c.require(r.exit_code() == 0, name + ": assertions did not all pass");
    c.require(s < 5.0, name + ": took " + std::to_string(s) + " s");
}

void criterion1(Check& c) {
    auto t0 = std::chrono::steady_clock::now();
    RunOptions opt;
    opt.budget.max_cosets = 100'000;
    RunReport r = run_recipe(builtin_recipe("cool"), opt);
    double s = seconds_since(t0);
    c.require(claim_is(r, Claim::Trivial), "cool: not certified trivial");
    c.require(r.chars.certificate && r.chars.certificate->method == Method::Enumeration, "cool: not by enumeration");
    c.require(r.chars.certificate && r.chars.certificate->n == 1, "cool: index is not 1");
    c.require(r.chars.certificate && r.chars.certificate->used.cosets <= 100'000, "cool: more than 10^5 cosets");
    c.require(r.chars.e == 6 && r.chars.sigma == -2, "cool: wrong (e, sigma)");
    c.require(r.chars.freedman && *r.chars.freedman == FreedmanType{1, 3}, "cool: wrong Freedman type");
    c.require(r.exit_code() == 0, "cool: assertions did not all pass");
    c.require(s < 5.0, "cool: took " + std::to_string(s) + " s");
}

void criterion2(Check& c) {
    exact_numbers(c, "seven", 10, -6, {1, 7});
    exact_numbers(c, "five", 8, -4, {1, 5});
    exact_numbers(c, "10baby", 10, -2, {3, 5});
}

void criterion3(Check& c) {
    RunReport r = run_builtin("ZZ");
    c.require(claim_is(r, Claim::InfiniteCyclic), "ZZ: not infinite cyclic (" + describe(r) + ")");
    c.require(r.chars.e == 6 && r.chars.sigma == -2, "ZZ: wrong (e, sigma)");
    auto s = tietze_simplify(r.closed);
    c.require(s.presentation.ngens() == 1 && s.presentation.relators.empty(),
              "ZZ: simplification stops at " + std::to_string(s.presentation.ngens()) + " generators, " +
                  std::to_string(s.presentation.relators.size()) + " relators");
    c.require(r.exit_code() == 0, "ZZ: assertions did not all pass");
}

void criterion4(Check& c) {
    for (long long n = -3; n <= 3; ++n) {
        RunReport r = run_builtin("Yfamily", {{"n", n}});
        c.require(claim_is(r, Claim::Trivial), "Yfamily n=" + std::to_string(n) + ": not certified trivial");
        c.require(r.exit_code() == 0, "Yfamily n=" + std::to_string(n) + ": assertions did not all pass");
    }
}

void criterion5(Check& c) {
    RunReport z3 = run_builtin("Z3");
    c.require(claim_is(z3, Claim::FreeAbelian) && z3.chars.certificate->n == 3, "Z3: not free abelian of rank 3");
    if (z3.chars.certificate) {
        const auto& cert = *z3.chars.certificate;
        c.require(cert.method == Method::Derivation && cert.commutators.size() == 3, "Z3: three commutator derivations expected");
        Presentation q = tietze_simplify(z3.closed, z3.budget).presentation;
        size_t k = 0;
        for (int i = 0; i < q.ngens(); ++i)
            for (int j = i + 1; j < q.ngens(); ++j, ++k) {
                if (k >= cert.commutators.size()) break;
                const auto& d = cert.commutators[k];
                c.require(d.depth() <= 8, "Z3: commutator derivation deeper than 8");
                c.require(d.expand(q) == commutator(Word::gen(i), Word::gen(j)), "Z3: commutator derivation does not replay");
            }
    }
    c.require(z3.exit_code() == 0, "Z3: assertions did not all pass");

    RunReport b1 = run_builtin("B1");
    c.require(claim_is(b1, Claim::FreeAbelian) && b1.chars.certificate->n == 2, "B1: not free abelian of rank 2");
    int pushoffs = 0;
    for (const auto& a : b1.assertions)
        if (a.kind == "pushoffs") {
            ++pushoffs;
            c.require(a.outcome == Outcome::Pass, "B1: push-off check " + a.expected + " did not pass");
        }
    c.require(pushoffs == 2, "B1: two push-off checks expected");
    Recipe rb = builtin_recipe("B1");
    std::set<std::string> args;
    for (const auto& a : rb.assertions)
        if (a.kind == "pushoffs") args.insert(a.args);
    c.require(args == std::set<std::string>{"T3 1 1 t2", "T4 1 t1 t2"}, "B1: push-offs are not (1, t2) and (t1, t2)");
    c.require(b1.exit_code() == 0, "B1: assertions did not all pass");
}

void criterion6(Check& c) {
    RunReport r = run_builtin("abelian", {{"p", 2}, {"q", 3}, {"r", 4}});
    c.require(r.chars.h1 && r.chars.h1->torsion == std::vector<BigInt>{2, 12} && r.chars.h1->free_rank == 0,
              "abelian(2,3,4): H1 is not Z/2+Z/12");
    auto o = oracle::invariant_factors(r.closed);
    c.require(o.free_rank == 0 && o.torsion == std::vector<BigInt>{2, 12}, "abelian(2,3,4): oracle disagrees");
    auto tc = todd_coxeter(r.closed, {}, Budget{});
    c.require(tc.index && *tc.index == 24, "abelian(2,3,4): enumeration does not give order 24");
    c.require(r.chars.certificate && r.chars.certificate->method == Method::Enumeration && r.chars.certificate->n == 24,
              "abelian(2,3,4): certificate is not an order-24 enumeration");
    c.require(r.chars.e == 6 && r.chars.sigma == -2, "abelian(2,3,4): wrong (e, sigma)");
    c.require(r.exit_code() == 0, "abelian(2,3,4): assertions did not all pass");

    RunReport z5 = run_builtin("abelian", {{"p", 0}, {"q", 0}, {"r", 5}});
    c.require(z5.chars.h1 && format_abelian(*z5.chars.h1) == "Z^2+Z/5", "abelian(0,0,5): H1 is not Z^2+Z/5");
    c.require(z5.exit_code() == 0, "abelian(0,0,5): assertions did not all pass");
}

void criterion7(Check& c) {
    for (long long n = 1; n <= 3; ++n) {
        RunReport r = run_builtin("free", {{"n", n}});
        std::string tag = "free(" + std::to_string(n) + ")";
        bool ok = n == 1 ? claim_is(r, Claim::InfiniteCyclic) : claim_is(r, Claim::Free) && r.chars.certificate->n == n;
        c.require(ok, tag + ": not free of rank " + std::to_string(n) + " (" + describe(r) + ")");
        c.require(r.chars.e == 10 && r.chars.sigma == -2, tag + ": wrong (e, sigma)");
        c.require(r.exit_code() == 0, tag + ": assertions did not all pass");
    }
}

void criterion8(Check& c) {
    ManifoldModel z = make_block("Z");
    auto h = abelianize(z.presentation);
    c.require(h.free_rank == 6 && h.torsion.empty(), "Z: H1 is not Z^6");
    c.require(z.e - 2 + 2 * h.free_rank == 16, "Z: b2 is not 16");
    c.require(z.form && 2 * z.form->hyperbolic_pairs + static_cast<long long>(z.form->odd_block.size()) == 16,
              "Z: form rank is not 16");
    c.require(z.form && form_signature(*z.form) == -2, "Z: signature is not -2");
    c.require(z.form && oracle::signature(z.form->odd_block) == -2, "Z: oracle signature is not -2");
    auto d = z.form ? oracle::determinant(z.form->odd_block) : BigInt(0);
    c.require(d == 1 || d == -1, "Z: odd block is not unimodular");

    ManifoldModel m = make_block("M"), w2 = make_block("W2");
    auto images = resolve_gluing(*find_gluing("eq-phi"), *m.find_surface("F"));
    Presentation pieces = m.presentation;
    for (const auto& r : w2.presentation.relators) pieces.add_relator(r.substitute(images));
    c.require(pieces.generators == z.presentation.generators, "Z: generator lists differ");
    for (const auto& r : z.presentation.relators) {
        auto dr = prove_word_trivial(pieces, r);
        bool ok = dr.derivation && dr.derivation->depth() <= 8 && dr.derivation->expand(pieces) == r;
        c.require(ok, "Z: relator " + format_word(r, z.presentation) + " not derived at depth <= 8");
    }
}

void criterion9(Check& c) {
    for (long long m = 0; m <= 3; ++m)
        for (long long n = 0; n <= 3; ++n) {
            RunReport r = run_builtin("family", {{"m", m}, {"n", n}});
            c.require(r.chars.freedman && *r.chars.freedman == FreedmanType{1 + 2 * m + 2 * n, 3 + 6 * m + 4 * n} &&
                          r.exit_code() == 0,
                      "family(" + std::to_string(m) + "," + std::to_string(n) + ") mismatch");
        }
    for (long long g = 1; g <= 4; ++g)
        for (long long rr = 0; rr <= 4; ++rr) {
            RunReport r = run_builtin("fifty", {{"g", g}, {"r", rr}});
            c.require(r.chars.e == 10 + 6 * (g + rr) && r.chars.sigma == -2 - 2 * (g + rr) && r.exit_code() == 0,
                      "fifty(" + std::to_string(g) + "," + std::to_string(rr) + ") mismatch");
        }
    for (long long n : {2, 4, 6}) {
        RunReport r = run_builtin("genabelian", {{"n", n}});
        long long g = (n + 6) / 2;
        long long expansion = 12 * g - 6 + (2 * g * g - 5 * g + 3);
        long long closed = (n * n + 19 * n) / 2 + 36;
        c.require(r.chars.e == expansion && r.chars.e == closed && r.exit_code() == 0,
                  "genabelian(" + std::to_string(n) + "): e=" + std::to_string(r.chars.e) + " vs " +
                      std::to_string(expansion));
    }
    for (long long n = 1; n <= 3; ++n) {
        RunReport r = run_builtin("odd", {{"n", n}});
        c.require(r.chars.e == 9 - 5 * n + 2 * n * n && r.exit_code() == 0, "odd(" + std::to_string(n) + ") mismatch");
    }
    for (auto [name, f] : std::vector<std::pair<std::string, FreedmanType>>{{"b31", {3, 7}}, {"b32", {3, 9}}, {"b51", {5, 9}}}) {
        RunReport r = run_builtin(name);
        c.require(r.chars.freedman && *r.chars.freedman == f && r.exit_code() == 0, name + ": wrong Freedman type");
    }
}

void criterion10(Check& c) {
    auto runs = props::builtin_runs();
    int checked = 0;
    for (auto f : {props::b1_drops(runs, &checked), props::e_sigma_invariance(runs), props::b2_formula(runs),
                   props::fuzz_classify(10000, 1001), props::fuzz_reduce(10000, 1002),
                   props::fuzz_derivation(10000, 1003), props::fuzz_tietze(10000, 1004)})
        if (f) c.problems.push_back(*f);
    c.require(checked > 50, "too few surgery steps checked");
}

}  // namespace

int main() {
    std::vector<std::function<void(Check&)>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                      criterion6, criterion7, criterion8, criterion9, criterion10};
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i](c);
        } catch (const std::exception& e) {
            c.problems.push_back(std::string("exception: ") + e.what());
        }
        double s = seconds_since(t0);
        bool ok = c.problems.empty();
        if (!ok) ++failed;
        std::printf("criterion %zu: %s (%.2f s)\n", i + 1, ok ? "pass" : "fail", s);
        for (const auto& p : c.problems) std::printf("    %s\n", p.c_str());
    }
    return failed == 0 ? 0 : 1;
}
