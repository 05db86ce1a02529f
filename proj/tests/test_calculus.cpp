#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace lutcalc;

namespace {

bool has_relator(const Presentation& p, const Word& w) {
    auto key = canonical_cyclic(w.cyclically_reduced());
    for (const auto& r : p.relators)
        if (canonical_cyclic(r) == key) return true;
    return false;
}

ManifoldModel cool_surgeries() {
    ManifoldModel z = make_block("Z");
    z = torus_surgery(z, {"T1'", 1, 1, 1, 0});
    z = torus_surgery(z, {"T1", -1, 1, 1, 0});
    z = torus_surgery(z, {"T2", -1, 1, 0, 1});
    z = torus_surgery(z, {"T2'", 1, 1, 0, 1});
    z = torus_surgery(z, {"T3", -1, 1, 0, 1});
    z = torus_surgery(z, {"T4", -1, 1, 1, 0});
    return z;
}

}  // namespace

TEST_CASE("surgery relators", "[calculus]") {
    ManifoldModel z = make_block("Z");
    SECTION("1/1 on T1' along m sets b1 = [a2^-1,a1^-1]") {
        auto m = torus_surgery(z, {"T1'", 1, 1, 1, 0});
        CHECK(has_relator(m.presentation, z.word("[a2^-1,a1^-1]*b1^-1")));
        CHECK(m.find_torus("T1'")->status == PieceStatus::Surgered);
        CHECK(m.log.back().b1_before == 6);
        CHECK(m.log.back().b1_after == 5);
    }
    SECTION("-1/1 on T1 along m sets x = [b1^-1,y^-1]") {
        auto m = torus_surgery(z, {"T1", -1, 1, 1, 0});
        CHECK(has_relator(m.presentation, z.word("[b1^-1,y^-1]^-1*x")));
    }
    SECTION("1/0 adds the meridian only") {
        auto m = torus_surgery(z, {"T3", 1, 0, 1, 0});
        CHECK(m.presentation.relators.size() == z.presentation.relators.size() + 1);
        CHECK(has_relator(m.presentation, z.find_torus("T3")->mu));
        CHECK(abelianize(m.presentation) == abelianize(z.presentation));
    }
    SECTION("invalid coefficients and reuse") {
        CHECK_THROWS_AS(torus_surgery(z, {"T1", 2, 4, 1, 0}), CalculusError);
        CHECK_THROWS_AS(torus_surgery(z, {"T9", 1, 1, 1, 0}), CalculusError);
        auto m = torus_surgery(z, {"T1", 1, 1, 1, 0});
        CHECK_THROWS_AS(torus_surgery(m, {"T1", 1, 1, 1, 0}), CalculusError);
    }
    SECTION("surgery keeps e and sigma") {
        auto m = torus_surgery(z, {"T2", 3, 2, 0, 1});
        CHECK(m.e == z.e);
        CHECK(m.sigma == z.sigma);
        CHECK_FALSE(m.symplectic);
    }
}

TEST_CASE("surface fills", "[calculus]") {
    SECTION("cool surgeries then fill F stay trivial") {
        auto m = fill(cool_surgeries(), "F");
        CHECK(classify(m.presentation).claim == Claim::Trivial);
    }
    SECTION("fill F on M adds [x,y]") {
        ManifoldModel m = make_block("M");
        auto f = fill(m, "F");
        CHECK(has_relator(f.presentation, m.word("[x,y]")));
        CHECK(f.find_surface("F")->status == PieceStatus::Filled);
    }
    SECTION("fill with a derivably trivial meridian keeps the abelianization") {
        ManifoldModel z = make_block("Z");
        auto f = fill(z, "F");
        CHECK(abelianize(f.presentation) == abelianize(z.presentation));
    }
    CHECK_THROWS_AS(fill(make_block("Z"), "G"), CalculusError);
}

TEST_CASE("genus-2 amalgam sums", "[calculus]") {
    auto id = find_gluing("identity4");
    SECTION("W1 and W2") {
        ManifoldModel w1 = make_block("W1"), w2 = make_block("W2");
        auto s = sum_genus2_amalgam(w1, "F1", w2, "F2", resolve_gluing(*id, *w2.find_surface("F2")));
        CHECK(s.e == 10);
        CHECK(s.sigma == -6);
    }
    SECTION("W1 and M") {
        ManifoldModel w1 = make_block("W1"), m = make_block("M");
        auto s = sum_genus2_amalgam(w1, "F1", m, "F", resolve_gluing(*find_gluing("theorem-five"), *m.find_surface("F")));
        CHECK(s.e == 8);
        CHECK(s.sigma == -4);
    }
    SECTION("X and X") {
        ManifoldModel x = derived_block("X");
        auto s = sum_genus2_amalgam(x, "F", x, "F", resolve_gluing(*id, *x.find_surface("F")));
        CHECK(s.e == 16);
        CHECK(s.sigma == -4);
        CHECK(s.presentation.ngens() == 2 * x.presentation.ngens());
        auto fr = characteristic_report(s, Budget{});
        REQUIRE(fr.freedman);
        CHECK(fr.freedman->m == 5);
        CHECK(fr.freedman->n == 9);
    }
}

TEST_CASE("genus-2 quotient sums", "[calculus]") {
    SECTION("W1 kills W2 through identity4") {
        ManifoldModel w1 = make_block("W1"), w2 = make_block("W2");
        auto s = sum_genus2_quotient(w1, "F1", w2, "F2", resolve_gluing(*find_gluing("identity4"), *w2.find_surface("F2")));
        CHECK(has_relator(s.presentation, w2.word("s1*s2")));
        CHECK(has_relator(s.presentation, w2.word("t1*t2")));
        CHECK(has_relator(s.presentation, w2.word("[s1,t1]")));
        CHECK(s.e == 10);
        CHECK(s.sigma == -6);
    }
    SECTION("W1 kills M through theorem-five") {
        ManifoldModel w1 = make_block("W1"), m = make_block("M");
        auto s = sum_genus2_quotient(w1, "F1", m, "F", resolve_gluing(*find_gluing("theorem-five"), *m.find_surface("F")));
        CHECK(has_relator(s.presentation, m.word("b1^-1*a2")));
        CHECK(has_relator(s.presentation, m.word("b1*a1*b1^-1*b2")));
        CHECK(has_relator(s.presentation, m.word("[a1,b1]")));
        CHECK(s.e == 8);
    }
    SECTION("X kills the loops of M, x and y survive") {
        ManifoldModel x = derived_block("X"), m = make_block("M");
        auto s = sum_genus2_quotient(x, "F", m, "F", resolve_gluing(*find_gluing("identity4"), *m.find_surface("F")));
        for (const char* g : {"a1", "b1", "a2", "b2"}) CHECK(has_relator(s.presentation, m.word(g)));
        auto simp = tietze_simplify(s.presentation);
        CHECK(simp.presentation.generators == std::vector<std::string>{"x", "y"});
        CHECK(s.e == 10);
        CHECK(s.sigma == -2);
    }
    SECTION("a killer without a certificate is rejected") {
        ManifoldModel m = make_block("M");
        CHECK_THROWS_AS(sum_genus2_quotient(m, "F", m, "F", resolve_gluing(*find_gluing("identity4"), *m.find_surface("F"))),
                        CalculusError);
    }
}

TEST_CASE("torus sums", "[calculus]") {
    ManifoldModel b = derived_block("B"), x1 = derived_block("X1");
    SECTION("with X1 adds (6,-2)") {
        ManifoldModel l = mapping_torus_block(1, twist_monodromy(1));
        auto s = sum_torus(l, "T0", x1, "T4", {x1.word("a2"), x1.word("y")});
        CHECK(s.e == l.e + 6);
        CHECK(s.sigma == l.sigma - 2);
    }
    SECTION("with B adds (10,-2) and gives free groups") {
        for (int n = 1; n <= 3; ++n) {
            ManifoldModel l = mapping_torus_block(n, twist_monodromy(n));
            auto s = sum_torus(l, "T0", b, "T3", {b.word("x"), b.word("a2")});
            CHECK(s.e == 10);
            CHECK(s.sigma == -2);
            auto c = classify(s.closed_presentation());
            if (n == 1) {
                CHECK(c.claim == Claim::InfiniteCyclic);
            } else {
                CHECK(c.claim == Claim::Free);
                CHECK(c.n == n);
            }
        }
    }
    SECTION("an inexact torus is rejected") {
        ManifoldModel l = mapping_torus_block(1, twist_monodromy(1));
        CHECK_THROWS_AS(sum_torus(l, "T0", b, "T1'", {b.word("x"), b.word("a2")}), CalculusError);
    }
}

TEST_CASE("blow-ups", "[calculus]") {
    ManifoldModel t4 = arithmetic_block("T4", 0, 0, {});
    auto two = blow_up(blow_up(t4));
    CHECK(two.e == 2);
    CHECK(two.sigma == -2);
    auto four = blow_up(blow_up(two));
    CHECK(four.e == 4);
    CHECK(four.sigma == -4);
    ManifoldModel z = make_block("Z");
    auto bz = blow_up(z);
    CHECK(abelianize(bz.closed_presentation()) == abelianize(z.closed_presentation()));
    CHECK(bz.odd_form);
}

TEST_CASE("characteristic reports", "[calculus]") {
    SECTION("X gives (6,-2) and Freedman (1,3)") {
        auto r = characteristic_report(derived_block("X"), Budget{});
        CHECK(r.e == 6);
        CHECK(r.sigma == -2);
        REQUIRE(r.freedman);
        CHECK(*r.freedman == FreedmanType{1, 3});
        CHECK(r.c1sq == 6);
        CHECK(r.chi_h == 1);
    }
    SECTION("B gives (10,-2) and Freedman (3,5)") {
        auto r = characteristic_report(derived_block("B"), Budget{});
        REQUIRE(r.freedman);
        CHECK(*r.freedman == FreedmanType{3, 5});
    }
    SECTION("non-integral holomorphic Euler characteristic is flagged") {
        auto r = characteristic_report(arithmetic_block("odd", 5, 0, {}), Budget{});
        CHECK_FALSE(r.chi_h_integral);
        CHECK(rational_string(r.chi_h) == "5/4");
    }
}
