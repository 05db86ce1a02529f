#include <catch2/catch_amalgamated.hpp>

#include "lutcalc/report.hpp"
#include "support.hpp"

using namespace lutcalc;

namespace {

const AssertionOutcome* find_assertion(const RunReport& r, const std::string& kind) {
    for (const auto& a : r.assertions)
        if (a.kind == kind) return &a;
    return nullptr;
}

void expect_parse_error(const std::string& text, int line, int column) {
    try {
        parse_recipe(text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        INFO(e.what());
        CHECK(e.line == line);
        CHECK(e.column == column);
    }
}

bool has_float(const Json& j) {
    if (j.is_number_float()) return true;
    if (j.is_structured())
        for (const auto& v : j)
            if (has_float(v)) return true;
    return false;
}

}  // namespace

TEST_CASE("built-in catalog", "[recipes]") {
    CHECK(builtin_recipes().size() >= 16);
    for (const char* n : {"seven", "five", "cool", "Yfamily", "ZZ", "B1", "10baby", "b31", "b32", "b51", "family", "Z3",
                          "abelian", "free", "fibered", "fifty", "genabelian", "odd"})
        CHECK(find_builtin(n));
    CHECK_FALSE(find_builtin("nope"));
}

TEST_CASE("built-in expectations", "[recipes]") {
    SECTION("abelian (2,3,4) expects torsion [2,12]") {
        Recipe r = builtin_recipe("abelian", {{"p", 2}, {"q", 3}, {"r", 4}});
        bool found = false;
        for (const auto& a : r.assertions)
            if (a.kind == "h1") {
                found = true;
                CHECK(parse_abelian(a.args) == abelian_from_cyclic_orders({2, 12}));
            }
        CHECK(found);
    }
    SECTION("genabelian n=2 expects e = 57 by both closed forms") {
        long long n = 2, g = (n + 6) / 2;
        auto rep = run_builtin("genabelian", {{"n", n}});
        CHECK(rep.chars.e == 57);
        CHECK(rep.chars.e == n * n / 2 + 19 * n / 2 + 36);
        CHECK(rep.chars.e == 12 * g - 6 + (2 * g * g - 5 * g + 3));
        CHECK(rep.exit_code() == 0);
    }
}

TEST_CASE("canonical form round trip on every built-in", "[recipes]") {
    for (const auto& b : builtin_recipes()) {
        INFO(b.name);
        std::string text = builtin_text(b);
        Recipe r = parse_recipe(text);
        std::string canon = serialize_recipe(r);
        Recipe again = parse_recipe(canon);
        CHECK(again == r);
        CHECK(serialize_recipe(again) == canon);
    }
}

TEST_CASE("recipe grammar accepts every directive", "[recipes]") {
    std::string text =
        "# comment\n"
        "recipe demo-1\n"
        "param k default 2 range -3..3\n"
        "block Z as Q\n"
        "block W1 as A\n"
        "copy Q.F as G\n"
        "sum2 A.F1 Q.G map inline(a1,b1,a2,b2) quotient\n"
        "surgery Q.T1 p -1 q k dir m^1 l^0\n"
        "fill Q.F\n"
        "blowup Q on F\n"
        "rename Q y yy\n"
        "assert word_equals yy yy\n"
        "assert identity e = 6+4+4+1\n"
        "assert e_sigma 15 -7 requires exact\n";
    Recipe r = parse_recipe(text);
    CHECK(r.name == "demo-1");
    REQUIRE(r.params.size() == 1);
    CHECK(r.params[0].lo == -3);
    CHECK(r.steps.size() == 8);
    CHECK(r.assertions.size() == 3);
    CHECK(parse_recipe(serialize_recipe(r)) == r);
}

TEST_CASE("recipe parse errors carry line and column", "[recipes]") {
    expect_parse_error("block Z as Q\n", 1, 1);
    expect_parse_error("recipe a\nblok Z as Q\n", 2, 1);
    expect_parse_error("recipe a\nblock Z as Q\nsurgery Q.T1 p 1 q 1 dir m^1 l^0 extra\n", 3, 34);
    expect_parse_error("recipe a\nblock Z as Q\nassert nonsense 1\n", 3, 8);
    expect_parse_error("recipe a\nparam k default x\n", 2, 17);
    expect_parse_error("recipe a\nblock Z as Q\nsum2 Q.F Q.F map inline(a,b\n", 3, 24);
}

TEST_CASE("run_recipe examples", "[recipes]") {
    SECTION("cool") {
        auto r = run_builtin("cool");
        REQUIRE(r.chars.certificate);
        CHECK(r.chars.certificate->claim == Claim::Trivial);
        CHECK(r.chars.e == 6);
        CHECK(r.chars.sigma == -2);
        REQUIRE(r.chars.freedman);
        CHECK(*r.chars.freedman == FreedmanType{1, 3});
        CHECK(r.exit_code() == 0);
    }
    SECTION("abelian with zero exponents is Z^3") {
        auto r = run_builtin("abelian", {{"p", 0}, {"q", 0}, {"r", 0}});
        REQUIRE(r.chars.certificate);
        CHECK(claim_name(*r.chars.certificate) == "free-abelian-rank-3");
        CHECK(r.exit_code() == 0);
    }
    SECTION("Yfamily n=2") {
        auto r = run_builtin("Yfamily", {{"n", 2}});
        CHECK(r.chars.certificate->claim == Claim::Trivial);
        CHECK(r.exit_code() == 0);
    }
}

TEST_CASE("assertion outcomes and exit codes", "[recipes]") {
    std::string base = "recipe t\nblock Z as Q\nfill Q.F\n";
    SECTION("pass") {
        auto r = run_recipe_text(base + "assert h1 Z^6\nassert e_sigma 6 -2\nassert word_trivial [x,a1]\n");
        CHECK(r.exit_code() == 0);
    }
    SECTION("fail") {
        auto r = run_recipe_text(base + "assert e_sigma 6 -3\n");
        CHECK(r.exit_code() == 1);
        CHECK(r.assertions[0].outcome == Outcome::Fail);
    }
    SECTION("unknown under a starved budget") {
        RunOptions opt;
        opt.budget.max_cosets = 1;
        auto r = run_recipe(builtin_recipe("cool"), opt);
        CHECK(r.exit_code() == 2);
        CHECK(find_assertion(r, "pi1_certificate")->outcome == Outcome::Unknown);
    }
    SECTION("word_trivial fails on a homologically nontrivial word") {
        auto r = run_recipe_text(base + "assert word_trivial x\n");
        CHECK(r.exit_code() == 1);
    }
    SECTION("requires exact on an upper-bound model is unknown") {
        auto r = run_recipe_text(base + "assert pi1 free-abelian 6 requires exact\n");
        CHECK(r.exit_code() == 2);
    }
    SECTION("identity assertions use exact rationals") {
        auto r = run_recipe_text(base + "assert identity chi_h = (e+sigma)/4\nassert identity c1sq = 2*e+3*sigma\n");
        CHECK(r.exit_code() == 0);
        auto bad = run_recipe_text(base + "assert identity chi_h = 2/3\n");
        CHECK(bad.exit_code() == 1);
    }
}

TEST_CASE("runtime recipe errors", "[recipes]") {
    CHECK_THROWS_AS(run_recipe_text("recipe t\nblock Q9 as Q\n"), std::exception);
    CHECK_THROWS_AS(run_recipe_text("recipe t\nblock Z as Q\nsurgery Q.T9 p 1 q 1 dir m^1 l^0\n"), std::exception);
    CHECK_THROWS_AS(run_builtin("free", {{"n", 9}}), std::exception);
    CHECK_THROWS_AS(run_builtin("free", {{"zz", 1}}), std::exception);
}

TEST_CASE("reports are deterministic", "[recipes][report]") {
    for (const char* name : {"cool", "ZZ", "abelian", "genabelian"}) {
        auto a = report_json(run_builtin(name)).dump();
        auto b = report_json(run_builtin(name)).dump();
        CHECK(a == b);
    }
    auto j = report_json(run_builtin("abelian"));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    std::vector<std::string> expected{"recipe", "params", "model",  "level", "exactness", "steps",    "e",
                                      "sigma",  "b1",     "h1",     "b2",    "chi_h",     "chi_h_integral",
                                      "c1sq",   "freedman", "certificate", "assertions", "budget", "exit_code"};
    CHECK(keys == expected);
    CHECK(j["h1"]["torsion"] == Json::array({2, 12}));
    CHECK_FALSE(has_float(j));
}

TEST_CASE("family grid matches its closed forms", "[recipes][grid]") {
    for (long long m = 0; m <= 3; ++m)
        for (long long n = 0; n <= 3; ++n) {
            auto r = run_builtin("family", {{"m", m}, {"n", n}});
            INFO("m=" << m << " n=" << n);
            CHECK(r.exit_code() == 0);
            REQUIRE(r.chars.freedman);
            CHECK(*r.chars.freedman == FreedmanType{1 + 2 * m + 2 * n, 3 + 6 * m + 4 * n});
        }
}
