#include <catch2/catch_amalgamated.hpp>

#include "lutcalc/report.hpp"
#include "support.hpp"

using namespace lutcalc;

namespace {

ScanOptions cool_prefix() {
    ScanOptions opt;
    opt.fixed = {{"T1'", 1, 'm'}, {"T1", -1, 'm'}, {"T2", -1, 'l'}, {"T2'", 1, 'l'}};
    opt.tori = {"T3", "T4"};
    return opt;
}

}  // namespace

TEST_CASE("scan over T3 and T4 contains the cool tuple", "[scan]") {
    auto rows = geography_scan(cool_prefix());
    CHECK(rows.size() <= 25);
    CHECK(rows.size() >= 2);
    bool found = false;
    for (const auto& r : rows) {
        CHECK(r.e == 6);
        CHECK(r.sigma == -2);
        CHECK(r.c1sq == 6);
        CHECK(r.chi_h == 1);
        if (r.certificate.claim == Claim::Trivial) CHECK(r.h1.trivial());
        std::string c = format_choices(r.choices);
        if (c == "T1'=1/1:m T1=-1/1:m T2=-1/1:l T2'=1/1:l T3=-1/1:l T4=-1/1:m") {
            found = true;
            CHECK(r.certificate.claim == Claim::Trivial);
        }
    }
    CHECK(found);
}

TEST_CASE("trivial fillings give H1 = Z^6", "[scan]") {
    ScanOptions opt;
    opt.ks = {0};
    auto rows = geography_scan(opt);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].h1.free_rank == 6);
    CHECK(rows[0].h1.torsion.empty());
    CHECK(rows[0].choices.size() == 6);
}

TEST_CASE("scan dedups and respects the range bound", "[scan]") {
    ScanOptions opt = cool_prefix();
    opt.ks = {-1, 0, 1};
    opt.dirs = "m";
    auto rows = geography_scan(opt);
    CHECK(rows.size() <= 9);
    std::set<std::string> seen;
    for (const auto& r : rows) CHECK(seen.insert(format_choices(r.choices)).second);
}

TEST_CASE("scan output does not depend on the worker count", "[scan]") {
    ScanOptions a = cool_prefix(), b = cool_prefix();
    b.jobs = 3;
    auto ra = geography_scan(a), rb = geography_scan(b);
    REQUIRE(ra.size() == rb.size());
    for (size_t i = 0; i < ra.size(); ++i) CHECK(scan_row_json(ra[i]).dump() == scan_row_json(rb[i]).dump());
}

TEST_CASE("scan rejects bad input", "[scan]") {
    ScanOptions opt;
    opt.tori = {"T9"};
    CHECK_THROWS(geography_scan(opt));
    ScanOptions clash = cool_prefix();
    clash.tori = {"T1", "T3"};
    CHECK_THROWS(geography_scan(clash));
    ScanOptions arith;
    arith.base = "Sym2Arith";
    CHECK_THROWS(geography_scan(arith));
}
