#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/verify.hpp"

using namespace detlab;

namespace {

const Registry& reg() {
    static Registry r = Registry::load_default();
    return r;
}

} // namespace

TEST_CASE("verify I03 over its default grid: all match") {
    VerifySummary s = verify_identity(reg(), "I03");
    CHECK(s.total == 4 * 8);   // r in 1..4, n in 1..8
    CHECK(s.mismatches == 0);
    for (const auto& row : s.rows) {
        CHECK(row.match);
        CHECK(row.engine == "bareiss");
        CHECK(row.fallbacks == 0);
    }
}

TEST_CASE("verify I04 at a single point reproduces the box count") {
    GridOverride ov;
    ov.n_lo = 2;
    ov.n_hi = 2;
    ov.domains = {{"a", 2, 2}, {"b", 2, 2}};
    VerifySummary s = verify_identity(reg(), "I04", &ov);
    REQUIRE(s.rows.size() == 1);
    CHECK(s.rows[0].match);
    CHECK(s.rows[0].lhs == "20");
    CHECK(s.rows[0].rhs == "20");
    CHECK(s.rows[0].point_text() == "n=2;a=2;b=2");
}

TEST_CASE("verify I24 at n=2: both sides are the elementary symmetric e2") {
    GridOverride ov;
    ov.n_lo = 2;
    ov.n_hi = 2;
    VerifySummary s = verify_identity(reg(), "I24", &ov);
    REQUIRE(s.rows.size() == 1);
    CHECK(s.rows[0].match);
    CHECK(s.rows[0].lhs == "e2");
    CHECK(MultiLaurent::parse({"e1", "e2"}, s.rows[0].lhs) ==
          MultiLaurent::var({"e1", "e2"}, 1));
}

TEST_CASE("verify the ct and integral identities") {
    VerifySummary dyson = verify_identity(reg(), "I08");
    CHECK(dyson.total == 5);
    CHECK(dyson.mismatches == 0);
    for (const auto& row : dyson.rows) CHECK(row.engine == "ct-expand");

    VerifySummary v2 = verify_identity(reg(), "I09");
    CHECK(v2.total == 6);
    CHECK(v2.mismatches == 0);

    VerifySummary selberg = verify_identity(reg(), "I10");
    CHECK(selberg.total == 5);
    CHECK(selberg.mismatches == 0);
    for (const auto& row : selberg.rows) CHECK(row.engine == "moment");
}

TEST_CASE("verify_all over a restricted config is deterministic across runs and jobs") {
    OverrideMap ov = parse_overrides(
        "I16|n<=3|r=1..2 x=0..1 y=0..1\n"
        "I17|n<=3|r=1..2 s=1..2\n"
        "I20|n<=3|r=1..2\n"
        "I21|n<=3|r=1..2\n"
        "I01|n<=4|a=0..2 b=0..2\n"
        "I02|n<=4|r=1..2 x=0..1 y=0..1\n");
    // shrink the rest uniformly so the test stays quick
    for (const auto& spec : reg().all())
        if (!ov.count(spec.id) && spec.kind == CheckKind::Determinant) {
            GridOverride g;
            g.n_hi = 4;
            ov[spec.id] = g;
        }
    VerifySummary serial = verify_all(reg(), ov, 1);
    VerifySummary parallel = verify_all(reg(), ov, 2);
    CHECK(serial.render(false) == parallel.render(false));
    CHECK(serial.mismatches == 0);
    CHECK(serial.total > 100);
    // rows arrive ordered by id then point
    for (size_t t = 1; t < serial.rows.size(); ++t) {
        const auto& a = serial.rows[t - 1];
        const auto& b = serial.rows[t];
        CHECK((a.id < b.id || (a.id == b.id && a.point <= b.point)));
    }
}

TEST_CASE("calibration identities report findings instead of failures") {
    GridOverride ov;
    ov.n_hi = 4;
    VerifySummary s = verify_identity(reg(), "I05", &ov);
    CHECK(s.mismatches == 0);                 // calibration rows never fail the run
    CHECK(s.calibration_mismatches > 0);      // the literal formula disagrees
    REQUIRE(!s.findings.empty());
    CHECK(s.findings[0].find("id=I05") != std::string::npos);
    CHECK(s.findings[0].find("verdict=no-constant-correction") != std::string::npos);
    std::string rendered = s.render(false);
    CHECK(rendered.find("# finding id=I05") != std::string::npos);
}

TEST_CASE("a doctored catalog with a wrong closed form is flagged") {
    std::string text = Registry::default_catalog_text();
    size_t pos = text.find("I06|int|det|binom(i+j,i)|n<=8|-|product:1^1|-|2.1");
    REQUIRE(pos != std::string::npos);
    std::string doctored = text;
    doctored.replace(pos, std::string("I06|int|det|binom(i+j,i)|n<=8|-|product:1^1").size(),
                     "I06|int|det|binom(i+j,i)|n<=8|-|product:2^binom(n,2)");
    Registry bad = Registry::from_text(doctored);
    VerifySummary s = verify_identity(bad, "I06");
    CHECK(s.mismatches == 7);   // every n >= 2 disagrees with 2^binom(n,2)
    CHECK(!s.rows[1].match);
}

TEST_CASE("report rows render with the documented fields") {
    GridOverride ov;
    ov.n_lo = 3;
    ov.n_hi = 3;
    VerifySummary s = verify_identity(reg(), "I06", &ov);
    REQUIRE(s.rows.size() == 1);
    std::string line = s.rows[0].render(false);
    CHECK(line == "id=I06 point=n=3 match=yes engine=bareiss fallbacks=0 ms=- lhs=1 rhs=1");
    std::string timed = s.rows[0].render(true);
    CHECK(timed.find("ms=-") == std::string::npos);
    std::string footer = s.render(false);
    CHECK(footer.find("# total=1 mismatches=0 calibration-mismatches=0") !=
          std::string::npos);
}

TEST_CASE("override parsing rejects malformed records") {
    CHECK_THROWS_AS(parse_overrides("I01|n<=4"), domain_error);
    CHECK_THROWS_AS(parse_overrides("I01|bad|b=1..2"), domain_error);
    CHECK_THROWS_AS(parse_overrides("I01|n<=4|nonsense"), domain_error);
    OverrideMap ok = parse_overrides("# comment\nI01|n=3|a=1 b=0..2\n");
    CHECK(ok.at("I01").n_lo == 3);
    CHECK(ok.at("I01").n_hi == 3);
    CHECK(ok.at("I01").domains[0].name == "a");
    CHECK(ok.at("I01").domains[0].lo == 1);
    CHECK(ok.at("I01").domains[0].hi == 1);
}
