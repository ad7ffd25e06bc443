#include <robin/cli_support.hpp>
#include <robin/height_bounds.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace robin;
using Catch::Matchers::WithinAbs;

TEST_CASE("reference constants", "[height]") {
    REQUIRE_THAT(reference_schinzel(), WithinAbs(0.24061, 1e-5));
    REQUIRE_THAT(reference_schinzel(), WithinAbs(0.2406059125298017, 1e-15));
    REQUIRE_THAT(reference_schinzel(), WithinAbs(0.5 * std::log((1 + std::sqrt(5.0)) / 2), 0.0));

    REQUIRE_THAT(reference_bombieri_zannier({2}), WithinAbs(0.115525, 1e-5));
    REQUIRE_THAT(reference_bombieri_zannier({2, 3}), WithinAbs(0.2528510661768379, 1e-14));
    REQUIRE_THROWS_AS(reference_bombieri_zannier({}), std::invalid_argument);
    REQUIRE_THROWS_AS(reference_bombieri_zannier({6}), std::invalid_argument);

    // the two published decimals: 0.213139 is the archimedean constant
    // 7 zeta(3)/(4 pi^2); 0.231049 is the p = 2 term (1/2) 2 log2/(2^2-1)
    REQUIRE_THAT(reference_fp({}, true), WithinAbs(0.213139, 1e-5));
    REQUIRE_THAT(reference_fp({2}, false), WithinAbs(0.231049, 1e-5));
    REQUIRE_THAT(reference_fp({2}, false), WithinAbs(std::log(2.0) / 3.0, 1e-15));
    REQUIRE_THAT(reference_fp({2}, true), WithinAbs(0.444188, 1e-5));
    REQUIRE(reference_fp({}, false) == 0.0);
    REQUIRE_THROWS_AS(reference_fp({9}, false), std::invalid_argument);
}

TEST_CASE("global bound: worked composite example", "[height]") {
    const std::vector<PlaceSpec> places{
        PlaceSpec::archimedean(RealIntervalSpec(2.0)),
        PlaceSpec::padic(LocalFieldSpec(2), -1),
    };
    const BoundReport report = global_lower_bound(places);
    REQUIRE_THAT(report.total, WithinAbs(0.499562, 1e-5));
    REQUIRE(report.per_place.size() == 2);
    REQUIRE_THAT(report.per_place[0].contribution, WithinAbs(0.239632, 1e-5));
    REQUIRE_THAT(report.per_place[1].contribution, WithinAbs(0.25993, 1e-5));
    REQUIRE(report.per_place[1].v_delta_exact.has_value());
    REQUIRE(report.per_place[1].v_delta_exact->coeff == Rat(3, 4));
    REQUIRE(!report.advisory.empty());
    // total recomputes from the per-place contributions
    double recomputed = 0.0;
    for (const auto& pr : report.per_place) {
        recomputed += pr.contribution;
        REQUIRE_THAT(pr.contribution,
                     WithinAbs(0.5 * rat_to_double(pr.weight) * pr.v_delta, 1e-15));
    }
    REQUIRE_THAT(report.total, WithinAbs(recomputed, 1e-12));
    // references carried along
    bool has_fp = false;
    for (const auto& [name, value] : report.references)
        if (name == "fp") {
            has_fp = true;
            REQUIRE_THAT(value, WithinAbs(0.444188, 1e-5));
        }
    REQUIRE(has_fp);
}

TEST_CASE("global bound: single real place and empty list", "[height]") {
    const BoundReport one =
        global_lower_bound({PlaceSpec::archimedean(RealIntervalSpec(1.0))});
    REQUIRE_THAT(one.total, WithinAbs(0.346574, 1e-5));
    const BoundReport empty = global_lower_bound({});
    REQUIRE(empty.total == 0.0);
    REQUIRE(empty.per_place.empty());
    REQUIRE(empty.advisory.empty());
}

TEST_CASE("global bound: validation errors", "[height]") {
    REQUIRE_THROWS_AS(global_lower_bound({PlaceSpec::padic(LocalFieldSpec(2), -1),
                                          PlaceSpec::padic(LocalFieldSpec(2), 0)}),
                      DuplicatePrimes);
    REQUIRE_THROWS_AS(global_lower_bound({PlaceSpec::archimedean(RealIntervalSpec(1.0)),
                                          PlaceSpec::archimedean(RealIntervalSpec(2.0))}),
                      std::invalid_argument);
    PlaceSpec bad_weight = PlaceSpec::padic(LocalFieldSpec(3), -1, Rat(2));
    REQUIRE_THROWS_AS(global_lower_bound({bad_weight}), std::invalid_argument);
    REQUIRE_THROWS_AS(RealIntervalSpec(-2.0), std::domain_error);
}

TEST_CASE("global bound: additivity and weight linearity", "[height]") {
    const std::vector<PlaceSpec> a{PlaceSpec::archimedean(RealIntervalSpec(2.0))};
    const std::vector<PlaceSpec> b{PlaceSpec::padic(LocalFieldSpec(2), -1),
                                   PlaceSpec::padic(LocalFieldSpec(3), -2)};
    std::vector<PlaceSpec> both = a;
    both.insert(both.end(), b.begin(), b.end());
    REQUIRE_THAT(global_lower_bound(both).total,
                 WithinAbs(global_lower_bound(a).total + global_lower_bound(b).total, 1e-12));

    std::vector<PlaceSpec> halved = both;
    for (auto& p : halved) p.weight = Rat(1, 2);
    REQUIRE(global_lower_bound(halved).total == 0.5 * global_lower_bound(both).total);
}

TEST_CASE("padic place dominates its whole-line limit term", "[height]") {
    // (1/2) V_delta(p^n Z_p) >= the corresponding term of the whole-line
    // bound, with equality only in the n -> -infinity limit
    for (long p : {2L, 3L, 5L, 7L}) {
        const LocalFieldSpec f(p);
        for (int n = 0; n >= -6; --n) {
            REQUIRE(robin_constant_padic(f, n).coeff > robin_limit(f).coeff);
        }
        REQUIRE_THAT(0.5 * robin_limit(f).to_double(),
                     WithinAbs(reference_fp({p}, false), 1e-15));
    }
}

TEST_CASE("report JSON round-trips byte-identically", "[height]") {
    const std::vector<PlaceSpec> places{
        PlaceSpec::archimedean(RealIntervalSpec(2.0)),
        PlaceSpec::padic(LocalFieldSpec(2), -1, Rat(1, 2)),
    };
    const BoundReport report = global_lower_bound(places);
    const std::string out = cli::dump_canonical(cli::report_to_json(places, report));
    const auto parsed = cli::ordered_json::parse(out);
    REQUIRE(cli::dump_canonical(parsed) == out);
    REQUIRE(parsed["schema_version"] == "1");
    REQUIRE(parsed["places"][1]["v_delta_exact"]["coeff"] == "3/4");
    REQUIRE(parsed["places"][1]["weight"] == "1/2");
    REQUIRE(parsed["references"].contains("bombieri_zannier"));
}

TEST_CASE("place config parsing", "[height]") {
    std::istringstream good(
        "# comment\n"
        "real r=2 weight=1\n"
        "\n"
        "padic p=2 n=-1 weight=1/2\n"
        "padic p=3 e=2 f=1 n=0\n");
    const auto places = cli::parse_place_config(good);
    REQUIRE(places.size() == 3);
    REQUIRE(places[0].real.has_value());
    REQUIRE(places[0].real->r == 2.0);
    REQUIRE(places[1].nonarch->field.p == 2);
    REQUIRE(places[1].weight == Rat(1, 2));
    REQUIRE(places[2].nonarch->field.e == 2);

    auto expect_error = [](const char* text, int line) {
        std::istringstream in(text);
        try {
            cli::parse_place_config(in);
            FAIL("expected ConfigParseError");
        } catch (const cli::ConfigParseError& e) {
            REQUIRE(e.line == line);
        }
    };
    expect_error("real r=2\nbogus r=1\n", 2);
    expect_error("real\n", 1);
    expect_error("padic p=4 n=-1\n", 1);        // 4 is not prime
    expect_error("real r=2 weight=0.5\n", 1);   // weights are fractions
    expect_error("real r=-1\n", 1);
    expect_error("padic p=2 n=-1 z=3\n", 1);
    expect_error("real r=2 r=3\n", 1);
}

TEST_CASE("format_double is stable under parse and reprint", "[height]") {
    for (double x : {0.4995621557028338, 1.0 / 3.0, 2.0, 1e-13, -0.213139, 123456.789}) {
        const std::string s = cli::format_double(x);
        const double back = std::stod(s);
        REQUIRE(cli::format_double(back) == s);
    }
}
