#include <robin/quadrature.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace robin;

namespace {

// brute-force oracle for the singular log integral: trapezoid rule on the
// substituted variable x = 2 sin(phi), 10^6 panels
double trapezoid_log_oracle() {
    const long n = 1000000;
    const double lo = std::asin(0.5), hi = std::numbers::pi / 2;
    const double h = (hi - lo) / n;
    double s = 0.5 * (std::log(2.0 * std::sin(lo)) + std::log(2.0 * std::sin(hi)));
    for (long i = 1; i < n; ++i) s += std::log(2.0 * std::sin(lo + i * h));
    return s * h;
}

IntegrandSpec arcsine_spec() {
    IntegrandSpec s;
    s.f = [](double x) { return 1.0 / std::sqrt((1.0 - x) * (1.0 + x)); };
    s.a = -1.0;
    s.b = 1.0;
    s.singularities = {{-1.0, SingularityKind::inverse_sqrt_endpoint},
                       {1.0, SingularityKind::inverse_sqrt_endpoint}};
    return s;
}

IntegrandSpec log_case_spec() {
    IntegrandSpec s;
    s.f = [](double x) { return std::log(x) / std::sqrt((2.0 - x) * (2.0 + x)); };
    s.a = 1.0;
    s.b = 2.0;
    s.singularities = {{2.0, SingularityKind::inverse_sqrt_endpoint}};
    return s;
}

IntegrandSpec capacity_spec() {  // log|x| against the arcsine density of [-2,2]
    IntegrandSpec s;
    s.f = [](double x) {
        return std::log(std::abs(x)) / (std::numbers::pi * std::sqrt((2.0 - x) * (2.0 + x)));
    };
    s.a = -2.0;
    s.b = 2.0;
    s.singularities = {{-2.0, SingularityKind::inverse_sqrt_endpoint},
                       {2.0, SingularityKind::inverse_sqrt_endpoint},
                       {0.0, SingularityKind::log_point}};
    return s;
}

constexpr double kLogCaseValue = 0.5074708032048268;  // frozen from the oracle

}  // namespace

TEST_CASE("arcsine integral equals pi", "[quadrature]") {
    const auto res = integrate(arcsine_spec(), 1e-10);
    REQUIRE_THAT(res.value, Catch::Matchers::WithinAbs(std::numbers::pi, 1e-10));
    REQUIRE(res.error_estimate <= 1e-10);
    REQUIRE(res.evaluations > 0);
}

TEST_CASE("log times inverse-sqrt endpoint matches the trapezoid oracle", "[quadrature]") {
    const double oracle = trapezoid_log_oracle();
    REQUIRE_THAT(oracle, Catch::Matchers::WithinAbs(kLogCaseValue, 5e-13));
    const auto res = integrate(log_case_spec(), 1e-10);
    REQUIRE_THAT(res.value, Catch::Matchers::WithinAbs(oracle, 1e-10));
    REQUIRE(res.error_estimate > 0.0);  // rule is not exact here
}

TEST_CASE("equilibrium potential of [-2,2] at 0 vanishes", "[quadrature]") {
    // capacity of [-2,2] is 1, so int log|x| dmu_arcsine = 0
    const auto res = integrate(capacity_spec(), 1e-10);
    REQUIRE_THAT(res.value, Catch::Matchers::WithinAbs(0.0, 1e-9));
}

TEST_CASE("falsely declared singularities keep polynomials exact", "[quadrature]") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> cu(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        double c[5];
        for (double& ci : c) ci = cu(rng);
        const double a = -1.0 - trial * 0.1, b = 0.7 + trial * 0.05;
        IntegrandSpec s;
        s.f = [&c](double x) {
            return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4])));
        };
        s.a = a;
        s.b = b;
        s.singularities = {{a, SingularityKind::inverse_sqrt_endpoint},
                           {b, SingularityKind::inverse_sqrt_endpoint},
                           {0.5 * (a + b), SingularityKind::log_point}};
        auto antideriv = [&c](double x) {
            return x * (c[0] + x * (c[1] / 2 + x * (c[2] / 3 + x * (c[3] / 4 + x * c[4] / 5))));
        };
        const double exact = antideriv(b) - antideriv(a);
        REQUIRE_THAT(integrate(s, 1e-10).value, Catch::Matchers::WithinAbs(exact, 1e-10));
    }
}

TEST_CASE("declared removable point uses the limit value", "[quadrature]") {
    IntegrandSpec s;
    s.f = [](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; };
    s.a = -1.0;
    s.b = 2.0;
    s.singularities = {{0.0, SingularityKind::removable_point, 1.0}};
    const auto res = integrate(s, 1e-12);
    REQUIRE_THAT(res.value, Catch::Matchers::WithinAbs(2.5514960471698779, 1e-12));  // Si(1)+Si(2)
}

TEST_CASE("even integrands: interval symmetry", "[quadrature]") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> cu(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double a0 = cu(rng), a1 = cu(rng);
        const double r = 0.5 + trial * 0.3;
        auto f = [a0, a1](double x) { return a0 * std::cos(x) + a1 * x * x; };
        IntegrandSpec whole{f, -r, r, {}, {}};
        IntegrandSpec half{f, 0.0, r, {}, {}};
        const double tol = 1e-11;
        REQUIRE_THAT(integrate(whole, tol).value,
                     Catch::Matchers::WithinAbs(2.0 * integrate(half, tol).value, 2.0 * tol));
    }
}

TEST_CASE("monotone refinement on the oracle corpus", "[quadrature]") {
    struct Case {
        IntegrandSpec spec;
        double oracle;
    };
    const Case corpus[] = {{arcsine_spec(), std::numbers::pi},
                           {log_case_spec(), kLogCaseValue},
                           {capacity_spec(), 0.0}};
    for (const Case& c : corpus) {
        double prev_err = std::numeric_limits<double>::infinity();
        for (double tol = 1e-6; tol >= 0.9e-10; tol *= 0.5) {
            const double err = std::abs(integrate(c.spec, tol).value - c.oracle);
            REQUIRE(err <= prev_err + 1e-15);
            prev_err = err;
        }
    }
}

TEST_CASE("undeclared singularities are reported", "[quadrature]") {
    IntegrandSpec s;
    s.f = [](double x) { return 1.0 / std::abs(x - 0.5); };
    s.a = 0.0;
    s.b = 1.0;
    REQUIRE_THROWS_AS(integrate(s, 1e-10), UndeclaredSingularity);
}

TEST_CASE("exhausted budget reports the best value", "[quadrature]") {
    IntegrandSpec s = capacity_spec();
    QuadratureOptions opts;
    opts.max_evaluations = 900;
    try {
        integrate(s, 1e-13, opts);
        FAIL("expected ToleranceNotMet");
    } catch (const ToleranceNotMet& e) {
        REQUIRE(e.achieved_estimate > 1e-13);
        REQUIRE_THAT(e.best_value, Catch::Matchers::WithinAbs(0.0, 1e-2));
    }
}

TEST_CASE("input validation", "[quadrature]") {
    IntegrandSpec s = arcsine_spec();
    REQUIRE_THROWS_AS(integrate(s, 1e-15), std::invalid_argument);  // tol below the floor
    s.singularities.push_back({0.3, SingularityKind::inverse_sqrt_endpoint});
    REQUIRE_THROWS_AS(integrate(s, 1e-10), std::invalid_argument);  // interior inverse-sqrt
    IntegrandSpec bad = arcsine_spec();
    bad.singularities[0].location = -7.0;  // outside [a, b]
    REQUIRE_THROWS_AS(integrate(bad, 1e-10), std::invalid_argument);
    IntegrandSpec empty;
    empty.a = 1.0;
    empty.b = 0.0;
    empty.f = [](double) { return 0.0; };
    REQUIRE_THROWS_AS(integrate(empty, 1e-10), std::invalid_argument);
}

TEST_CASE("density wrapper declares the structure", "[quadrature]") {
    // arcsine density against 1 integrates to 1 for any r
    for (double r : {0.5, 1.0, 3.0}) {
        const auto dens = [r](double x) {
            return 1.0 / (std::numbers::pi * std::sqrt((r - x) * (r + x)));
        };
        const auto res = integrate_against_density(
            dens, DensityKind::arcsine, r, [](double) { return 1.0; }, 1e-10);
        REQUIRE_THAT(res.value, Catch::Matchers::WithinAbs(1.0, 1e-10));
    }
}
