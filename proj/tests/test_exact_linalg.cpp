#include <robin/exact_linalg.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace robin;

TEST_CASE("bareiss and gauss agree on random rational systems", "[linalg]") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> coef(-9, 9), den(1, 7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 6;
        DenseMatrix<Rat> a(n, n);
        std::vector<Rat> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a(i, j) = Rat(coef(rng), den(rng));
            b[i] = Rat(coef(rng), den(rng));
        }
        std::vector<Rat> xb;
        bool singular = false;
        try {
            xb = bareiss_solve(a, b);
        } catch (const SingularMatrix&) {
            singular = true;
        }
        if (singular) {
            REQUIRE_THROWS_AS(gauss_solve(a, b), SingularMatrix);
            continue;
        }
        REQUIRE(gauss_solve(a, b) == xb);
        for (std::size_t i = 0; i < n; ++i) {  // exact residual
            Rat s(0);
            for (std::size_t j = 0; j < n; ++j) s += a(i, j) * xb[j];
            REQUIRE(s == b[i]);
        }
    }
}

TEST_CASE("hilbert system solved exactly", "[linalg]") {
    const std::size_t n = 8;
    DenseMatrix<Rat> h(n, n);
    std::vector<Rat> b(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            h(i, j) = Rat(1, static_cast<long>(i + j + 1));
            b[i] += h(i, j);  // exact solution is all-ones
        }
    }
    const std::vector<Rat> x = bareiss_solve(h, b);
    for (const Rat& xi : x) REQUIRE(xi == 1);
}

TEST_CASE("singular matrices are detected", "[linalg]") {
    DenseMatrix<Rat> a(2, 2);
    a(0, 0) = Rat(1); a(0, 1) = Rat(2);
    a(1, 0) = Rat(2); a(1, 1) = Rat(4);
    const std::vector<Rat> b{Rat(1), Rat(1)};
    REQUIRE_THROWS_AS(bareiss_solve(a, b), SingularMatrix);
    REQUIRE_THROWS_AS(gauss_solve(a, b), SingularMatrix);
}

TEST_CASE("zero pivot with later nonzero row is handled", "[linalg]") {
    DenseMatrix<Rat> a(3, 3);
    a(0, 0) = Rat(0); a(0, 1) = Rat(1); a(0, 2) = Rat(0);
    a(1, 0) = Rat(1); a(1, 1) = Rat(0); a(1, 2) = Rat(0);
    a(2, 0) = Rat(0); a(2, 1) = Rat(0); a(2, 2) = Rat(3);
    const std::vector<Rat> b{Rat(2), Rat(5), Rat(6)};
    const auto x = bareiss_solve(a, b);
    REQUIRE(x == std::vector<Rat>{Rat(5), Rat(2), Rat(2)});
    REQUIRE(gauss_solve(a, b) == x);
}

TEST_CASE("gauss solver is generic over the scalar type", "[linalg]") {
    DenseMatrix<double> a(2, 2);
    a(0, 0) = 2.0; a(0, 1) = 1.0;
    a(1, 0) = 1.0; a(1, 1) = 3.0;
    const auto x = gauss_solve(a, std::vector<double>{3.0, 5.0});
    REQUIRE_THAT(x[0], Catch::Matchers::WithinAbs(0.8, 1e-14));
    REQUIRE_THAT(x[1], Catch::Matchers::WithinAbs(1.4, 1e-14));
}
