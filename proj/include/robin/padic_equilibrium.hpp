#pragma once

#include <robin/exact_linalg.hpp>
#include <robin/local_field.hpp>
#include <robin/rational.hpp>
#include <robin/scaled_log.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

// Exact equilibrium theory of the balls pi^n O_K. Everything here is rational
// arithmetic over log p; no floating point.

namespace robin {

/// log of the logarithmic capacity of pi^n O_K:
///   (n + 1/(q-1)) * log|pi|, i.e. coefficient -(n + 1/(q-1))/e over log p.
inline ScaledLog capacity_ball(const LocalFieldSpec& field, long n) {
    Rat coeff = -(Rat(n) + Rat(1, field.q() - 1)) / field.e;
    return {coeff, field.p};
}

/// log capacity of the shell pi^n O_K^x: (n + q/(q-1)^2) * log|pi|.
inline ScaledLog capacity_shell(const LocalFieldSpec& field, long n) {
    const long q = field.q();
    Rat coeff = -(Rat(n) + Rat(q, (q - 1) * (q - 1))) / field.e;
    return {coeff, field.p};
}

// Equilibrium measure of pi^n O_K. For n >= 0 it is the additive Haar measure
// of the ball (coeffs empty). For n < 0 it is
//   c_0 * (Haar on O_K) + sum_{k=-1..n} c_k * (Haar on the shell pi^k O_K^x),
// stored as coeffs[0] = c_0, coeffs[i] = c_{-i}.
struct PAdicEquilibriumMeasure {
    LocalFieldSpec field;
    int n;
    std::vector<Rat> coeffs;

    bool is_haar() const { return n >= 0; }

    /// c_k for k in {0, -1, ..., n}; only meaningful when n < 0.
    const Rat& c(int k) const {
        if (k > 0 || k < n) throw std::domain_error("PAdicEquilibriumMeasure: k out of range");
        return coeffs[static_cast<std::size_t>(-k)];
    }
};

/// Solves the equal-potential linear system for the shell coefficients of the
/// equilibrium measure of pi^n O_K, n < 0. The solution is certified against
/// the closed form c_0 = (q + q^{2n})/(q+1), nonnegativity and unit mass.
inline PAdicEquilibriumMeasure equilibrium_coefficients(const LocalFieldSpec& field, int n) {
    if (n >= 0) throw std::invalid_argument("equilibrium_coefficients: requires n < 0");
    const long q = field.q();
    const std::size_t dim = static_cast<std::size_t>(-n) + 1;  // unknowns c_0, c_{-1}, ..., c_n
    const auto idx = [](int k) { return static_cast<std::size_t>(-k); };

    DenseMatrix<Rat> a(dim, dim);
    std::vector<Rat> rhs(dim, Rat(0));

    // mass row: c_0 + c_{-1} + ... + c_n = 1
    for (std::size_t j = 0; j < dim; ++j) a(0, j) = 1;
    rhs[0] = 1;

    // potential rows, one per test point pi^k:
    //   c_0/(q-1) - q c_k/(q-1)^2 + sum_{l=k}^{-1} l c_l + sum_{l=n}^{k-1} k c_l = 0
    for (int k = -1; k >= n; --k) {
        const std::size_t row = idx(k);
        a(row, idx(0)) += Rat(1, q - 1);
        a(row, idx(k)) += Rat(-q, (q - 1) * (q - 1));
        for (int l = k; l <= -1; ++l) a(row, idx(l)) += Rat(l);
        for (int l = n; l <= k - 1; ++l) a(row, idx(l)) += Rat(k);
    }

    std::vector<Rat> c = bareiss_solve(a, rhs);

    Rat sum(0);
    for (const Rat& ck : c) {
        if (ck < 0) throw std::logic_error("equilibrium_coefficients: negative coefficient");
        sum += ck;
    }
    if (sum != 1) throw std::logic_error("equilibrium_coefficients: coefficients do not sum to 1");
    const Rat q2n = rat_pow(Rat(q), 2L * n);
    if (c[0] != (Rat(q) + q2n) / (q + 1))
        throw std::logic_error("equilibrium_coefficients: c_0 closed form violated");

    return {field, n, std::move(c)};
}

/// delta-potential of the measure at the test point pi^k (k = 0 means the
/// point 0). Exact closed forms from the equal-potential system.
inline ScaledLog potential_at(const PAdicEquilibriumMeasure& measure, int k) {
    if (measure.is_haar())
        throw std::invalid_argument("potential_at: measure must come from equilibrium_coefficients");
    if (k > 0 || k < measure.n) throw std::domain_error("potential_at: k out of range");
    const long q = measure.field.q();
    Rat over_log_pi;  // potential = over_log_pi * log|pi|
    if (k == 0) {
        over_log_pi = -measure.c(0) / (q - 1);
    } else {
        over_log_pi = -Rat(q) * measure.c(k) / ((q - 1) * (q - 1));
        for (int l = k; l <= -1; ++l) over_log_pi += Rat(l) * measure.c(l);
        for (int l = measure.n; l <= k - 1; ++l) over_log_pi += Rat(k) * measure.c(l);
    }
    // log|pi| = -(1/e) log p
    return {-over_log_pi / measure.field.e, measure.field.p};
}

/// delta-Robin constant of pi^n O_K:
///   n >= 0: (n + 1/(q-1))/e * log p      (= -capacity_ball)
///   n <  0: (q + q^{2n}) / ((q^2-1) e) * log p
inline ScaledLog robin_constant_padic(const LocalFieldSpec& field, long n) {
    const long q = field.q();
    if (n >= 0) return -capacity_ball(field, n);
    Rat coeff = (Rat(q) + rat_pow(Rat(q), 2 * n)) / (Rat(q) * q - 1) / field.e;
    return {coeff, field.p};
}

/// Limit of the Robin constants as n -> -infinity: the delta-Robin constant
/// of the whole projective line, q/((q^2-1) e) * log p.
inline ScaledLog robin_limit(const LocalFieldSpec& field) {
    const long q = field.q();
    return {Rat(q, (q * q - 1)) / field.e, field.p};
}

}  // namespace robin
