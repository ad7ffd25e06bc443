#pragma once

#include <robin/local_field.hpp>
#include <robin/padic_equilibrium.hpp>
#include <robin/rational.hpp>
#include <robin/real_equilibrium.hpp>
#include <robin/scaled_log.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Composition of per-place Robin constants into the global height lower bound
//   liminf h(alpha) >= 1/2 sum_v N_v V_delta(E_v)
// plus the classical reference bounds it is compared against.

namespace robin {

struct DuplicatePrimes : std::invalid_argument {
    explicit DuplicatePrimes(long p)
        : std::invalid_argument("duplicate prime " + std::to_string(p) + " across places") {}
};

struct NonArchPlace {
    LocalFieldSpec field;
    int n;  // the place's set is pi^n O_K
};

/// One local condition: a real interval or a p-adic ball, weighted by
/// N_v = [K_v:Q_v]/[K:Q] (1 over the rationals).
struct PlaceSpec {
    std::optional<RealIntervalSpec> real;   // exactly one of these two is set
    std::optional<NonArchPlace> nonarch;
    Rat weight{1};

    static PlaceSpec archimedean(RealIntervalSpec s, Rat w = Rat(1)) {
        PlaceSpec p;
        p.real = s;
        p.weight = std::move(w);
        return p;
    }
    static PlaceSpec padic(LocalFieldSpec field, int n, Rat w = Rat(1)) {
        PlaceSpec p;
        p.nonarch = NonArchPlace{field, n};
        p.weight = std::move(w);
        return p;
    }
};

struct PlaceReport {
    std::string description;
    bool archimedean = false;
    std::optional<ScaledLog> v_delta_exact;  // p-adic places only
    double v_delta = 0.0;
    Rat weight{1};
    double contribution = 0.0;  // weight * v_delta / 2
};

struct BoundReport {
    std::vector<PlaceReport> per_place;
    double total = 0.0;
    std::vector<std::pair<std::string, double>> references;
    std::string advisory;
};

/// 1/2 log((1+sqrt(5))/2), Schinzel's totally-real bound.
inline double reference_schinzel() { return 0.5 * std::log((1.0 + std::sqrt(5.0)) / 2.0); }

/// 1/2 sum_{p in S} log p / (p+1), the Bombieri-Zannier totally-p-adic bound.
inline double reference_bombieri_zannier(const std::set<long>& primes) {
    if (primes.empty())
        throw std::invalid_argument("reference_bombieri_zannier: prime set must be nonempty");
    double s = 0.0;
    for (long p : primes) {
        if (!is_prime(p))
            throw std::invalid_argument("reference_bombieri_zannier: " + std::to_string(p) +
                                        " is not prime");
        s += std::log(static_cast<double>(p)) / (p + 1.0);
    }
    return 0.5 * s;
}

// zeta(3), 30 decimal digits (Apery's constant, standard tables)
inline constexpr double kZeta3 = 1.20205690315959428539973816151;

/// 1/2 sum p log p/(p^2-1), plus 7 zeta(3)/(4 pi^2) when the archimedean
/// place is included: the whole-line / totally-real comparison bound.
inline double reference_fp(const std::set<long>& primes, bool include_infinity) {
    double s = 0.0;
    for (long p : primes) {
        if (!is_prime(p))
            throw std::invalid_argument("reference_fp: " + std::to_string(p) + " is not prime");
        const double pd = static_cast<double>(p);
        s += pd * std::log(pd) / (pd * pd - 1.0);
    }
    s *= 0.5;
    if (include_infinity)
        s += 7.0 * kZeta3 / (4.0 * std::numbers::pi * std::numbers::pi);
    return s;
}

/// Evaluates the height lower bound over a list of places. At most one
/// archimedean place; primes must be distinct across the p-adic places.
/// Exact p-adic energies are converted to floating point only here, at the
/// final summation.
inline BoundReport global_lower_bound(const std::vector<PlaceSpec>& places,
                                      double tol = kDefaultQuadTol) {
    BoundReport report;
    std::set<long> primes;
    bool has_arch = false;

    for (const PlaceSpec& place : places) {
        if (!(place.weight > 0) || place.weight > 1)
            throw std::invalid_argument("global_lower_bound: weight must lie in (0, 1]");
        PlaceReport pr;
        pr.weight = place.weight;
        if (place.real) {
            if (has_arch)
                throw std::invalid_argument("global_lower_bound: at most one archimedean place");
            has_arch = true;
            pr.archimedean = true;
            char rbuf[40];
            std::snprintf(rbuf, sizeof rbuf, "%.12g", place.real->r);
            pr.description = std::string("real r=") + rbuf;
            pr.v_delta = robin_constant_real(*place.real, tol);
        } else if (place.nonarch) {
            const auto& na = *place.nonarch;
            if (!primes.insert(na.field.p).second) throw DuplicatePrimes(na.field.p);
            pr.description = "padic p=" + std::to_string(na.field.p) +
                             " e=" + std::to_string(na.field.e) +
                             " f=" + std::to_string(na.field.f) + " n=" + std::to_string(na.n);
            pr.v_delta_exact = robin_constant_padic(na.field, na.n);
            pr.v_delta = pr.v_delta_exact->to_double();
        } else {
            throw std::invalid_argument("global_lower_bound: empty place spec");
        }
        pr.contribution = 0.5 * rat_to_double(pr.weight) * pr.v_delta;
        report.total += pr.contribution;
        report.per_place.push_back(std::move(pr));
    }

    report.references.emplace_back("schinzel", reference_schinzel());
    if (!primes.empty())
        report.references.emplace_back("bombieri_zannier", reference_bombieri_zannier(primes));
    report.references.emplace_back("fp", reference_fp(primes, has_arch));

    if (!places.empty()) {
        // Every supported non-archimedean set is a proper ball (never all of
        // Q_p), so the easy sufficient condition for A_S to be infinite does
        // not apply; the bound itself holds regardless.
        report.advisory =
            "note: no place equals Q_p, so the standard sufficient condition for the "
            "admissible set to be infinite does not apply; the bound is valid but may be vacuous";
    }
    return report;
}

}  // namespace robin
