#pragma once

#include <robin/exact_linalg.hpp>
#include <robin/kernel.hpp>
#include <robin/padic_equilibrium.hpp>
#include <robin/real_equilibrium.hpp>
#include <robin/scaled_log.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

// Brute-force verification path: minimize the discrete delta-energy w^T A w
// over probability vectors on a discretized set and compare against the
// analytic equilibrium results. Real mode discretizes [-r,r] into equal
// cells; p-adic mode uses the full tree of balls of radius |pi|^depth, where
// the piecewise-Haar structure makes the discrete model exact.

namespace robin {

enum class DiagonalMode { cell_self_energy, leave_one_out };

template <class T>
struct EnergyMatrix {
    std::size_t n = 0;
    DiagonalMode diagonal_mode = DiagonalMode::cell_self_energy;
    std::vector<T> entries;  // row-major, symmetric

    EnergyMatrix() = default;
    EnergyMatrix(std::size_t n_, T init) : n(n_), entries(n_ * n_, init) {}
    T& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    const T& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

// ---------------------------------------------------------------------------
// real mode

struct RealEnergyModel {
    RealIntervalSpec spec;
    double cell_width = 0.0;
    std::vector<double> midpoints;
    EnergyMatrix<double> matrix;
};

struct DiscreteMeasureReal {
    RealIntervalSpec spec;
    double cell_width = 0.0;
    std::vector<double> midpoints;
    std::vector<double> weights;
};

/// Partitions [-r, r] into m equal cells. Off-diagonal entries are the
/// spherical kernel between cell midpoints; the diagonal is the exact
/// self-energy of the uniform measure on the cell, -log(width) + 3/2, plus
/// the 2 log^+|midpoint| spherical correction.
inline RealEnergyModel build_real_energy_matrix(const RealIntervalSpec& spec, std::size_t m) {
    if (m < 10) throw std::invalid_argument("build_real_energy_matrix: need m >= 10");
    const double width = 2.0 * spec.r / static_cast<double>(m);
    RealEnergyModel model{spec, width, {}, EnergyMatrix<double>(m, 0.0)};
    model.midpoints.resize(m);
    for (std::size_t i = 0; i < m; ++i)
        model.midpoints[i] = -spec.r + (static_cast<double>(i) + 0.5) * width;
    for (std::size_t i = 0; i < m; ++i) {
        const double xi = model.midpoints[i];
        model.matrix.at(i, i) =
            -std::log(width) + 1.5 + 2.0 * std::log(std::max(1.0, std::abs(xi)));
        for (std::size_t j = i + 1; j < m; ++j) {
            const double k = neg_log_delta_real(xi, model.midpoints[j]);
            model.matrix.at(i, j) = k;
            model.matrix.at(j, i) = k;
        }
    }
    return model;
}

struct RealMinimizeOptions {
    double residual_tol = 1e-8;  // equilibrium residual over supported cells
    long max_iterations = 400000;
    double support_eps = 1e-15;
};

struct RealMinimizerResult {
    DiscreteMeasureReal measure;
    double energy = 0.0;
    double residual_supported = 0.0;  // max |(Aw)_i - energy| over w_i > 0
    double residual_all = 0.0;        // max (energy - (Aw)_i) over all i
    long iterations = 0;
};

struct OptimizationFailure : std::runtime_error {
    double residual;
    explicit OptimizationFailure(double res)
        : std::runtime_error("minimize_energy: stalled at residual " + format_residual(res)),
          residual(res) {}

  private:
    static std::string format_residual(double res) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", res);
        return buf;
    }
};

namespace oracle_detail {

/// Euclidean projection onto the probability simplex.
inline void project_simplex(std::vector<double>& v, std::vector<double>& scratch) {
    scratch = v;
    std::sort(scratch.begin(), scratch.end(), std::greater<double>());
    double cumulative = 0.0, theta = 0.0;
    std::size_t rho = 0;
    for (std::size_t i = 0; i < scratch.size(); ++i) {
        cumulative += scratch[i];
        const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (scratch[i] - candidate > 0.0) {
            rho = i + 1;
            theta = candidate;
        }
    }
    (void)rho;
    for (double& x : v) x = std::max(x - theta, 0.0);
}

inline void matvec(const EnergyMatrix<double>& a, const std::vector<double>& x,
                   std::vector<double>& out) {
    const std::size_t n = a.n;
    out.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = &a.entries[i * n];
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
        out[i] = s;
    }
}

}  // namespace oracle_detail

/// Projected-gradient minimization of w^T A w over the simplex, deterministic
/// uniform start, Barzilai-Borwein trial steps with exact line search along
/// the projected direction. Converged when the equilibrium-condition residual
/// over supported cells drops below residual_tol.
inline RealMinimizerResult minimize_energy(const RealEnergyModel& model,
                                           RealMinimizeOptions opts = {}) {
    using oracle_detail::matvec;
    using oracle_detail::project_simplex;
    const EnergyMatrix<double>& a = model.matrix;
    const std::size_t n = a.n;
    if (n == 0) throw std::invalid_argument("minimize_energy: empty matrix");

    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    std::vector<double> aw, d(n), ad, scratch;
    matvec(a, w, aw);

    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a.at(i, i)));
    const double eta0 = 1.0 / (2.0 * std::max(1.0, max_diag));
    double eta = eta0;

    auto energy_of = [&]() {
        double f = 0.0;
        for (std::size_t i = 0; i < n; ++i) f += w[i] * aw[i];
        return f;
    };
    auto residual_supported = [&](double f) {
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] > opts.support_eps) res = std::max(res, std::abs(aw[i] - f));
        return res;
    };

    double f = energy_of();
    double res = residual_supported(f);
    long it = 0;
    for (; it < opts.max_iterations && res >= opts.residual_tol; ++it) {
        if (it % 512 == 511) matvec(a, w, aw);  // clear accumulated drift

        double dmax = 0.0;
        double step = eta;
        for (int attempt = 0; attempt < 4; ++attempt) {
            for (std::size_t i = 0; i < n; ++i) d[i] = w[i] - step * 2.0 * aw[i];
            project_simplex(d, scratch);
            dmax = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                d[i] -= w[i];
                dmax = std::max(dmax, std::abs(d[i]));
            }
            if (dmax > 1e-17) break;
            step *= 100.0;  // stalled BB step; widen and retry
        }
        if (dmax <= 1e-17) break;  // fixed point of the projected arc

        // The projection leaves a spurious uniform mass component of order
        // n*eps in d; against the large mean potential it swamps the true
        // descent signal near the optimum. Re-center d on its free support.
        double dsum = 0.0, min_free = std::numeric_limits<double>::infinity();
        std::size_t free_count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double target = w[i] + d[i];
            if (target > 0.0) {
                dsum += d[i];
                ++free_count;
                min_free = std::min(min_free, target);
            }
        }
        if (free_count > 0) {
            const double shift = dsum / static_cast<double>(free_count);
            if (std::abs(shift) < 0.25 * min_free)
                for (std::size_t i = 0; i < n; ++i)
                    if (w[i] + d[i] > 0.0) d[i] -= shift;
        }

        matvec(a, d, ad);
        double dad = 0.0, wad = 0.0, dd = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dad += d[i] * ad[i];
            wad += w[i] * ad[i];
            dd += d[i] * d[i];
        }
        double t = 1.0;
        if (dad > 0.0) t = std::clamp(-wad / dad, 0.0, 1.0);
        if (t == 0.0) break;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] += t * d[i];
            aw[i] += t * ad[i];
        }
        // BB1 step for the quadratic: s = t d, y = 2 t A d
        eta = dad > 0.0 ? std::clamp(dd / (2.0 * dad), 1e-12, 1e12) : eta0;
        f = energy_of();
        res = residual_supported(f);
    }

    matvec(a, w, aw);
    f = energy_of();
    res = residual_supported(f);
    if (res >= opts.residual_tol) throw OptimizationFailure(res);

    double res_all = 0.0;
    for (std::size_t i = 0; i < n; ++i) res_all = std::max(res_all, f - aw[i]);

    return {DiscreteMeasureReal{model.spec, model.cell_width, model.midpoints, w}, f, res,
            res_all, it};
}

// ---------------------------------------------------------------------------
// p-adic mode

struct PAdicLeafSystem {
    LocalFieldSpec field;
    int n = 0;      // the ambient ball pi^n O_K, n < 0
    int depth = 1;  // leaves are balls of radius |pi|^depth
    std::vector<PAdicBallCode> leaves;
    EnergyMatrix<Rat> matrix;  // kernel coefficients over log p
};

struct DiscreteMeasurePAdic {
    LocalFieldSpec field;
    int n = 0;
    int depth = 1;
    std::vector<PAdicBallCode> leaves;
    std::vector<Rat> weights;
};

/// All q^(|n|+depth) balls of radius |pi|^depth inside pi^n O_K. Off-diagonal
/// entries come straight from the kernel on the ball codes (the kernel is
/// constant between two distinct leaf balls); diagonal entries are the exact
/// self-energy of normalized Haar on a leaf, -log capacity plus the
/// 2 log^+|center| correction. Everything exact.
inline PAdicLeafSystem build_padic_energy_matrix(const LocalFieldSpec& field, int n, int depth) {
    if (n >= 0) throw std::invalid_argument("build_padic_energy_matrix: requires n < 0");
    if (depth < 1) throw std::invalid_argument("build_padic_energy_matrix: requires depth >= 1");
    const long q = field.q();
    const int num_digits = depth - n;
    double count_check = 1.0;
    for (int i = 0; i < num_digits; ++i) {
        count_check *= static_cast<double>(q);
        if (count_check > 1e4)
            throw std::invalid_argument("build_padic_energy_matrix: leaf budget (10^4) exceeded");
    }
    const std::size_t count = static_cast<std::size_t>(count_check);

    PAdicLeafSystem sys{field, n, depth, {}, EnergyMatrix<Rat>(count, Rat(0))};
    sys.leaves.reserve(count);
    std::vector<int> digits(static_cast<std::size_t>(num_digits), 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        sys.leaves.emplace_back(field, n, digits);
        for (int pos = 0; pos < num_digits; ++pos) {  // odometer, least position first
            if (++digits[static_cast<std::size_t>(pos)] < q) break;
            digits[static_cast<std::size_t>(pos)] = 0;
        }
    }

    const Rat self_energy = -capacity_ball(field, depth).coeff;  // over log p
    for (std::size_t i = 0; i < count; ++i) {
        const auto v = sys.leaves[i].valuation();
        const long lp = v ? std::max(0, -*v) : 0;
        sys.matrix.at(i, i) = self_energy + Rat(2 * lp, field.e);
        for (std::size_t j = i + 1; j < count; ++j) {
            const Rat k = neg_log_delta_padic(sys.leaves[i], sys.leaves[j]).coeff;
            sys.matrix.at(i, j) = k;
            sys.matrix.at(j, i) = k;
        }
    }
    return sys;
}

struct PAdicMinimizerResult {
    DiscreteMeasurePAdic measure;
    ScaledLog energy;
};

/// Exact minimization of w^T A w over the simplex for a conditionally
/// positive matrix: solve the equal-potential KKT system A w = lambda 1,
/// sum w = 1 in rationals. Full support first; negative coordinates fall
/// back to active-set elimination, with a dual-feasibility assertion on exit.
inline std::pair<std::vector<Rat>, Rat> exact_simplex_minimize(const EnergyMatrix<Rat>& a) {
    const std::size_t n = a.n;
    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i;

    for (std::size_t round = 0; round <= n; ++round) {
        const std::size_t k = active.size();
        if (k == 0) throw std::logic_error("exact_simplex_minimize: active set emptied");
        DenseMatrix<Rat> m(k + 1, k + 1);
        std::vector<Rat> rhs(k + 1, Rat(0));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) m(i, j) = a.at(active[i], active[j]);
            m(i, k) = -1;  // -lambda column
            m(k, i) = 1;   // mass row
        }
        rhs[k] = 1;
        std::vector<Rat> sol = gauss_solve(m, rhs);

        bool nonneg = true;
        for (std::size_t i = 0; i < k; ++i)
            if (sol[i] < 0) { nonneg = false; break; }

        if (nonneg) {
            std::vector<Rat> w(n, Rat(0));
            for (std::size_t i = 0; i < k; ++i) w[active[i]] = sol[i];
            const Rat& lambda = sol[k];
            // dual feasibility on dropped cells: (A w)_i >= lambda
            for (std::size_t i = 0; i < n; ++i) {
                if (w[i] != 0) continue;
                Rat pot(0);
                for (std::size_t j = 0; j < k; ++j) pot += a.at(i, active[j]) * sol[j];
                if (pot < lambda)
                    throw std::logic_error("exact_simplex_minimize: active-set assertion failed");
            }
            return {std::move(w), lambda};
        }

        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < k; ++i)
            if (sol[i] >= 0) next.push_back(active[i]);
        active = std::move(next);
    }
    throw std::logic_error("exact_simplex_minimize: active-set cycling");
}

inline PAdicMinimizerResult minimize_energy(const PAdicLeafSystem& sys) {
    auto [w, lambda] = exact_simplex_minimize(sys.matrix);
    return {DiscreteMeasurePAdic{sys.field, sys.n, sys.depth, sys.leaves, std::move(w)},
            ScaledLog{lambda, sys.field.p}};
}

/// Sums leaf weights over each shell pi^k O_K^x (bucket k < 0) and over O_K
/// (bucket 0). For the exact minimizer these reproduce the analytic c_k.
inline std::map<int, Rat> aggregate_shell_weights(const DiscreteMeasurePAdic& measure) {
    std::map<int, Rat> buckets;
    for (int k = 0; k >= measure.n; --k) buckets[k] = 0;
    for (std::size_t i = 0; i < measure.leaves.size(); ++i) {
        const auto v = measure.leaves[i].valuation();
        const int bucket = (!v || *v >= 0) ? 0 : *v;
        buckets[bucket] += measure.weights[i];
    }
    return buckets;
}

// ---------------------------------------------------------------------------
// shape comparison against the analytic density

struct MeasureComparison {
    double max_bin_discrepancy = 0.0;
    std::vector<double> bin_edges;   // 21 edges of the 20 equal-mass bins
    std::vector<double> bin_masses;  // discrete mass per bin
};

/// Splits [-r, r] into 20 equal-mass bins of the analytic equilibrium measure
/// and reports the worst deviation of the discrete bin mass from 1/20. Cell
/// mass crossing a bin edge is assigned by proportional overlap.
inline MeasureComparison compare_measure_real(const DiscreteMeasureReal& measure,
                                              double quad_tol = 1e-8) {
    const RealIntervalSpec spec = measure.spec;
    const double r = spec.r;
    constexpr int bins = 20;

    auto cdf = [&](double x) -> double {
        if (x <= -r) return 0.0;
        if (x >= r) return 1.0;
        IntegrandSpec s;
        s.f = [spec](double u) { return density_at(spec, u); };
        s.a = -r;
        s.b = x;
        s.singularities = {{-r, SingularityKind::inverse_sqrt_endpoint}};
        if (spec.wide() && r > 1.0) {
            if (-1.0 < x) s.singularities.push_back({-1.0, SingularityKind::log_point});
            if (1.0 < x) s.singularities.push_back({1.0, SingularityKind::log_point});
        }
        return integrate(s, quad_tol).value;
    };

    MeasureComparison cmp;
    cmp.bin_edges.resize(bins + 1);
    cmp.bin_edges.front() = -r;
    cmp.bin_edges.back() = r;
    for (int k = 1; k < bins; ++k) {
        const double target = static_cast<double>(k) / bins;
        double lo = cmp.bin_edges[static_cast<std::size_t>(k - 1)], hi = r;
        for (int iter = 0; iter < 60 && hi - lo > 1e-11 * r; ++iter) {
            const double mid = 0.5 * (lo + hi);
            (cdf(mid) < target ? lo : hi) = mid;
        }
        cmp.bin_edges[static_cast<std::size_t>(k)] = 0.5 * (lo + hi);
    }

    cmp.bin_masses.assign(bins, 0.0);
    const double half_w = 0.5 * measure.cell_width;
    for (std::size_t i = 0; i < measure.midpoints.size(); ++i) {
        const double c_lo = measure.midpoints[i] - half_w;
        const double c_hi = measure.midpoints[i] + half_w;
        for (int k = 0; k < bins; ++k) {
            const double lo = std::max(c_lo, cmp.bin_edges[static_cast<std::size_t>(k)]);
            const double hi = std::min(c_hi, cmp.bin_edges[static_cast<std::size_t>(k + 1)]);
            if (hi > lo)
                cmp.bin_masses[static_cast<std::size_t>(k)] +=
                    measure.weights[i] * (hi - lo) / measure.cell_width;
        }
    }
    for (int k = 0; k < bins; ++k)
        cmp.max_bin_discrepancy = std::max(
            cmp.max_bin_discrepancy, std::abs(cmp.bin_masses[static_cast<std::size_t>(k)] -
                                              1.0 / static_cast<double>(bins)));
    return cmp;
}

}  // namespace robin
