#pragma once

#include <robin/discrete_oracle.hpp>
#include <robin/padic_equilibrium.hpp>
#include <robin/real_equilibrium.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

// Oracle comparison suites behind the `verify` command: discrete energy
// minimization against the analytic Robin constants and measures.

namespace robin {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string observed;
    std::string expected;
};

namespace verify_detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace verify_detail

/// Exact p-adic oracle: the discrete minimum equals the Robin constant and
/// the shell-aggregated weights equal the analytic coefficients, as rational
/// identities, for every grid point.
inline std::vector<CheckResult> verify_padic_oracle(const std::vector<long>& qs = {2, 3},
                                                    const std::vector<int>& ns = {-1, -2, -3},
                                                    const std::vector<int>& depths = {1, 2}) {
    std::vector<CheckResult> out;
    for (long q : qs) {
        for (int n : ns) {
            const LocalFieldSpec field(q);
            const ScaledLog expected_energy = robin_constant_padic(field, n);
            const PAdicEquilibriumMeasure analytic = equilibrium_coefficients(field, n);
            for (int depth : depths) {
                const std::string tag = "padic q=" + std::to_string(q) +
                                        " n=" + std::to_string(n) +
                                        " depth=" + std::to_string(depth);
                PAdicLeafSystem sys = build_padic_energy_matrix(field, n, depth);
                PAdicMinimizerResult min = minimize_energy(sys);

                CheckResult energy_check{tag + ": discrete energy == V_delta (exact)", false,
                                         min.energy.str(), expected_energy.str()};
                energy_check.pass = min.energy == expected_energy;
                out.push_back(energy_check);

                auto buckets = aggregate_shell_weights(min.measure);
                bool agg_ok = true;
                std::string got, want;
                for (int k = 0; k >= n; --k) {
                    if (!got.empty()) { got += ", "; want += ", "; }
                    got += rat_to_string(buckets[k]);
                    want += rat_to_string(analytic.c(k));
                    if (buckets[k] != analytic.c(k)) agg_ok = false;
                }
                out.push_back({tag + ": shell masses == c_k (exact)", agg_ok, got, want});
            }
        }
    }
    return out;
}

/// Real-mode oracle at cell count m: energy within energy_tol of the analytic
/// Robin constant, global equilibrium-condition residual, and the binned
/// measure shape against the analytic density.
inline std::vector<CheckResult> verify_real_oracle(const std::vector<double>& rs = {1.0, 2.0},
                                                   std::size_t m = 2000,
                                                   double energy_tol = 1e-3,
                                                   double quad_tol = kDefaultQuadTol) {
    using verify_detail::fmt;
    std::vector<CheckResult> out;
    for (double r : rs) {
        const RealIntervalSpec spec(r);
        const std::string tag = "real r=" + fmt(r) + " m=" + std::to_string(m);
        const double analytic = robin_constant_real(spec, quad_tol);
        RealEnergyModel model = build_real_energy_matrix(spec, m);
        RealMinimizerResult min = minimize_energy(model);

        CheckResult energy_check{tag + ": |discrete energy - V_delta| < " + fmt(energy_tol),
                                 std::abs(min.energy - analytic) < energy_tol,
                                 fmt(min.energy) + " (analytic " + fmt(analytic) + ")",
                                 "within " + fmt(energy_tol)};
        out.push_back(energy_check);

        out.push_back({tag + ": equilibrium residual < 1e-6",
                       min.residual_all < 1e-6 && min.residual_supported < 1e-6,
                       fmt(std::max(min.residual_all, min.residual_supported)), "< 1e-06"});

        // measure shape: tolerance scaled from the m = 2000 reference grid
        const double shape_tol = (r <= 1.0 ? 5e-3 : 1e-2) * (2000.0 / static_cast<double>(m));
        MeasureComparison cmp = compare_measure_real(min.measure);
        out.push_back({tag + ": max bin discrepancy < " + fmt(shape_tol),
                       cmp.max_bin_discrepancy < shape_tol, fmt(cmp.max_bin_discrepancy),
                       "< " + fmt(shape_tol)});
    }
    return out;
}

}  // namespace robin
