#pragma once

#include <robin/quadrature.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>

// delta-equilibrium of the symmetric interval [-r, r]. The wide regime
// (r >= 1) is the weighted problem with external field log^+|x|; its density
//
//   G(x) = 2 arcsin(1/r) / (pi^2 sqrt(r^2 - x^2))
//        + (1/(pi^2 x)) log| (x+1)(r^2 - x + S) / ((x-1)(r^2 + x + S)) |,
//   S = sqrt(r^2 - x^2) sqrt(r^2 - 1),
//
// has inverse-sqrt edges at +-r, integrable log blowups at +-1 and a
// removable point at 0. The narrow regime (r < 1) reduces to the classical
// arcsine density.

namespace robin {

inline constexpr double kDefaultQuadTol = 1e-10;

struct RealIntervalSpec {
    double r;
    explicit RealIntervalSpec(double r_) : r(r_) {
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::domain_error("RealIntervalSpec: r must be positive and finite");
    }
    bool wide() const { return r >= 1.0; }  // regime is derived, never stored
};

namespace real_detail {

/// The odd log factor of the wide-regime density.
inline double log_factor(double x, double r) {
    const double s = std::sqrt((r - x) * (r + x)) * std::sqrt((r - 1.0) * (r + 1.0));
    return std::log(std::abs(((x + 1.0) * (r * r - x + s)) / ((x - 1.0) * (r * r + x + s))));
}

/// (2/pi) * int_1^r log(x)/sqrt(r^2 - x^2) dx, zero at r = 1.
inline double wide_log_integral(double r, double tol) {
    if (r <= 1.0) return 0.0;
    IntegrandSpec spec;
    spec.f = [r](double x) { return std::log(x) / std::sqrt((r - x) * (r + x)); };
    spec.a = 1.0;
    spec.b = r;
    spec.singularities = {{r, SingularityKind::inverse_sqrt_endpoint}};
    return (2.0 / std::numbers::pi) * integrate(spec, tol).value;
}

inline double log_plus(double x) { return std::log(std::max(1.0, std::abs(x))); }

}  // namespace real_detail

/// Equilibrium density dmu/dx at x in (-r, r). Even by construction. Diverges
/// like (r^2-x^2)^(-1/2) at +-r and logarithmically at +-1 (r > 1); callers
/// treat those as integrable, not as errors.
inline double density_at(const RealIntervalSpec& spec, double x) {
    const double r = spec.r;
    if (!(std::abs(x) < r)) throw std::domain_error("density_at: requires |x| < r");
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    if (r < 1.0) return 1.0 / (std::numbers::pi * std::sqrt((r - x) * (r + x)));

    const double ax = std::abs(x);
    const double first = 2.0 * std::asin(1.0 / r) / (pi2 * std::sqrt((r - ax) * (r + ax)));
    double second;
    if (ax < 1e-6) {
        // the log factor is odd with a simple zero; direct evaluation loses
        // all precision near 0, so take its centered difference instead
        const double h = 1e-6;
        second = (real_detail::log_factor(h, r) - real_detail::log_factor(-h, r)) / (2.0 * h * pi2);
    } else {
        second = real_detail::log_factor(ax, r) / (pi2 * ax);
    }
    return first + second;
}

/// Antiderivative F_t(s) of 2 sqrt(1-t^2) / (pi^2 sqrt(1-s^2) (s^2-t^2)),
/// for 0 < |t| < 1, |s| <= 1. Diverges (signed infinity) at s = +-t.
inline double antiderivative_F(double t, double s) {
    if (t == 0.0 || !(std::abs(t) < 1.0))
        throw std::domain_error("antiderivative_F: requires 0 < |t| < 1");
    if (!(std::abs(s) <= 1.0)) throw std::domain_error("antiderivative_F: requires |s| <= 1");
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    const double u = std::sqrt((1.0 - t) * (1.0 + t)) * std::sqrt((1.0 - s) * (1.0 + s));
    return std::log(std::abs((s - t) * (1.0 + s * t + u) / ((s + t) * (1.0 - s * t + u)))) /
           (pi2 * t);
}

/// delta-Robin constant of [-r, r]:
///   r >= 1: log(2/r) + (2/pi) int_1^r log x/sqrt(r^2-x^2) dx + int log^+ dmu
///   r <  1: log(2/r)   (kernel reduces to -log|x-y|; capacity of [-r,r] is r/2)
inline double robin_constant_real(const RealIntervalSpec& spec, double tol = kDefaultQuadTol) {
    const double r = spec.r;
    double v = std::log(2.0 / r);
    if (r <= 1.0) return v;
    v += real_detail::wide_log_integral(r, tol);
    const auto dens = [spec](double x) { return density_at(spec, x); };
    v += integrate_against_density(dens, DensityKind::delta_equilibrium, r,
                                   real_detail::log_plus, tol)
             .value;
    return v;
}

/// -int G(x) log|x-y| dx + log^+|y| for y in [-r, r], r >= 1. Equals the
/// y-independent constant (2/pi) int_1^r log x/sqrt(r^2-x^2) dx + log(2/r);
/// the constancy is the certificate that G is the equilibrium density.
inline double weighted_potential(const RealIntervalSpec& spec, double y,
                                 double tol = kDefaultQuadTol) {
    const double r = spec.r;
    if (!spec.wide()) throw std::domain_error("weighted_potential: requires r >= 1");
    if (!(std::abs(y) <= r)) throw std::domain_error("weighted_potential: requires |y| <= r");

    // y at (or next to) an interval edge stacks the log point onto the
    // inverse-sqrt end; evaluating that composition through double-valued x
    // has an intrinsic noise floor around 1e-9, so do not promise more.
    if (std::abs(std::abs(y) - r) < 1e-6 * std::max(1.0, r)) tol = std::max(tol, 1e-8);

    const auto dens = [spec](double x) { return density_at(spec, x); };
    IntegrandSpec s;
    s.f = [dens, y](double x) { return dens(x) * std::log(std::abs(x - y)); };
    s.a = -r;
    s.b = r;
    s.singularities = {{-r, SingularityKind::inverse_sqrt_endpoint},
                       {r, SingularityKind::inverse_sqrt_endpoint},
                       {y, SingularityKind::log_point}};
    if (r > 1.0) {
        s.singularities.push_back({-1.0, SingularityKind::log_point});
        s.singularities.push_back({1.0, SingularityKind::log_point});
        if (std::abs(y) > 1e-5)
            s.singularities.push_back(
                {0.0, SingularityKind::removable_point, dens(0.0) * std::log(std::abs(y))});
        else if (y != 0.0)
            s.breakpoints.push_back(0.0);
    }
    return -integrate(s, tol).value + real_detail::log_plus(y);
}

/// int log^+|x| dmu_arcsine over [-r, r], mu_arcsine having density
/// 1/(pi sqrt(r^2-x^2)). The algebraic-integer comparison value, not V_delta.
inline double arcsine_height_integral(const RealIntervalSpec& spec,
                                      double tol = kDefaultQuadTol) {
    const double r = spec.r;
    const auto dens = [r](double x) {
        return 1.0 / (std::numbers::pi * std::sqrt((r - x) * (r + x)));
    };
    return integrate_against_density(dens, DensityKind::arcsine, r, real_detail::log_plus, tol)
        .value;
}

/// Bundled measure value: spec, Robin constant and (for the wide regime) the
/// solver constants B_f = (2/pi) arcsin(1/r), C_f = (2/pi) int_1^r ... + log 2.
struct RealEquilibriumMeasure {
    RealIntervalSpec spec;
    double robin;
    std::optional<std::pair<double, double>> aux;  // (B_f, C_f) when r >= 1

    double density(double x) const { return density_at(spec, x); }

    static RealEquilibriumMeasure compute(const RealIntervalSpec& spec,
                                          double tol = kDefaultQuadTol) {
        RealEquilibriumMeasure m{spec, robin_constant_real(spec, tol), std::nullopt};
        if (spec.wide()) {
            const double bf = (2.0 / std::numbers::pi) * std::asin(1.0 / spec.r);
            const double cf = real_detail::wide_log_integral(spec.r, tol) + std::log(2.0);
            m.aux = std::make_pair(bf, cf);
        }
        return m;
    }
};

}  // namespace robin
