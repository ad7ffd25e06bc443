#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

// Adaptive 1-D integration (Gauss-Kronrod 15 with a global refinement heap)
// with explicit handling of the singularity types produced by the equilibrium
// formulas:
//   - inverse-square-root endpoint:  x = a + (b-a) sin^2(theta) substitution,
//   - integrable logarithmic point:  split + geometric mesh grading toward
//     the point, closed by a short model-fitted tail strip,
//   - removable point:               a symmetric epsilon-strip using the
//     declared limit value.

namespace robin {

enum class SingularityKind { inverse_sqrt_endpoint, log_point, removable_point };

struct Singularity {
    double location = 0.0;
    SingularityKind kind = SingularityKind::log_point;
    double limit = 0.0;  // removable_point only: limit value of f there
};

struct IntegrandSpec {
    std::function<double(double)> f;
    double a = 0.0, b = 0.0;
    std::vector<Singularity> singularities;
    std::vector<double> breakpoints;  // benign kinks, used as panel boundaries
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

struct QuadratureOptions {
    long max_evaluations = 800000;
};

namespace quad_detail {
inline std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}
}  // namespace quad_detail

struct ToleranceNotMet : std::runtime_error {
    double best_value;
    double achieved_estimate;
    ToleranceNotMet(double v, double e)
        : std::runtime_error("quadrature: tolerance not met (achieved " + quad_detail::sci(e) +
                             ", best value " + quad_detail::sci(v) + ")"),
          best_value(v), achieved_estimate(e) {}
};

struct UndeclaredSingularity : std::runtime_error {
    double location;
    explicit UndeclaredSingularity(double x)
        : std::runtime_error("quadrature: undeclared singularity near x = " +
                             quad_detail::sci(x)),
          location(x) {}
};

namespace quad_detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
inline constexpr double kNodes[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
inline constexpr double kWeightsK[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
inline constexpr double kWeightsG[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776};

struct Segment {
    std::function<double(double)> g;  // transformed integrand, finiteness-checked
    double lo = 0.0, hi = 0.0;        // integration range in the segment's own variable
};

struct Panel {
    int seg = 0;
    double lo = 0.0, hi = 0.0;
    double val = 0.0, err = 0.0;
    bool operator<(const Panel& o) const {  // priority: larger error first
        if (err != o.err) return err < o.err;
        if (seg != o.seg) return seg > o.seg;
        return lo > o.lo;
    }
};

struct EvalBudget {
    long used = 0;
    long cap = 0;
};

inline Panel evaluate_panel(const std::vector<Segment>& segs, int si, double lo, double hi,
                            EvalBudget& budget) {
    const Segment& s = segs[static_cast<std::size_t>(si)];
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    budget.used += 15;
    double fc = s.g(c);
    double sum_k = kWeightsK[7] * fc;
    double sum_g = kWeightsG[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kNodes[i];
        const double f1 = s.g(c - dx);
        const double f2 = s.g(c + dx);
        sum_k += kWeightsK[i] * (f1 + f2);
        if (i % 2 == 1) sum_g += kWeightsG[(i - 1) / 2] * (f1 + f2);
    }
    return {si, lo, hi, sum_k * h, std::abs((sum_k - sum_g) * h)};
}

enum class TailModel { log_const, s_log };  // A log s + B  vs  s (A log s + B)

// Closes the strip [end, end +- theta0] of a substituted segment where the
// transformed integrand is smooth but direct node evaluation would suffer
// catastrophic cancellation in (x - endpoint). Quadratic fit through the
// quarter points (exact for cubics); the fit extrapolated to theta0 against a
// fourth sample measures the actual noise-plus-curvature level.
inline double smooth_tail(const Segment& s, bool at_lo, double theta0, double* err,
                          EvalBudget& budget) {
    const double base = at_lo ? s.lo : s.hi;
    const double sign = at_lo ? 1.0 : -1.0;
    budget.used += 4;
    const double g1 = s.g(base + sign * 0.25 * theta0);
    const double g2 = s.g(base + sign * 0.50 * theta0);
    const double g3 = s.g(base + sign * 0.75 * theta0);
    const double g4 = s.g(base + sign * theta0);
    const double residual = std::abs(g4 - (g1 - 3.0 * g2 + 3.0 * g3));
    *err = theta0 * 0.5 * residual + 1e-18;
    return theta0 * (2.0 * g1 - g2 + 2.0 * g3) / 3.0;
}

// Integrates g over the strip of width eta adjacent to a graded endpoint by
// fitting the local singular model from interior samples. Returns the strip
// value; *err gets a residual-based accuracy indicator.
inline double log_tail(const Segment& s, bool at_lo, double eta, TailModel model, double* err,
                       EvalBudget& budget) {
    const double base = at_lo ? s.lo : s.hi;
    const double sign = at_lo ? 1.0 : -1.0;
    const double d1 = 0.25 * eta, d2 = 0.5 * eta, d3 = 0.75 * eta;
    budget.used += 3;
    double g1 = s.g(base + sign * d1);
    double g2 = s.g(base + sign * d2);
    double g3 = s.g(base + sign * d3);
    if (model == TailModel::s_log) { g1 /= d1; g2 /= d2; g3 /= d3; }
    const double A = (g3 - g1) / (std::log(d3) - std::log(d1));
    const double B = g1 - A * std::log(d1);
    const double residual = std::abs(g2 - (A * std::log(d2) + B));
    double value;
    if (model == TailModel::log_const) {
        value = eta * (A * (std::log(eta) - 1.0) + B);
        *err = 3.0 * eta * residual + 1e-18;
    } else {
        value = 0.5 * eta * eta * (A * (std::log(eta) - 0.5) + B);
        *err = 1.5 * eta * eta * residual + 1e-18;
    }
    if (!std::isfinite(value)) throw UndeclaredSingularity(base);
    return value;
}

}  // namespace quad_detail

inline QuadratureResult integrate(const IntegrandSpec& spec, double tol,
                                  QuadratureOptions opts = {}) {
    using namespace quad_detail;
    if (!(spec.b > spec.a) || !std::isfinite(spec.a) || !std::isfinite(spec.b))
        throw std::invalid_argument("integrate: need finite a < b");
    if (!(tol >= 1e-14)) throw std::invalid_argument("integrate: tol must be >= 1e-14");
    if (!spec.f) throw std::invalid_argument("integrate: missing integrand");

    const double a = spec.a, b = spec.b;
    const double span = b - a;
    const double merge_tol = 1e-13 * std::max(1.0, span);

    // Collect singular points, merged by location.
    struct Flagged {
        double x;
        bool invsqrt = false, logpt = false, removable = false;
        double limit = 0.0;
    };
    std::vector<Flagged> flags;
    auto flag_at = [&](double x) -> Flagged& {
        for (auto& fl : flags)
            if (std::abs(fl.x - x) <= merge_tol) return fl;
        flags.push_back({x});
        return flags.back();
    };
    for (const Singularity& s : spec.singularities) {
        if (s.location < a - merge_tol || s.location > b + merge_tol)
            throw std::invalid_argument("integrate: singularity outside [a, b]");
        Flagged& fl = flag_at(std::clamp(s.location, a, b));
        switch (s.kind) {
            case SingularityKind::inverse_sqrt_endpoint:
                if (std::abs(s.location - a) > merge_tol && std::abs(s.location - b) > merge_tol)
                    throw std::invalid_argument(
                        "integrate: inverse_sqrt_endpoint must sit at a or b");
                fl.invsqrt = true;
                break;
            case SingularityKind::log_point: fl.logpt = true; break;
            case SingularityKind::removable_point:
                fl.removable = true;
                fl.limit = s.limit;
                break;
        }
    }

    // Cut the interval at every flagged point and breakpoint.
    std::vector<double> cuts{a, b};
    for (const auto& fl : flags) cuts.push_back(fl.x);
    for (double bp : spec.breakpoints)
        if (bp > a + merge_tol && bp < b - merge_tol) cuts.push_back(bp);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [&](double u, double v) { return std::abs(u - v) <= merge_tol; }),
               cuts.end());
    cuts.front() = a;
    cuts.back() = b;

    auto flags_of = [&](double x) -> const Flagged* {
        for (const auto& fl : flags)
            if (std::abs(fl.x - x) <= merge_tol) return &fl;
        return nullptr;
    };

    double extra_value = 0.0, extra_err = 0.0;
    EvalBudget budget{0, opts.max_evaluations};

    // Removable points: excise a symmetric strip, credit 2 eps * limit.
    std::vector<double> shrink_after(cuts.size(), 0.0), shrink_before(cuts.size(), 0.0);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const Flagged* fl = flags_of(cuts[i]);
        if (!fl || !fl->removable) continue;
        const double gap_l = i > 0 ? cuts[i] - cuts[i - 1] : 0.0;
        const double gap_r = i + 1 < cuts.size() ? cuts[i + 1] - cuts[i] : 0.0;
        double eps = 1e-7 * std::max(1.0, std::abs(fl->x));
        if (gap_l > 0) eps = std::min(eps, 0.25 * gap_l);
        if (gap_r > 0) eps = std::min(eps, 0.25 * gap_r);
        if (gap_l > 0) { shrink_before[i] = eps; extra_value += eps * fl->limit; }
        if (gap_r > 0) { shrink_after[i] = eps; extra_value += eps * fl->limit; }
        extra_err += eps * eps * (1.0 + std::abs(fl->limit));
    }

    auto checked = [&spec](double x) {
        const double v = spec.f(x);
        if (!std::isfinite(v)) throw UndeclaredSingularity(x);
        return v;
    };

    std::vector<Segment> segments;
    struct GradedEnd {
        int seg;
        bool at_lo;
        double eta;
        TailModel model;
    };
    std::vector<GradedEnd> graded;
    std::vector<Panel> initial;  // filled after segments exist (needs stable seg pointers)
    struct PanelPlan { int seg; double lo, hi; };
    std::vector<PanelPlan> plan;

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double u = cuts[i], v = cuts[i + 1];
        const double u2 = u + shrink_after[i], v2 = v - shrink_before[i + 1];
        if (!(v2 > u2)) continue;
        const Flagged* fu = flags_of(u);
        const Flagged* fv = flags_of(v);
        const bool sq_u = fu && fu->invsqrt, sq_v = fv && fv->invsqrt;
        const bool lg_u = fu && fu->logpt, lg_v = fv && fv->logpt;

        int si = static_cast<int>(segments.size());
        bool grade_lo = false, grade_hi = false;
        double eta_lo = 0.0, eta_hi = 0.0;
        TailModel model_lo = TailModel::log_const, model_hi = TailModel::log_const;

        if (sq_u || sq_v) {
            // theta-substitution x = u2 + (v2-u2) sin^2(theta) absorbs the
            // inverse-sqrt behavior at either (or both) ends.
            const double len = v2 - u2;
            const double lo_x = u2;
            auto f = spec.f;
            Segment seg;
            seg.lo = 0.0;
            seg.hi = std::numbers::pi / 2;
            seg.g = [f, lo_x, len](double theta) {
                const double s = std::sin(theta);
                const double x = lo_x + len * s * s;
                const double val = f(x) * len * std::sin(2.0 * theta);
                if (!std::isfinite(val)) throw UndeclaredSingularity(x);
                return val;
            };
            segments.push_back(std::move(seg));
            // At a singular end without a log flag, keep panel nodes out of
            // the region where f would reconstruct (x - endpoint) from the
            // rounded x; close the gap with a smooth-model strip.
            constexpr double theta0 = 1e-4;
            if (sq_u && !lg_u) {
                double terr = 0.0;
                extra_value += smooth_tail(segments.back(), true, theta0, &terr, budget);
                extra_err += terr;
                segments.back().lo = theta0;
            }
            if (sq_v && !lg_v) {
                double terr = 0.0;
                extra_value += smooth_tail(segments.back(), false, theta0, &terr, budget);
                extra_err += terr;
                segments.back().hi = segments.back().hi - theta0;
            }
            if (lg_u) {
                grade_lo = true;
                eta_lo = 1e-5;
                model_lo = sq_u ? TailModel::log_const : TailModel::s_log;
            }
            if (lg_v) {
                grade_hi = true;
                eta_hi = 1e-5;
                model_hi = sq_v ? TailModel::log_const : TailModel::s_log;
            }
        } else {
            Segment seg;
            seg.lo = u2;
            seg.hi = v2;
            seg.g = checked;
            segments.push_back(std::move(seg));
            if (lg_u) {
                grade_lo = true;
                eta_lo = std::min(1e-12 * std::max(1.0, std::abs(u)), 0.125 * (v2 - u2));
                model_lo = TailModel::log_const;
            }
            if (lg_v) {
                grade_hi = true;
                eta_hi = std::min(1e-12 * std::max(1.0, std::abs(v)), 0.125 * (v2 - u2));
                model_hi = TailModel::log_const;
            }
        }

        // Panel layout: geometric grading toward flagged log ends, a few
        // uniform panels elsewhere.
        const Segment& seg = segments.back();
        const double len = seg.hi - seg.lo;
        double core_lo = seg.lo, core_hi = seg.hi;
        constexpr double rho = 0.25;
        if (grade_lo) {
            graded.push_back({si, true, eta_lo, model_lo});
            const double l0 = 0.5 * len;
            double outer = l0;
            while (outer > eta_lo) {
                const double inner = std::max(outer * rho, eta_lo);
                plan.push_back({si, seg.lo + inner, seg.lo + outer});
                outer = inner;
            }
            core_lo = seg.lo + l0;
        }
        if (grade_hi) {
            graded.push_back({si, false, eta_hi, model_hi});
            const double l0 = 0.5 * len;
            double outer = l0;
            while (outer > eta_hi) {
                const double inner = std::max(outer * rho, eta_hi);
                plan.push_back({si, seg.hi - outer, seg.hi - inner});
                outer = inner;
            }
            core_hi = seg.hi - l0;
        }
        if (core_hi > core_lo) {
            const int nsplit = 4;
            for (int k = 0; k < nsplit; ++k) {
                const double p0 = core_lo + (core_hi - core_lo) * k / nsplit;
                const double p1 = core_lo + (core_hi - core_lo) * (k + 1) / nsplit;
                plan.push_back({si, p0, p1});
            }
        }
    }

    for (const auto& ge : graded) {
        double terr = 0.0;
        extra_value += log_tail(segments[static_cast<std::size_t>(ge.seg)], ge.at_lo, ge.eta,
                                ge.model, &terr, budget);
        extra_err += terr;
    }

    std::priority_queue<Panel> heap;
    std::vector<Panel> done;  // panels too small to split further
    double heap_err = 0.0, done_err = 0.0;
    for (const auto& pp : plan) {
        Panel p = evaluate_panel(segments, pp.seg, pp.lo, pp.hi, budget);
        heap_err += p.err;
        heap.push(p);
    }

    while (heap_err + done_err + extra_err > tol && !heap.empty()) {
        if (budget.used + 30 > budget.cap) break;  // refinement budget exhausted
        Panel worst = heap.top();
        heap.pop();
        heap_err -= worst.err;
        const double mid = 0.5 * (worst.lo + worst.hi);
        const double min_width =
            64.0 * std::numeric_limits<double>::epsilon() *
            std::max({1.0, std::abs(worst.lo), std::abs(worst.hi)});
        if (worst.hi - worst.lo < min_width) {
            done.push_back(worst);
            done_err += worst.err;
            continue;
        }
        Panel left = evaluate_panel(segments, worst.seg, worst.lo, mid, budget);
        Panel right = evaluate_panel(segments, worst.seg, mid, worst.hi, budget);
        heap_err += left.err + right.err;
        heap.push(left);
        heap.push(right);
    }

    std::vector<Panel> all = std::move(done);
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) {
        if (p.seg != q.seg) return p.seg < q.seg;
        return p.lo < q.lo;
    });

    // fixed-order compensated summation: deterministic no matter how the
    // refinement interleaved
    double sum = extra_value, comp = 0.0, err_sum = extra_err;
    for (const Panel& p : all) {
        const double y = p.val - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        err_sum += p.err;
    }

    if (err_sum > tol) throw ToleranceNotMet(sum, err_sum);
    return {sum, err_sum, budget.used};
}

/// Equilibrium-density integrals with the density's singularity structure
/// pre-declared: inverse-sqrt at +-r always; for the delta-equilibrium
/// density with r > 1 also log points at +-1 and the removable point at 0.
enum class DensityKind { delta_equilibrium, arcsine };

inline QuadratureResult integrate_against_density(const std::function<double(double)>& density,
                                                  DensityKind kind, double r,
                                                  const std::function<double(double)>& h,
                                                  double tol, QuadratureOptions opts = {}) {
    if (!(r > 0)) throw std::invalid_argument("integrate_against_density: r must be positive");
    IntegrandSpec spec;
    auto g = density;
    auto hf = h;
    spec.f = [g, hf](double x) { return g(x) * hf(x); };
    spec.a = -r;
    spec.b = r;
    spec.singularities = {{-r, SingularityKind::inverse_sqrt_endpoint},
                          {r, SingularityKind::inverse_sqrt_endpoint}};
    if (r > 1.0) {
        spec.breakpoints = {-1.0, 1.0};
        if (kind == DensityKind::delta_equilibrium) {
            spec.singularities.push_back({-1.0, SingularityKind::log_point});
            spec.singularities.push_back({1.0, SingularityKind::log_point});
            spec.singularities.push_back(
                {0.0, SingularityKind::removable_point, density(0.0) * h(0.0)});
        }
    }
    return integrate(spec, tol, opts);
}

}  // namespace robin
