#pragma once

#include <robin/local_field.hpp>
#include <robin/rational.hpp>
#include <robin/scaled_log.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

// Spherical-metric energy kernel -log delta(x,y) with
//   delta(x,y) = |x - y| / (max(1,|x|) * max(1,|y|))
// in the affine chart, and its exact non-archimedean counterpart. delta <= 1
// always, so the kernel is nonnegative; delta(x,x) = 0 makes it +infinity on
// the diagonal.

namespace robin {

// ---------------------------------------------------------------------------
// archimedean side

/// Point of the real projective line in the affine chart, with a
/// distinguished value for the point at infinity.
struct ProjectivePointReal {
    ProjectivePointReal(double v) : value_(v), infinite_(false) {}  // NOLINT(implicit)
    static ProjectivePointReal infinity() {
        ProjectivePointReal pt(0.0);
        pt.infinite_ = true;
        return pt;
    }
    bool is_infinity() const { return infinite_; }
    double value() const { return value_; }

  private:
    double value_;
    bool infinite_;
};

/// -log delta(x,y) for extended reals. Returns +infinity when x == y.
/// Bitwise symmetric: the correction terms are added in sorted order.
inline double neg_log_delta_real(const ProjectivePointReal& x, const ProjectivePointReal& y) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto log_plus = [](double v) { return std::log(std::max(1.0, std::abs(v))); };
    if (x.is_infinity() && y.is_infinity()) return inf;
    if (x.is_infinity()) return log_plus(y.value());
    if (y.is_infinity()) return log_plus(x.value());
    if (x.value() == y.value()) return inf;
    const double lx = log_plus(x.value()), ly = log_plus(y.value());
    return -std::log(std::abs(x.value() - y.value())) + std::min(lx, ly) + std::max(lx, ly);
}

// ---------------------------------------------------------------------------
// non-archimedean side

struct InsufficientPrecision : std::runtime_error {
    explicit InsufficientPrecision(const std::string& what) : std::runtime_error(what) {}
};

// A point (or ball) of K encoded by a truncated uniformizer expansion:
//   x = sum_i digits[i] * pi^(base_valuation + i) + O(pi^(base_valuation + d)),
// digits being residue-class indices in {0,...,q-1}. The code denotes the
// ball of radius |pi|^(base_valuation + d) around the encoded center; the
// kernel needs only valuations, which digit prefixes determine.
struct PAdicBallCode {
    LocalFieldSpec field;
    int base_valuation = 0;
    std::vector<int> digits;

    PAdicBallCode(LocalFieldSpec fld, int base, std::vector<int> ds)
        : field(fld), base_valuation(base), digits(std::move(ds)) {
        for (int d : digits)
            if (d < 0 || d >= field.q())
                throw std::invalid_argument("PAdicBallCode: digit out of range [0, q)");
    }

    /// One past the last known coefficient position.
    int precision_end() const { return base_valuation + static_cast<int>(digits.size()); }

    /// Known expansion coefficient at absolute position pos (0 below base).
    /// Positions >= precision_end() are unknown; the caller must not ask.
    int digit_at(int pos) const {
        if (pos < base_valuation) return 0;
        return digits[static_cast<std::size_t>(pos - base_valuation)];
    }

    /// Exact valuation if a nonzero digit is visible; nullopt means the point
    /// is indistinguishable from 0 at this precision (v >= precision_end()).
    std::optional<int> valuation() const {
        for (std::size_t i = 0; i < digits.size(); ++i)
            if (digits[i] != 0) return base_valuation + static_cast<int>(i);
        return std::nullopt;
    }

    /// Encodes a rational number as a point of Q_p (requires e = f = 1) with
    /// num_digits expansion coefficients.
    static PAdicBallCode from_rational(const LocalFieldSpec& fld, const Rat& x, int num_digits);
};

namespace detail {

inline BigInt mod_inverse(BigInt a, const BigInt& m) {
    // extended euclid; m > 1, gcd(a, m) = 1
    BigInt t(0), new_t(1), r(m), new_r(a % m);
    if (new_r < 0) new_r += m;
    while (new_r != 0) {
        BigInt quot = r / new_r;
        BigInt tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::domain_error("mod_inverse: not invertible");
    if (t < 0) t += m;
    return t;
}

}  // namespace detail

inline PAdicBallCode PAdicBallCode::from_rational(const LocalFieldSpec& fld, const Rat& x,
                                                  int num_digits) {
    if (fld.e != 1 || fld.f != 1)
        throw std::invalid_argument("from_rational: only unramified Q_p (e = f = 1) supported");
    if (num_digits < 1) throw std::invalid_argument("from_rational: need at least one digit");
    if (x == 0) return {fld, 0, std::vector<int>(static_cast<std::size_t>(num_digits), 0)};

    const BigInt p(fld.p);
    BigInt num = numerator(x), den = denominator(x);
    int val = 0;
    while (num % p == 0) { num /= p; ++val; }
    while (den % p == 0) { den /= p; --val; }

    BigInt modulus = 1;
    for (int i = 0; i < num_digits; ++i) modulus *= p;
    BigInt unit = (num % modulus) * detail::mod_inverse(den % modulus, modulus) % modulus;
    if (unit < 0) unit += modulus;

    std::vector<int> ds(static_cast<std::size_t>(num_digits));
    for (int i = 0; i < num_digits; ++i) {
        ds[static_cast<std::size_t>(i)] = static_cast<int>(unit % p);
        unit /= p;
    }
    return {fld, val, std::move(ds)};
}

/// Exact -log delta(x,y) as a ScaledLog over the field's prime. Throws
/// InsufficientPrecision when the codes cannot separate the points or pin
/// down a needed absolute value.
inline ScaledLog neg_log_delta_padic(const PAdicBallCode& x, const PAdicBallCode& y) {
    if (x.field != y.field)
        throw std::invalid_argument("neg_log_delta_padic: points live in different fields");
    const LocalFieldSpec& fld = x.field;

    // v(x - y): first position where the known expansions differ. Distinct
    // residue classes at the leading differing position give the exact
    // valuation there.
    const int lo = std::min(x.base_valuation, y.base_valuation);
    const int hi = std::min(x.precision_end(), y.precision_end());
    int v_diff = 0;
    bool found = false;
    for (int pos = lo; pos < hi; ++pos) {
        if (x.digit_at(pos) != y.digit_at(pos)) {
            v_diff = pos;
            found = true;
            break;
        }
    }
    if (!found)
        throw InsufficientPrecision("neg_log_delta_padic: points agree to the known precision");

    // log^+|z| contributes max(0, -v(z))/e over log p; a center
    // indistinguishable from 0 is fine as long as |z| <= 1 is certain.
    auto log_plus_numerator = [&](const PAdicBallCode& z) -> long {
        std::optional<int> v = z.valuation();
        if (v) return std::max(0, -*v);
        if (z.precision_end() >= 0) return 0;
        throw InsufficientPrecision("neg_log_delta_padic: |point| vs 1 undecidable at this precision");
    };

    Rat coeff(static_cast<long>(v_diff) + log_plus_numerator(x) + log_plus_numerator(y), fld.e);
    return {coeff, fld.p};
}

}  // namespace robin
