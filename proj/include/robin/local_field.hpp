#pragma once

#include <robin/rational.hpp>
#include <robin/scaled_log.hpp>

#include <stdexcept>

namespace robin {

inline bool is_prime(long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// A non-archimedean local field K/Q_p given by the residue characteristic p,
// the ramification index e and the residue degree f. The residue field has
// order q = p^f and the uniformizer satisfies |pi| = p^(-1/e), i.e.
// -log|pi| = (log p)/e.
struct LocalFieldSpec {
    long p;
    int e;
    int f;

    explicit LocalFieldSpec(long p_, int e_ = 1, int f_ = 1) : p(p_), e(e_), f(f_) {
        if (!is_prime(p)) throw std::invalid_argument("LocalFieldSpec: p must be prime");
        if (e < 1 || f < 1) throw std::invalid_argument("LocalFieldSpec: e, f must be >= 1");
        long acc = 1;
        for (int i = 0; i < f; ++i) {
            if (acc > (1L << 31) / p) throw std::invalid_argument("LocalFieldSpec: q = p^f too large");
            acc *= p;
        }
        q_ = acc;
    }

    long q() const { return q_; }

    /// -log|pi| = (1/e) log p, an exact positive quantity.
    ScaledLog neg_log_uniformizer_abs() const { return {Rat(1, e), p}; }

    friend bool operator==(const LocalFieldSpec& a, const LocalFieldSpec& b) {
        return a.p == b.p && a.e == b.e && a.f == b.f;
    }
    friend bool operator!=(const LocalFieldSpec& a, const LocalFieldSpec& b) { return !(a == b); }

  private:
    long q_;
};

}  // namespace robin
