#pragma once

#include <robin/rational.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace robin {

// Exact multiple of log p: value = coeff * log(prime). All p-adic energies in
// this library are of this shape, so they compare and combine exactly as long
// as they stay over one prime. Mixed-prime arithmetic is deliberately absent;
// cross-place sums happen in floating point at the very end.
struct ScaledLog {
    Rat coeff{0};
    long prime{2};

    ScaledLog() = default;
    ScaledLog(Rat c, long p) : coeff(std::move(c)), prime(p) {
        if (p < 2) throw std::invalid_argument("ScaledLog: prime must be >= 2");
    }

    double to_double() const { return rat_to_double(coeff) * std::log(static_cast<double>(prime)); }

    /// "3/4 * log 2" style rendering.
    std::string str() const { return rat_to_string(coeff) + " * log " + std::to_string(prime); }

    friend ScaledLog operator+(const ScaledLog& a, const ScaledLog& b) {
        require_same_prime(a, b, "+");
        return {a.coeff + b.coeff, a.prime};
    }
    friend ScaledLog operator-(const ScaledLog& a, const ScaledLog& b) {
        require_same_prime(a, b, "-");
        return {a.coeff - b.coeff, a.prime};
    }
    friend ScaledLog operator-(const ScaledLog& a) { return {-a.coeff, a.prime}; }
    friend ScaledLog operator*(const Rat& s, const ScaledLog& a) { return {s * a.coeff, a.prime}; }
    friend ScaledLog operator*(const ScaledLog& a, const Rat& s) { return s * a; }

    friend bool operator==(const ScaledLog& a, const ScaledLog& b) {
        require_same_prime(a, b, "==");
        return a.coeff == b.coeff;
    }
    friend bool operator!=(const ScaledLog& a, const ScaledLog& b) { return !(a == b); }
    friend bool operator<(const ScaledLog& a, const ScaledLog& b) {
        require_same_prime(a, b, "<");
        return a.coeff < b.coeff;
    }

  private:
    static void require_same_prime(const ScaledLog& a, const ScaledLog& b, const char* op) {
        if (a.prime != b.prime)
            throw std::invalid_argument(std::string("ScaledLog: mixed primes in '") + op +
                                        "' (" + std::to_string(a.prime) + " vs " +
                                        std::to_string(b.prime) + ")");
    }
};

}  // namespace robin
