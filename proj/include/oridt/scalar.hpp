#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "oridt/poly.hpp"

namespace oridt {

class QuiverWithDuality;

// Exact element of Q(v), v^2 = q, stored as v^k * num / den in lowest terms.
// Canonical: gcd(num, den) = 1 (content included), den has positive leading
// coefficient, num and den have nonzero constant terms. Zero is 0/1 with k = 0.
class ScalarV {
public:
    ScalarV() : num_(mpz_class(0)), den_(mpz_class(1)) {}
    ScalarV(long c);  // NOLINT(google-explicit-constructor)
    explicit ScalarV(const mpz_class& c);
    ScalarV(long k, Poly num, Poly den);

    static ScalarV v_pow(long k);
    // q^{k/2}, the exponent given in units of v.
    static ScalarV q_half_pow(long k) { return v_pow(k); }
    static ScalarV q_pow(long k) { return v_pow(2 * k); }
    static ScalarV from_poly(const Poly& p) { return ScalarV(0, p, Poly(mpz_class(1))); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    long offset() const { return k_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    ScalarV operator-() const;
    ScalarV& operator+=(const ScalarV& o);
    ScalarV& operator-=(const ScalarV& o);
    ScalarV& operator*=(const ScalarV& o);
    ScalarV& operator/=(const ScalarV& o);
    friend ScalarV operator+(ScalarV a, const ScalarV& b) { return a += b; }
    friend ScalarV operator-(ScalarV a, const ScalarV& b) { return a -= b; }
    friend ScalarV operator*(ScalarV a, const ScalarV& b) { return a *= b; }
    friend ScalarV operator/(ScalarV a, const ScalarV& b) { return a /= b; }
    friend bool operator==(const ScalarV& a, const ScalarV& b) {
        return a.k_ == b.k_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

    ScalarV inverse() const;
    ScalarV pow(long n) const;
    // Multiply by v^k without touching the polynomials.
    ScalarV times_v(long k) const;

    // f(-v)
    ScalarV reflect() const;
    // True iff f(-v) = f(v), that is f is a rational function of q alone.
    bool is_even_in_v() const { return reflect() == *this; }

    // Value at v = sqrt(p) as (A, B) with f(sqrt p) = A + B sqrt(p); p an odd prime.
    std::pair<mpq_class, mpq_class> specialize(long p) const;

    // Canonical text "(v^3+v-1)/v^2".
    std::string to_string() const;
    // Accepts the canonical form and general expressions in v, integers, + - * / ^ and parentheses.
    static ScalarV parse(const std::string& text);

private:
    void canonicalize();

    long k_ = 0;
    Poly num_;
    Poly den_;
};

// (q^{-1})_n = prod_{i=1..n} (1 - q^{-i})
ScalarV pochhammer(int n);
// (q^{-2})_n
ScalarV pochhammer_q2(int n);
// (q^{-1})_d = prod_i (q^{-1})_{d_i}
ScalarV pochhammer_dim(const QuiverWithDuality& q, const std::vector<int>& d);
// prod_{fixed i} (q^{-2})_{floor(e_i/2)} * prod_{i in Q0+} (q^{-1})_{e_i}
ScalarV pochhammer_sigma(const QuiverWithDuality& q, const std::vector<int>& e);

// [n]_q = (q^n - 1)/(q - 1)
ScalarV q_integer(int n);
// Gaussian binomial in q
ScalarV q_binomial(int n, int k);

bool is_odd_prime(long p);

}  // namespace oridt
