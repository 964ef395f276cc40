#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace oridt {

// Dense polynomial in v over Z, coefficients stored low degree first.
class Poly {
public:
    Poly() = default;
    explicit Poly(mpz_class c);
    explicit Poly(std::vector<mpz_class> coeffs);

    static Poly monomial(mpz_class c, int deg);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const mpz_class& operator[](int i) const { return c_[i]; }
    const mpz_class& lead() const { return c_.back(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    // Lowest exponent with nonzero coefficient; 0 for the zero polynomial.
    int valuation() const;
    Poly shift_down(int k) const;
    Poly shift_up(int k) const;

    mpz_class content() const;
    Poly primitive() const;
    // Exact division by an integer; the caller guarantees divisibility.
    Poly div_exact(const mpz_class& c) const;
    // p(-v)
    Poly reflect() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const mpz_class& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const mpz_class& c) { return a *= c; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    // Exact quotient a / b over Z; throws if b does not divide a.
    static Poly div_exact(const Poly& a, const Poly& b);
    // Greatest common divisor over Z, positive leading coefficient.
    static Poly gcd(const Poly& a, const Poly& b);

    // Evaluate at v = sqrt(p): returns (A, B) with value A + B sqrt(p).
    std::pair<mpz_class, mpz_class> eval_sqrt(const mpz_class& p) const;

    std::string to_string() const;
    bool is_monomial() const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

}  // namespace oridt
