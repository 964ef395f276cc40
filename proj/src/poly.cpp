#include "oridt/poly.hpp"

#include <stdexcept>

namespace oridt {

Poly::Poly(mpz_class c) {
    if (c != 0) c_.push_back(std::move(c));
}

Poly::Poly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(mpz_class c, int deg) {
    Poly p;
    if (c == 0) return p;
    p.c_.assign(deg + 1, 0);
    p.c_[deg] = std::move(c);
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != 0) return static_cast<int>(i);
    }
    return 0;
}

Poly Poly::shift_down(int k) const {
    if (k <= 0) return shift_up(-k);
    Poly p;
    if (static_cast<int>(c_.size()) <= k) return p;
    p.c_.assign(c_.begin() + k, c_.end());
    return p;
}

Poly Poly::shift_up(int k) const {
    if (k < 0) return shift_down(-k);
    if (is_zero() || k == 0) return *this;
    Poly p;
    p.c_.assign(k, 0);
    p.c_.insert(p.c_.end(), c_.begin(), c_.end());
    return p;
}

mpz_class Poly::content() const {
    mpz_class g = 0;
    for (const auto& x : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::primitive() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (lead() < 0) g = -g;
    return div_exact(g);
}

Poly Poly::div_exact(const mpz_class& c) const {
    Poly p = *this;
    for (auto& x : p.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    return p;
}

Poly Poly::reflect() const {
    Poly p = *this;
    for (std::size_t i = 1; i < p.c_.size(); i += 2) p.c_[i] = -p.c_[i];
    return p;
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& x : p.c_) x = -x;
    return p;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const mpz_class& c) {
    if (c == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly p;
    if (a.is_zero() || b.is_zero()) return p;
    p.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            mpz_addmul(p.c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
    }
    p.trim();
    return p;
}

Poly Poly::div_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero()) return a;
    if (a.degree() < b.degree()) throw std::domain_error("inexact polynomial division");
    std::vector<mpz_class> rem = a.c_;
    std::vector<mpz_class> quot(a.c_.size() - b.c_.size() + 1, 0);
    const int db = b.degree();
    mpz_class r;
    for (int k = a.degree() - db; k >= 0; --k) {
        mpz_class& top = rem[k + db];
        if (top == 0) continue;
        mpz_tdiv_qr(quot[k].get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), b.lead().get_mpz_t());
        if (r != 0) throw std::domain_error("inexact polynomial division");
        for (int j = 0; j <= db; ++j) {
            mpz_submul(rem[k + j].get_mpz_t(), quot[k].get_mpz_t(), b.c_[j].get_mpz_t());
        }
    }
    for (const auto& x : rem) {
        if (x != 0) throw std::domain_error("inexact polynomial division");
    }
    return Poly(std::move(quot));
}

namespace {

// Pseudo-remainder of a by b.
Poly prem(const Poly& a, const Poly& b) {
    std::vector<mpz_class> r = a.coeffs();
    const int db = b.degree();
    const mpz_class& lb = b.lead();
    int dr = a.degree();
    while (dr >= db && !r.empty()) {
        const mpz_class lr = r[dr];
        const int shift = dr - db;
        for (auto& x : r) x *= lb;
        for (int j = 0; j <= db; ++j) r[shift + j] -= lr * b[j];
        while (!r.empty() && r.back() == 0) r.pop_back();
        dr = static_cast<int>(r.size()) - 1;
    }
    return Poly(std::move(r));
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.primitive() * b.content();
    if (b.is_zero()) return a.primitive() * a.content();
    mpz_class c;
    const mpz_class ca = a.content();
    const mpz_class cb = b.content();
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    Poly x = a.primitive();
    Poly y = b.primitive();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        if (y.degree() == 0) {
            x = Poly(mpz_class(1));
            break;
        }
        Poly r = prem(x, y);
        x = std::move(y);
        y = r.primitive();
    }
    return x.primitive() * c;
}

std::pair<mpz_class, mpz_class> Poly::eval_sqrt(const mpz_class& p) const {
    mpz_class even = 0;
    mpz_class odd = 0;
    mpz_class pw = 1;
    for (int i = 0; i <= degree(); i += 2) {
        even += c_[i] * pw;
        if (i + 1 <= degree()) odd += c_[i + 1] * pw;
        pw *= p;
    }
    return {even, odd};
}

bool Poly::is_monomial() const {
    int nonzero = 0;
    for (const auto& x : c_) nonzero += x != 0;
    return nonzero == 1;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& x = c_[i];
        if (x == 0) continue;
        mpz_class ax = abs(x);
        if (!out.empty()) {
            out += x < 0 ? "-" : "+";
        } else if (x < 0) {
            out += "-";
        }
        if (i == 0) {
            out += ax.get_str();
            continue;
        }
        if (ax != 1) out += ax.get_str() + "*";
        out += "v";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

}  // namespace oridt
