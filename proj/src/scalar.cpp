#include "oridt/scalar.hpp"

#include <cctype>

#include "oridt/error.hpp"
#include "oridt/quiver.hpp"

namespace oridt {

ScalarV::ScalarV(long c) : num_(mpz_class(c)), den_(mpz_class(1)) {}

ScalarV::ScalarV(const mpz_class& c) : num_(c), den_(mpz_class(1)) {}

ScalarV::ScalarV(long k, Poly num, Poly den) : k_(k), num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    canonicalize();
}

ScalarV ScalarV::v_pow(long k) {
    ScalarV s(1);
    s.k_ = k;
    return s;
}

bool ScalarV::is_one() const {
    return k_ == 0 && num_.degree() == 0 && den_.degree() == 0 && num_[0] == 1 && den_[0] == 1;
}

void ScalarV::canonicalize() {
    if (num_.is_zero()) {
        k_ = 0;
        den_ = Poly(mpz_class(1));
        return;
    }
    const int vn = num_.valuation();
    const int vd = den_.valuation();
    if (vn) num_ = num_.shift_down(vn);
    if (vd) den_ = den_.shift_down(vd);
    k_ += vn - vd;
    if (den_.degree() > 0 || num_.degree() > 0) {
        Poly g = Poly::gcd(num_, den_);
        if (!(g.degree() == 0 && g[0] == 1)) {
            num_ = Poly::div_exact(num_, g);
            den_ = Poly::div_exact(den_, g);
        }
    } else {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num_[0].get_mpz_t(), den_[0].get_mpz_t());
        if (g != 1) {
            num_ = num_.div_exact(g);
            den_ = den_.div_exact(g);
        }
    }
    if (den_.lead() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

ScalarV ScalarV::operator-() const {
    ScalarV s = *this;
    s.num_ = -s.num_;
    return s;
}

ScalarV& ScalarV::operator+=(const ScalarV& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const long k = std::min(k_, o.k_);
    if (den_ == o.den_) {
        num_ = num_.shift_up(static_cast<int>(k_ - k)) + o.num_.shift_up(static_cast<int>(o.k_ - k));
        k_ = k;
        canonicalize();
        return *this;
    }
    const Poly g = Poly::gcd(den_, o.den_);
    const Poly d1 = Poly::div_exact(den_, g);
    const Poly d2 = Poly::div_exact(o.den_, g);
    num_ = num_.shift_up(static_cast<int>(k_ - k)) * d2 + o.num_.shift_up(static_cast<int>(o.k_ - k)) * d1;
    den_ = d1 * o.den_;
    k_ = k;
    canonicalize();
    return *this;
}

ScalarV& ScalarV::operator-=(const ScalarV& o) { return *this += -o; }

ScalarV& ScalarV::operator*=(const ScalarV& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = o;
    const Poly g1 = Poly::gcd(num_, o.den_);
    const Poly g2 = Poly::gcd(o.num_, den_);
    Poly n1 = Poly::div_exact(num_, g1);
    Poly d2 = Poly::div_exact(o.den_, g1);
    Poly n2 = Poly::div_exact(o.num_, g2);
    Poly d1 = Poly::div_exact(den_, g2);
    num_ = n1 * n2;
    den_ = d1 * d2;
    k_ += o.k_;
    if (den_.lead() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    return *this;
}

ScalarV ScalarV::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    ScalarV s;
    s.k_ = -k_;
    s.num_ = den_;
    s.den_ = num_;
    if (s.den_.lead() < 0) {
        s.num_ = -s.num_;
        s.den_ = -s.den_;
    }
    return s;
}

ScalarV& ScalarV::operator/=(const ScalarV& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
    return *this *= o.inverse();
}

ScalarV ScalarV::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    ScalarV result(1);
    ScalarV base = *this;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

ScalarV ScalarV::times_v(long k) const {
    if (is_zero()) return *this;
    ScalarV s = *this;
    s.k_ += k;
    return s;
}

ScalarV ScalarV::reflect() const {
    if (is_zero()) return *this;
    ScalarV s;
    s.k_ = k_;
    s.num_ = k_ % 2 == 0 ? num_.reflect() : -num_.reflect();
    s.den_ = den_.reflect();
    if (s.den_.lead() < 0) {
        s.num_ = -s.num_;
        s.den_ = -s.den_;
    }
    return s;
}

bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

std::pair<mpq_class, mpq_class> ScalarV::specialize(long p) const {
    if (!is_odd_prime(p)) {
        throw Error(ErrorKind::EvenPrime, "specialization requires an odd prime, got " + std::to_string(p));
    }
    const mpz_class P = p;
    const auto [a, b] = num_.eval_sqrt(P);
    const auto [c, d] = den_.eval_sqrt(P);
    if (c == 0 && d == 0) {
        throw Error(ErrorKind::PoleAtPoint, to_string() + " has a pole at v = sqrt(" + std::to_string(p) + ")");
    }
    const mpz_class norm = c * c - P * d * d;
    mpq_class x(a * c - P * b * d, norm);
    mpq_class y(b * c - a * d, norm);
    x.canonicalize();
    y.canonicalize();
    long k = k_;
    const long m = k >= 0 ? k / 2 : -((-k + 1) / 2);
    const bool odd = (k - 2 * m) != 0;
    mpq_class scale = 1;
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), P.get_mpz_t(), static_cast<unsigned long>(m >= 0 ? m : -m));
    scale = m >= 0 ? mpq_class(pw) : mpq_class(1, 1) / mpq_class(pw);
    if (odd) {
        const mpq_class nx = y * P;
        y = x;
        x = nx;
    }
    return {x * scale, y * scale};
}

namespace {

// Bare only when the denominator reads as a single factor: a constant or v^k.
std::string wrap(const Poly& p) {
    const std::string s = p.to_string();
    if (p.is_monomial() && (p.degree() == 0 || p[p.degree()] == 1)) return s;
    return "(" + s + ")";
}

}  // namespace

std::string ScalarV::to_string() const {
    if (is_zero()) return "0";
    const Poly n = k_ > 0 ? num_.shift_up(static_cast<int>(k_)) : num_;
    const Poly d = k_ < 0 ? den_.shift_up(static_cast<int>(-k_)) : den_;
    if (d.degree() == 0 && d[0] == 1) return n.to_string();
    std::string top = n.to_string();
    if (!n.is_monomial()) top = "(" + top + ")";
    return top + "/" + wrap(d);
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ScalarV run() {
        ScalarV r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorKind::ConfigError,
                    "cannot parse scalar '" + s_ + "' at offset " + std::to_string(pos_) + ": " + why);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    ScalarV expr() {
        ScalarV r;
        bool first = true;
        while (true) {
            bool neg = false;
            if (eat('-')) {
                neg = true;
            } else if (!first && !eat('+')) {
                break;
            } else if (first) {
                eat('+');
            }
            ScalarV t = term();
            r += neg ? -t : t;
            first = false;
        }
        return r;
    }
    ScalarV term() {
        ScalarV r = power();
        while (true) {
            if (eat('*')) {
                r *= power();
            } else if (eat('/')) {
                r /= power();
            } else {
                break;
            }
        }
        return r;
    }
    ScalarV power() {
        ScalarV b = atom();
        if (eat('^')) {
            bool neg = eat('-');
            if (!neg) eat('+');
            long e = integer();
            b = b.pow(neg ? -e : e);
        }
        return b;
    }
    long integer() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(s_.substr(start, pos_ - start));
    }
    ScalarV atom() {
        skip();
        if (eat('(')) {
            ScalarV r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (eat('v')) return ScalarV::v_pow(1);
        if (eat('q')) return ScalarV::v_pow(2);
        if (eat('-')) return -atom();
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected operand");
        return ScalarV(mpz_class(s_.substr(start, pos_ - start)));
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

ScalarV ScalarV::parse(const std::string& text) { return Parser(text).run(); }

ScalarV pochhammer(int n) {
    if (n < 0) throw Error(ErrorKind::OutOfRange, "pochhammer index must be nonnegative");
    ScalarV r(1);
    for (int i = 1; i <= n; ++i) r *= ScalarV(1) - ScalarV::v_pow(-2 * i);
    return r;
}

ScalarV pochhammer_q2(int n) {
    if (n < 0) throw Error(ErrorKind::OutOfRange, "pochhammer index must be nonnegative");
    ScalarV r(1);
    for (int i = 1; i <= n; ++i) r *= ScalarV(1) - ScalarV::v_pow(-4 * i);
    return r;
}

ScalarV pochhammer_dim(const QuiverWithDuality&, const std::vector<int>& d) {
    ScalarV r(1);
    for (int x : d) r *= pochhammer(x);
    return r;
}

ScalarV pochhammer_sigma(const QuiverWithDuality& q, const std::vector<int>& e) {
    if (!q.is_symmetric(e)) {
        throw Error(ErrorKind::NotSymmetric, "pochhammer_sigma needs a sigma-symmetric vector, got " + to_string(e));
    }
    ScalarV r(1);
    for (int i = 0; i < q.num_nodes(); ++i) {
        switch (q.node_class(i)) {
        case NodeClass::Fixed: r *= pochhammer_q2(e[i] / 2); break;
        case NodeClass::Plus: r *= pochhammer(e[i]); break;
        case NodeClass::Minus: break;
        }
    }
    return r;
}

ScalarV q_integer(int n) {
    if (n < 0) throw Error(ErrorKind::OutOfRange, "q-integer index must be nonnegative");
    std::vector<mpz_class> c(n > 0 ? 2 * n - 1 : 0, 0);
    for (int i = 0; i < n; ++i) c[2 * i] = 1;
    return ScalarV::from_poly(Poly(std::move(c)));
}

ScalarV q_binomial(int n, int k) {
    if (k < 0 || k > n) {
        throw Error(ErrorKind::OutOfRange,
                    "q-binomial needs 0 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
    // (q)_n / ((q)_k (q)_{n-k}), each factor 1 - q^i
    ScalarV r(1);
    for (int i = 1; i <= k; ++i) {
        r *= ScalarV(1) - ScalarV::q_pow(n - k + i);
        r /= ScalarV(1) - ScalarV::q_pow(i);
    }
    return r;
}

}  // namespace oridt
