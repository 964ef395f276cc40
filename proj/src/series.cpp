#include "oridt/series.hpp"

#include <omp.h>

#include <algorithm>

namespace oridt {

TorusSeries TorusSeries::unit(const QuiverWithDuality& q, int bound) {
    TorusSeries s;
    s.bound = bound;
    s.terms.emplace(q.zero(), ScalarV(1));
    return s;
}

ScalarV TorusSeries::coeff(const DimVector& d) const {
    auto it = terms.find(d);
    return it == terms.end() ? ScalarV() : it->second;
}

void TorusSeries::add(const DimVector& d, const ScalarV& c) {
    if (c.is_zero() || total_dim(d) > bound) return;
    auto [it, inserted] = terms.emplace(d, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

ModuleSeries ModuleSeries::vacuum(const QuiverWithDuality& q, int bound) {
    ModuleSeries s;
    s.bound = bound;
    s.terms.emplace(q.zero(), ScalarV(1));
    return s;
}

ScalarV ModuleSeries::coeff(const DimVector& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? ScalarV() : it->second;
}

void ModuleSeries::add(const DimVector& e, const ScalarV& c) {
    if (c.is_zero() || total_dim(e) > bound) return;
    auto [it, inserted] = terms.emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

namespace {

void check_bounds(int a, int b) {
    if (a != b) {
        throw Error(ErrorKind::BoundMismatch,
                    "series bounds differ: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

using Entry = std::pair<const DimVector*, const ScalarV*>;

std::vector<Entry> entries(const std::map<DimVector, ScalarV>& m) {
    std::vector<Entry> out;
    out.reserve(m.size());
    for (const auto& [k, v] : m) out.emplace_back(&k, &v);
    return out;
}

}  // namespace

TorusSeries torus_mul(const QuiverWithDuality& q, const TorusSeries& a, const TorusSeries& b,
                      Exec exec) {
    check_bounds(a.bound, b.bound);
    TorusSeries out;
    out.bound = a.bound;
    const auto ea = entries(a.terms);
    const auto eb = entries(b.terms);
    auto row = [&](const Entry& x, TorusSeries& acc) {
        const int tx = total_dim(*x.first);
        for (const auto& y : eb) {
            if (tx + total_dim(*y.first) > out.bound) continue;
            const long tw = skew_form(q, *x.first, *y.first);
            acc.add(add(*x.first, *y.first), (*x.second * *y.second).times_v(tw));
        }
    };
    if (exec == Exec::Serial || ea.size() < 4) {
        for (const auto& x : ea) row(x, out);
        return out;
    }
    const int n = static_cast<int>(ea.size());
    std::vector<TorusSeries> partial(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        partial[i].bound = out.bound;
        row(ea[i], partial[i]);
    }
    // merge in index order so the result does not depend on scheduling
    for (const auto& p : partial) {
        for (const auto& [k, v] : p.terms) out.add(k, v);
    }
    return out;
}

TorusSeries torus_add(const TorusSeries& a, const TorusSeries& b) {
    check_bounds(a.bound, b.bound);
    TorusSeries out = a;
    for (const auto& [k, v] : b.terms) out.add(k, v);
    return out;
}

TorusSeries torus_scale(const TorusSeries& a, const ScalarV& c) {
    TorusSeries out;
    out.bound = a.bound;
    if (c.is_zero()) return out;
    for (const auto& [k, v] : a.terms) out.terms.emplace(k, v * c);
    return out;
}

TorusSeries torus_inverse(const QuiverWithDuality& q, const TorusSeries& a) {
    const ScalarV c0 = a.coeff(q.zero());
    if (c0.is_zero()) throw Error(ErrorKind::DivisionByZero, "series with zero constant term is not invertible");
    const ScalarV inv0 = c0.inverse();
    // a = c0 (1 + x) with x of positive degree; a^{-1} = c0^{-1} sum_k (-x)^k
    TorusSeries minus_x;
    minus_x.bound = a.bound;
    for (const auto& [k, v] : a.terms) {
        if (!is_zero(k)) minus_x.terms.emplace(k, -(v * inv0));
    }
    TorusSeries sum = TorusSeries::unit(q, a.bound);
    TorusSeries power = TorusSeries::unit(q, a.bound);
    for (int k = 1; k <= a.bound && !minus_x.terms.empty(); ++k) {
        power = torus_mul(q, power, minus_x);
        if (power.terms.empty()) break;
        sum = torus_add(sum, power);
    }
    return torus_scale(sum, inv0);
}

TorusSeries torus_pow(const QuiverWithDuality& q, const TorusSeries& a, long n) {
    if (n < 0) return torus_pow(q, torus_inverse(q, a), -n);
    TorusSeries result = TorusSeries::unit(q, a.bound);
    TorusSeries base = a;
    while (n) {
        if (n & 1) result = torus_mul(q, result, base);
        n >>= 1;
        if (n) base = torus_mul(q, base, base);
    }
    return result;
}

TorusSeries restrict(const TorusSeries& a, int bound) {
    TorusSeries out;
    out.bound = bound;
    for (const auto& [k, v] : a.terms) {
        if (total_dim(k) <= bound) out.terms.emplace(k, v);
    }
    return out;
}

ModuleSeries module_act(const QuiverWithDuality& q, const TorusSeries& a, const ModuleSeries& m,
                        Exec exec) {
    check_bounds(a.bound, m.bound);
    ModuleSeries out;
    out.bound = a.bound;
    const auto ea = entries(a.terms);
    const auto em = entries(m.terms);
    auto row = [&](const Entry& x, ModuleSeries& acc) {
        const DimVector h = hyperbolic_sum(q, *x.first);
        const int th = total_dim(h);
        const long et = e_tilde(q, *x.first);
        for (const auto& y : em) {
            if (th + total_dim(*y.first) > out.bound) continue;
            const long tw = skew_form(q, *x.first, *y.first) - et;
            acc.add(add(h, *y.first), (*x.second * *y.second).times_v(tw));
        }
    };
    if (exec == Exec::Serial || ea.size() < 4) {
        for (const auto& x : ea) row(x, out);
        return out;
    }
    const int n = static_cast<int>(ea.size());
    std::vector<ModuleSeries> partial(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        partial[i].bound = out.bound;
        row(ea[i], partial[i]);
    }
    for (const auto& p : partial) {
        for (const auto& [k, v] : p.terms) out.add(k, v);
    }
    return out;
}

ModuleSeries module_add(const ModuleSeries& a, const ModuleSeries& b) {
    check_bounds(a.bound, b.bound);
    ModuleSeries out = a;
    for (const auto& [k, v] : b.terms) out.add(k, v);
    return out;
}

ModuleSeries module_scale(const ModuleSeries& a, const ScalarV& c) {
    ModuleSeries out;
    out.bound = a.bound;
    if (c.is_zero()) return out;
    for (const auto& [k, v] : a.terms) out.terms.emplace(k, v * c);
    return out;
}

ModuleSeries restrict(const ModuleSeries& a, int bound) {
    ModuleSeries out;
    out.bound = bound;
    for (const auto& [k, v] : a.terms) {
        if (total_dim(k) <= bound) out.terms.emplace(k, v);
    }
    return out;
}

namespace {

std::optional<DimVector> first_diff(const std::map<DimVector, ScalarV>& a,
                                    const std::map<DimVector, ScalarV>& b) {
    std::vector<DimVector> keys;
    for (const auto& [k, v] : a) keys.push_back(k);
    for (const auto& [k, v] : b) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), DimLess{});
    for (const auto& k : keys) {
        auto ia = a.find(k);
        auto ib = b.find(k);
        if (ia == a.end() || ib == b.end() || !(ia->second == ib->second)) return k;
    }
    return std::nullopt;
}

}  // namespace

std::optional<DimVector> first_difference(const TorusSeries& a, const TorusSeries& b) {
    return first_diff(a.terms, b.terms);
}

std::optional<DimVector> first_difference(const ModuleSeries& a, const ModuleSeries& b) {
    return first_diff(a.terms, b.terms);
}

TorusSeries qdilog(const QuiverWithDuality& q, const DimVector& d, DilogBase base, long shift_v,
                   int bound) {
    if (is_zero(d)) throw Error(ErrorKind::ZeroVector, "dilogarithm argument x_0");
    const long b = base == DilogBase::Q ? 2 : 4;  // base = v^b
    TorusSeries out = TorusSeries::unit(q, bound);
    const int td = total_dim(d);
    for (long n = 1; n * td <= bound; ++n) {
        ScalarV den(1);
        for (long k = 0; k < n; ++k) den *= ScalarV::v_pow(b * n) - ScalarV::v_pow(b * k);
        const ScalarV c = ScalarV::v_pow(b * n * n / 2 + n * shift_v) / den;
        out.add(scale(d, static_cast<int>(n)), c);
    }
    return out;
}

TorusSeries dilog_product(const QuiverWithDuality& q, const std::vector<DilogFactor>& factors,
                          int bound) {
    return rescale_dilog_product(q, factors, [](const DimVector&) { return 0L; }, bound);
}

TorusSeries rescale_dilog_product(const QuiverWithDuality& q, const std::vector<DilogFactor>& factors,
                                  const std::function<long(const DimVector&)>& rule, int bound) {
    TorusSeries out = TorusSeries::unit(q, bound);
    for (const auto& f : factors) {
        if (f.exponent == 0 || total_dim(f.d) > bound) continue;
        const TorusSeries e = qdilog(q, f.d, f.base, f.shift_v + rule(f.d), bound);
        out = torus_mul(q, out, torus_pow(q, e, f.exponent));
    }
    return out;
}

}  // namespace oridt
