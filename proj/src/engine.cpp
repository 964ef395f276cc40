#include "oridt/engine.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>

#include "json.hpp"

namespace oridt {

namespace {

const Slope kInfinite(std::numeric_limits<long long>::max() / 4, 1);

// coefficient of x_d in E_q(x_d)
ScalarV dilog_unit() { return ScalarV::v_pow(1) / (ScalarV::v_pow(2) - ScalarV(1)); }

}  // namespace

std::optional<long> as_integer(const ScalarV& s) {
    if (s.is_zero()) return 0;
    if (s.offset() != 0 || s.num().degree() != 0 || s.den().degree() != 0 || s.den()[0] != 1) {
        return std::nullopt;
    }
    if (!s.num()[0].fits_slong_p()) return std::nullopt;
    return s.num()[0].get_si();
}

PrimitiveWcf primitive_wcf(const QuiverWithDuality& q, const DimVector& d, const DimVector& e,
                           long omega_d, long omega_sigma_e) {
    PrimitiveWcf r;
    if (is_zero(d) || !is_primitive(d)) r.warnings.push_back("d is not primitive");
    if (!is_zero(e) && !is_primitive(e)) r.warnings.push_back("e is not primitive");
    if (q.sigma(d) == d) r.warnings.push_back("d is sigma-symmetric");
    if (d == e || q.sigma(d) == e) r.warnings.push_back("d, sigma(d), e are not distinct");
    if (!is_admissible_selfdual(q, e)) r.warnings.push_back("e is not admissible");
    r.I = skew_form(q, e, d) + e_tilde(q, d);
    const long sign = ((r.I - 1) % 2 == 0) ? 1 : -1;
    r.delta = sign * r.I * omega_d * omega_sigma_e;
    return r;
}

template <class Map, class Key>
std::optional<ScalarV> DtEngine::lookup(const Stability& theta, Map Memo::*field, const Key& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto mt = memo_.find(theta);
    if (mt == memo_.end()) return std::nullopt;
    const Map& m = mt->second.*field;
    auto it = m.find(key);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

template <class Map, class Key>
ScalarV DtEngine::store(const Stability& theta, Map Memo::*field, const Key& key, const ScalarV& value) {
    std::lock_guard<std::mutex> lock(mu_);
    Map& m = memo_[theta].*field;
    return m.emplace(key, value).first->second;
}

ScalarV DtEngine::a_total(const DimVector& d) const {
    return ScalarV::v_pow(-euler_form(q_, d, d)) / pochhammer_dim(q_, d);
}

ScalarV DtEngine::a_sigma_total(const DimVector& e) const {
    if (!is_admissible_selfdual(q_, e)) return ScalarV();
    return ScalarV::v_pow(-sd_euler(q_, e)) / pochhammer_sigma(q_, e);
}

void DtEngine::require_compatible(const Stability& theta) const {
    if (!is_sigma_compatible(q_, theta)) {
        throw Error(ErrorKind::NotSigmaCompatible, "stability is not sigma-compatible");
    }
}

void DtEngine::require_admissible(const DimVector& e) const {
    if (!is_admissible_selfdual(q_, e)) {
        throw Error(ErrorKind::Inadmissible, to_string(e) + " is not an admissible self-dual dimension vector");
    }
}

ScalarV DtEngine::hn_tail(const Stability& theta, const DimVector& d, const Slope& mu) {
    if (is_zero(d)) return ScalarV(1);
    const auto key = std::make_pair(d, mu);
    if (auto hit = lookup(theta, &Memo::hn, key)) return *hit;
    ScalarV sum;
    for (const DimVector& d1 : enumerate_below(d)) {
        const Slope m1 = slope(theta, d1);
        if (!(m1 < mu)) continue;
        const DimVector rest = sub(d, d1);
        const ScalarV a = a_semistable(theta, d1);
        if (a.is_zero()) continue;
        const ScalarV tail = hn_tail(theta, rest, m1);
        if (tail.is_zero()) continue;
        sum += (a * tail).times_v(skew_form(q_, d1, rest));
    }
    return store(theta, &Memo::hn, key, sum);
}

ScalarV DtEngine::a_semistable(const Stability& theta, const DimVector& d) {
    if (is_zero(d)) throw Error(ErrorKind::ZeroDimVector, "semistable series at the zero vector");
    if (auto hit = lookup(theta, &Memo::ss, d)) return *hit;
    ScalarV r = a_total(d);
    for (const DimVector& d1 : enumerate_below(d)) {
        if (d1 == d) continue;
        const Slope m1 = slope(theta, d1);
        const DimVector rest = sub(d, d1);
        const ScalarV a = a_semistable(theta, d1);
        if (a.is_zero()) continue;
        const ScalarV tail = hn_tail(theta, rest, m1);
        if (tail.is_zero()) continue;
        r -= (a * tail).times_v(skew_form(q_, d1, rest));
    }
    return store(theta, &Memo::ss, d, r);
}

std::vector<Slope> DtEngine::slopes(const Stability& theta, int bound, bool positive_only) {
    std::set<Slope> s;
    for (const auto& d : enumerate_dimvectors(q_, bound)) {
        const Slope m = slope(theta, d);
        if (!positive_only || m.is_positive()) s.insert(m);
    }
    return {s.rbegin(), s.rend()};
}

TorusSeries DtEngine::a_slope(const Stability& theta, const Slope& mu, int bound) {
    TorusSeries out = TorusSeries::unit(q_, bound);
    for (const auto& d : enumerate_dimvectors(q_, bound)) {
        if (slope(theta, d) == mu) out.add(d, a_semistable(theta, d));
    }
    return out;
}

TorusSeries DtEngine::positive_slope_product(const Stability& theta, int bound) {
    TorusSeries out = TorusSeries::unit(q_, bound);
    for (const Slope& mu : slopes(theta, bound, true)) {
        out = torus_mul(q_, out, a_slope(theta, mu, bound));
    }
    return out;
}

ScalarV DtEngine::sigma_hn_tail(const Stability& theta, const DimVector& e, const Slope& mu) {
    const auto key = std::make_pair(e, mu);
    if (auto hit = lookup(theta, &Memo::shn, key)) return *hit;
    ScalarV sum = a_sigma_semistable_rec(theta, e);
    if (!is_zero(e)) {
        for (const DimVector& d1 : enumerate_below(e)) {
            const DimVector h = hyperbolic_sum(q_, d1);
            if (!leq(h, e)) continue;
            const Slope m1 = slope(theta, d1);
            if (!m1.is_positive() || !(m1 < mu)) continue;
            const ScalarV a = a_semistable(theta, d1);
            if (a.is_zero()) continue;
            const DimVector rest = sub(e, h);
            const ScalarV tail = sigma_hn_tail(theta, rest, m1);
            if (tail.is_zero()) continue;
            sum += (a * tail).times_v(skew_form(q_, d1, rest) - e_tilde(q_, d1));
        }
    }
    return store(theta, &Memo::shn, key, sum);
}

ScalarV DtEngine::a_sigma_semistable_rec(const Stability& theta, const DimVector& e) {
    require_compatible(theta);
    require_admissible(e);
    if (is_zero(e)) return ScalarV(1);
    if (auto hit = lookup(theta, &Memo::sss, e)) return *hit;
    ScalarV r = a_sigma_total(e);
    for (const DimVector& d1 : enumerate_below(e)) {
        const DimVector h = hyperbolic_sum(q_, d1);
        if (!leq(h, e)) continue;
        const Slope m1 = slope(theta, d1);
        if (!m1.is_positive()) continue;
        const ScalarV a = a_semistable(theta, d1);
        if (a.is_zero()) continue;
        const DimVector rest = sub(e, h);
        const ScalarV tail = sigma_hn_tail(theta, rest, m1);
        if (tail.is_zero()) continue;
        r -= (a * tail).times_v(skew_form(q_, d1, rest) - e_tilde(q_, d1));
    }
    return store(theta, &Memo::sss, e, r);
}

ScalarV DtEngine::a_sigma_semistable_closed(const Stability& theta, const DimVector& e) {
    require_compatible(theta);
    require_admissible(e);
    if (auto hit = lookup(theta, &Memo::closed, e)) return *hit;
    const long Ee = sd_euler(q_, e);
    ScalarV total;

    // Tuples (d_1..d_n; d_inf) with mu(d_1 + .. + d_k) > 0 and sum H(d_i) + d_inf = e.
    // exponent (in v): E(e) - 2 sum_{i<j} chi(d_j, d_i) - 2 chi(d_inf, D) - 2 E(D)
    //                  - 2 sum_i chi(d_i, d_i) - 2 E(d_inf), D = sum d_i
    const auto below = enumerate_below(e);
    struct State {
        DimVector D;
        DimVector used;  // sum of H(d_i)
        long cross = 0;  // sum_{i<j} chi(d_j, d_i)
        long diag = 0;   // sum_i chi(d_i, d_i)
        int n = 0;
        ScalarV poch{1};
    };
    std::function<void(const State&)> walk = [&](const State& s) {
        const DimVector dinf = sub(e, s.used);
        if (is_admissible_selfdual(q_, dinf)) {
            const long ex = Ee - 2 * s.cross - 2 * euler_form(q_, dinf, s.D) - 2 * sd_euler(q_, s.D) -
                            2 * s.diag - 2 * sd_euler(q_, dinf);
            ScalarV term = ScalarV::v_pow(ex) / (s.poch * pochhammer_sigma(q_, dinf));
            total += s.n % 2 == 0 ? term : -term;
        }
        const DimVector room = dinf;
        for (const DimVector& d : below) {
            if (!leq(d, room)) continue;
            const DimVector h = hyperbolic_sum(q_, d);
            if (!leq(h, room)) continue;
            State next;
            next.D = add(s.D, d);
            if (!slope(theta, next.D).is_positive()) continue;
            next.used = add(s.used, h);
            next.cross = s.cross + euler_form(q_, d, s.D);
            next.diag = s.diag + euler_form(q_, d, d);
            next.n = s.n + 1;
            next.poch = s.poch * pochhammer_dim(q_, d);
            walk(next);
        }
    };
    State start;
    start.D = q_.zero();
    start.used = q_.zero();
    walk(start);
    return store(theta, &Memo::closed, e, total);
}

ModuleSeries DtEngine::orientifold_series(const Stability& theta, int bound) {
    require_compatible(theta);
    ModuleSeries out;
    out.bound = bound;
    for (const auto& e : enumerate_selfdual(q_, bound)) out.add(e, a_sigma_semistable_rec(theta, e));
    return out;
}

ModuleSeries DtEngine::orientifold_series_closed(const Stability& theta, int bound) {
    require_compatible(theta);
    ModuleSeries out;
    out.bound = bound;
    for (const auto& e : enumerate_selfdual(q_, bound)) out.add(e, a_sigma_semistable_closed(theta, e));
    return out;
}

ModuleSeries DtEngine::a_sigma_total_series(int bound) const {
    ModuleSeries out;
    out.bound = bound;
    for (const auto& e : enumerate_selfdual(q_, bound)) out.add(e, a_sigma_total(e));
    return out;
}

WallCrossReport DtEngine::wallcross_check(const Stability& theta, const Stability& theta2, int bound) {
    require_compatible(theta);
    require_compatible(theta2);
    WallCrossReport r;
    r.bound = bound;
    r.left = module_act(q_, positive_slope_product(theta, bound), orientifold_series_closed(theta, bound));
    r.right = module_act(q_, positive_slope_product(theta2, bound), orientifold_series_closed(theta2, bound));
    r.first_difference = first_difference(r.left, r.right);
    r.equal = !r.first_difference;
    return r;
}

OmegaTable DtEngine::dt_factorize(const Stability& theta, int bound) {
    OmegaTable t;
    t.bound = bound;
    t.theta = theta;
    const FiniteTypeVerdict ft = is_finite_type(q_);
    t.finite_type = ft.finite;
    t.verdict = ft.finite ? to_string(ft.cls) : "not finite type: " + ft.reason;
    if (!ft.finite) t.warnings.push_back("NotFiniteType: " + ft.reason);
    const ScalarV unit = dilog_unit();
    const auto dims = enumerate_dimvectors(q_, bound);
    for (const Slope& mu : slopes(theta, bound, false)) {
        TorusSeries rest = a_slope(theta, mu, bound);
        for (const DimVector& d : dims) {
            if (slope(theta, d) != mu) continue;
            const ScalarV c = rest.coeff(d);
            if (c.is_zero()) continue;
            const auto omega = as_integer(c / unit);
            if (!omega) {
                t.failed_at = d;
                t.residual = (c / unit).to_string();
                return t;
            }
            t.omega.emplace(d, *omega);
            rest = torus_mul(q_, torus_pow(q_, qdilog(q_, d, DilogBase::Q, 0, bound), -*omega), rest);
        }
        if (!(rest == TorusSeries::unit(q_, bound))) {
            t.warnings.push_back("slope " + mu.to_string() + " left a nonzero residual");
        }
    }
    return t;
}

std::vector<DilogFactor> DtEngine::slope_factors(const OmegaTable& t, const Slope& mu,
                                                 DilogBase base) const {
    std::vector<DimVector> keys;
    for (const auto& [d, w] : t.omega) {
        if (w != 0 && slope(t.theta, d) == mu) keys.push_back(d);
    }
    std::sort(keys.begin(), keys.end(), DimLess{});
    std::vector<DilogFactor> out;
    for (const auto& d : keys) out.push_back({d, base, 0, t.omega.at(d)});
    return out;
}

TorusSeries DtEngine::expand_slope(const OmegaTable& t, const Slope& mu, int bound) const {
    return dilog_product(q_, slope_factors(t, mu, DilogBase::Q), bound);
}

ModuleSeries DtEngine::expand_orientifold(const OmegaTable& t, int bound) const {
    const auto factors = slope_factors(t, Slope(0, 1), DilogBase::Q2);
    ModuleSeries out;
    out.bound = bound;
    for (const auto& [e, w] : t.omega_sigma) {
        if (w == 0 || total_dim(e) > bound) continue;
        const TorusSeries f = rescale_dilog_product(
            q_, factors,
            [&](const DimVector& d) { return 1 - 2 * euler_form(q_, e, d) - 2 * sd_euler(q_, d); }, bound);
        ModuleSeries xi;
        xi.bound = bound;
        xi.add(e, ScalarV(1));
        out = module_add(out, module_scale(module_act(q_, f, xi), ScalarV(w)));
    }
    return out;
}

OmegaTable DtEngine::oridt_factorize(const Stability& theta, int bound) {
    require_compatible(theta);
    OmegaTable t = dt_factorize(theta, bound);
    if (!t.integral()) return t;
    GenericityVerdict gv = is_sigma_generic(q_, theta, bound, [&](const DimVector& d) {
        return !a_semistable(theta, d).is_zero();
    });
    if (!gv.generic) t.warnings.push_back("stability is not sigma-generic: " + gv.reason);
    const auto factors = slope_factors(t, Slope(0, 1), DilogBase::Q2);
    ModuleSeries rest = orientifold_series(theta, bound);
    for (const DimVector& e : enumerate_selfdual(q_, bound)) {
        const ScalarV c = rest.coeff(e);
        if (c.is_zero()) continue;
        const auto omega = as_integer(c);
        if (!omega) {
            t.failed_at = e;
            t.residual = c.to_string();
            return t;
        }
        if (*omega < 0) t.warnings.push_back("negative orientifold invariant at " + to_string(e));
        t.omega_sigma.emplace(e, *omega);
        const TorusSeries f = rescale_dilog_product(
            q_, factors,
            [&](const DimVector& d) { return 1 - 2 * euler_form(q_, e, d) - 2 * sd_euler(q_, d); }, bound);
        ModuleSeries xi;
        xi.bound = bound;
        xi.add(e, ScalarV(*omega));
        rest = module_add(rest, module_scale(module_act(q_, f, xi), ScalarV(-1)));
    }
    return t;
}

std::size_t DtEngine::cache_size() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::size_t n = 0;
    for (const auto& [theta, m] : memo_) n += m.ss.size() + m.sss.size() + m.closed.size();
    return n;
}

namespace {

std::filesystem::path cache_file(const std::string& dir, const QuiverWithDuality& q) {
    return std::filesystem::path(dir) / ("oridt-" + q.fingerprint() + ".json");
}

}  // namespace

void DtEngine::save_cache(const std::string& dir) const {
    nlohmann::json j;
    j["fingerprint"] = q_.fingerprint();
    nlohmann::json entries = nlohmann::json::array();
    {
        std::lock_guard<std::mutex> lock(mu_);
        for (const auto& [theta, m] : memo_) {
            auto dump = [&](const std::map<DimVector, ScalarV>& table, const char* kind) {
                for (const auto& [d, v] : table) {
                    entries.push_back({{"theta", theta}, {"kind", kind}, {"d", d}, {"value", v.to_string()}});
                }
            };
            dump(m.ss, "ss");
            dump(m.sss, "sss");
            dump(m.closed, "closed");
        }
    }
    j["entries"] = std::move(entries);
    std::filesystem::create_directories(dir);
    const auto path = cache_file(dir, q_);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump() << "\n";
    }
    std::filesystem::rename(tmp, path);
}

void DtEngine::load_cache(const std::string& dir) {
    const auto path = cache_file(dir, q_);
    std::ifstream in(path);
    if (!in) return;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception&) {
        return;  // a damaged cache is ignored, never trusted
    }
    if (j.value("fingerprint", "") != q_.fingerprint()) return;
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& e : j["entries"]) {
        const Stability theta = e["theta"].get<Stability>();
        const DimVector d = e["d"].get<DimVector>();
        const ScalarV v = ScalarV::parse(e["value"].get<std::string>());
        const std::string kind = e["kind"];
        Memo& m = memo_[theta];
        if (kind == "ss") {
            m.ss.emplace(d, v);
        } else if (kind == "sss") {
            m.sss.emplace(d, v);
        } else if (kind == "closed") {
            m.closed.emplace(d, v);
        }
    }
}

}  // namespace oridt
