#include "oridt/quiver.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

namespace oridt {

bool DimLess::operator()(const DimVector& a, const DimVector& b) const {
    const int ta = total_dim(a);
    const int tb = total_dim(b);
    if (ta != tb) return ta < tb;
    return a < b;
}

int total_dim(const DimVector& d) {
    return std::accumulate(d.begin(), d.end(), 0);
}

Slope::Slope(long long num, long long den) {
    if (den == 0) throw Error(ErrorKind::ZeroDimVector, "slope with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    num_ = num / (g == 0 ? 1 : g);
    den_ = den / (g == 0 ? 1 : g);
}

std::strong_ordering Slope::operator<=>(const Slope& other) const {
    const __int128 lhs = static_cast<__int128>(num_) * other.den_;
    const __int128 rhs = static_cast<__int128>(other.num_) * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Slope::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

void check_sign(std::vector<Violation>& out, int value, const std::string& what,
                const std::string& id) {
    if (value != 1 && value != -1) {
        out.push_back({ErrorKind::MalformedDescription, id, what + " must be +1 or -1"});
    }
}

}  // namespace

QuiverWithDuality QuiverWithDuality::validate(const RawQuiver& raw, PositiveRule rule) {
    std::vector<Violation> v;
    QuiverWithDuality q;
    q.raw_ = raw;
    q.nodes_ = raw.nodes;

    std::map<std::string, int> node_index;
    for (int i = 0; i < static_cast<int>(raw.nodes.size()); ++i) {
        if (!node_index.emplace(raw.nodes[i], i).second) {
            v.push_back({ErrorKind::MalformedDescription, raw.nodes[i], "duplicate node"});
        }
    }
    std::map<std::string, int> arrow_index;
    for (int a = 0; a < static_cast<int>(raw.arrows.size()); ++a) {
        const auto& ra = raw.arrows[a];
        if (!arrow_index.emplace(ra.id, a).second) {
            v.push_back({ErrorKind::MalformedDescription, ra.id, "duplicate arrow"});
        }
        auto si = node_index.find(ra.src);
        auto ti = node_index.find(ra.tgt);
        if (si == node_index.end() || ti == node_index.end()) {
            v.push_back({ErrorKind::MalformedDescription, ra.id, "arrow references unknown node"});
            q.arrows_.push_back({ra.id, -1, -1});
        } else {
            q.arrows_.push_back({ra.id, si->second, ti->second});
        }
    }
    if (!v.empty()) throw ValidationError(std::move(v));

    const int n = q.num_nodes();
    const int m = q.num_arrows();
    q.sigma_nodes_.assign(n, -1);
    q.sigma_arrows_.assign(m, -1);
    q.s_.assign(n, 0);
    q.tau_.assign(m, 0);

    for (int i = 0; i < n; ++i) {
        auto it = raw.sigma_nodes.find(raw.nodes[i]);
        if (it == raw.sigma_nodes.end()) {
            v.push_back({ErrorKind::MalformedDescription, raw.nodes[i], "sigma undefined on node"});
            continue;
        }
        auto img = node_index.find(it->second);
        if (img == node_index.end()) {
            v.push_back({ErrorKind::MalformedDescription, raw.nodes[i],
                         "sigma maps node to unknown node '" + it->second + "'"});
            continue;
        }
        q.sigma_nodes_[i] = img->second;
        auto sv = raw.s.find(raw.nodes[i]);
        if (sv == raw.s.end()) {
            v.push_back({ErrorKind::MalformedDescription, raw.nodes[i], "s undefined on node"});
        } else {
            check_sign(v, sv->second, "s", raw.nodes[i]);
            q.s_[i] = sv->second;
        }
    }
    for (int a = 0; a < m; ++a) {
        const auto& id = q.arrows_[a].id;
        auto it = raw.sigma_arrows.find(id);
        if (it == raw.sigma_arrows.end()) {
            v.push_back({ErrorKind::MalformedDescription, id, "sigma undefined on arrow"});
        } else {
            auto img = arrow_index.find(it->second);
            if (img == arrow_index.end()) {
                v.push_back({ErrorKind::ArrowOrientationMismatch, id,
                             "sigma maps arrow to non-existent arrow '" + it->second + "'"});
            } else {
                q.sigma_arrows_[a] = img->second;
            }
        }
        auto tv = raw.tau.find(id);
        if (tv == raw.tau.end()) {
            v.push_back({ErrorKind::MalformedDescription, id, "tau undefined on arrow"});
        } else {
            check_sign(v, tv->second, "tau", id);
            q.tau_[a] = tv->second;
        }
    }
    if (!v.empty()) throw ValidationError(std::move(v));

    for (int i = 0; i < n; ++i) {
        if (q.sigma_nodes_[q.sigma_nodes_[i]] != i) {
            v.push_back({ErrorKind::NonInvolutive, q.nodes_[i], "sigma is not an involution on nodes"});
        }
        if (q.s_[q.sigma_nodes_[i]] != q.s_[i]) {
            v.push_back({ErrorKind::SignConditionViolated, q.nodes_[i], "s is not sigma-invariant"});
        }
    }
    for (int a = 0; a < m; ++a) {
        const Arrow& ar = q.arrows_[a];
        const int b = q.sigma_arrows_[a];
        if (q.sigma_arrows_[b] != a) {
            v.push_back({ErrorKind::NonInvolutive, ar.id, "sigma is not an involution on arrows"});
        }
        const Arrow& br = q.arrows_[b];
        if (br.src != q.sigma_nodes_[ar.tgt] || br.tgt != q.sigma_nodes_[ar.src]) {
            v.push_back({ErrorKind::ArrowOrientationMismatch, ar.id,
                         "sigma(" + ar.id + ") = " + br.id + " does not run sigma(tgt) -> sigma(src)"});
        }
        if (ar.tgt == q.sigma_nodes_[ar.src] && b != a) {
            v.push_back({ErrorKind::FixedArrowNotFixed, ar.id,
                         "arrow i -> sigma(i) must be fixed by sigma"});
        }
        if (q.tau_[a] * q.tau_[b] != q.s_[ar.src] * q.s_[ar.tgt]) {
            v.push_back({ErrorKind::SignConditionViolated, ar.id,
                         "tau_a * tau_sigma(a) differs from s_src * s_tgt"});
        }
    }
    if (!v.empty()) throw ValidationError(std::move(v));

    auto positive = [rule](const std::string& a, const std::string& b) {
        return rule == PositiveRule::LexSmaller ? a < b : a > b;
    };
    q.node_class_.assign(n, NodeClass::Fixed);
    for (int i = 0; i < n; ++i) {
        const int j = q.sigma_nodes_[i];
        if (j == i) continue;
        q.node_class_[i] = positive(q.nodes_[i], q.nodes_[j]) ? NodeClass::Plus : NodeClass::Minus;
    }
    q.arrow_class_.assign(m, NodeClass::Fixed);
    for (int a = 0; a < m; ++a) {
        const int b = q.sigma_arrows_[a];
        if (b == a) continue;
        q.arrow_class_[a] =
            positive(q.arrows_[a].id, q.arrows_[b].id) ? NodeClass::Plus : NodeClass::Minus;
    }
    return q;
}

std::optional<int> QuiverWithDuality::node_index(const std::string& id) const {
    for (int i = 0; i < num_nodes(); ++i) {
        if (nodes_[i] == id) return i;
    }
    return std::nullopt;
}

std::vector<int> QuiverWithDuality::nodes_in(NodeClass c) const {
    std::vector<int> out;
    for (int i = 0; i < num_nodes(); ++i) {
        if (node_class_[i] == c) out.push_back(i);
    }
    return out;
}

std::vector<int> QuiverWithDuality::arrows_in(NodeClass c) const {
    std::vector<int> out;
    for (int a = 0; a < num_arrows(); ++a) {
        if (arrow_class_[a] == c) out.push_back(a);
    }
    return out;
}

DimVector QuiverWithDuality::sigma(const DimVector& d) const {
    DimVector out(d.size());
    for (int i = 0; i < num_nodes(); ++i) out[sigma_nodes_[i]] = d[i];
    return out;
}

Stability QuiverWithDuality::sigma_dual(const Stability& theta) const {
    Stability out(theta.size());
    for (int i = 0; i < num_nodes(); ++i) out[i] = theta[sigma_nodes_[i]];
    return out;
}

bool QuiverWithDuality::is_symmetric(const DimVector& d) const {
    return sigma(d) == d;
}

std::string QuiverWithDuality::fingerprint() const {
    std::ostringstream os;
    for (int i = 0; i < num_nodes(); ++i) {
        os << "n:" << nodes_[i] << ":" << nodes_[sigma_nodes_[i]] << ":" << s_[i] << ";";
    }
    for (int a = 0; a < num_arrows(); ++a) {
        const Arrow& ar = arrows_[a];
        os << "a:" << ar.id << ":" << nodes_[ar.src] << ":" << nodes_[ar.tgt] << ":"
           << arrows_[sigma_arrows_[a]].id << ":" << tau_[a] << ";";
    }
    const std::string s = os.str();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

long euler_form(const QuiverWithDuality& q, const DimVector& d, const DimVector& dp) {
    long r = 0;
    for (int i = 0; i < q.num_nodes(); ++i) r += static_cast<long>(d[i]) * dp[i];
    for (const Arrow& a : q.arrows()) r -= static_cast<long>(d[a.src]) * dp[a.tgt];
    return r;
}

long skew_form(const QuiverWithDuality& q, const DimVector& d, const DimVector& dp) {
    return euler_form(q, d, dp) - euler_form(q, dp, d);
}

SdEulerParts sd_euler_parts(const QuiverWithDuality& q, const DimVector& d) {
    SdEulerParts p{0, 0};
    for (int i = 0; i < q.num_nodes(); ++i) {
        const long di = d[i];
        switch (q.node_class(i)) {
        case NodeClass::Fixed: p.e0 += di * (di - q.s(i)) / 2; break;
        case NodeClass::Plus: p.e0 += static_cast<long>(d[q.sigma_node(i)]) * di; break;
        case NodeClass::Minus: break;
        }
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& ar = q.arrows()[a];
        switch (q.arrow_class(a)) {
        case NodeClass::Fixed: {
            // fixed arrows run sigma(i) -> i; i is the target
            const long di = d[ar.tgt];
            p.e1 -= di * (di + q.tau(a) * q.s(ar.tgt)) / 2;
            break;
        }
        case NodeClass::Plus:
            p.e1 -= static_cast<long>(d[q.sigma_node(ar.src)]) * d[ar.tgt];
            break;
        case NodeClass::Minus: break;
        }
    }
    return p;
}

long sd_euler(const QuiverWithDuality& q, const DimVector& d) {
    const SdEulerParts p = sd_euler_parts(q, d);
    return p.e0 + p.e1;
}

long e_tilde(const QuiverWithDuality& q, const DimVector& d) {
    return sd_euler(q, d) - sd_euler(q, q.sigma(d));
}

DimVector hyperbolic_sum(const QuiverWithDuality& q, const DimVector& d) {
    return add(d, q.sigma(d));
}

DimVector add(const DimVector& a, const DimVector& b) {
    DimVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

DimVector sub(const DimVector& a, const DimVector& b) {
    DimVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

DimVector scale(const DimVector& a, int k) {
    DimVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * k;
    return out;
}

bool leq(const DimVector& a, const DimVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

bool is_zero(const DimVector& d) {
    return std::all_of(d.begin(), d.end(), [](int x) { return x == 0; });
}

bool is_primitive(const DimVector& d) {
    int g = 0;
    for (int x : d) g = std::gcd(g, x);
    return g == 1;
}

bool is_sigma_compatible(const QuiverWithDuality& q, const Stability& theta) {
    const Stability st = q.sigma_dual(theta);
    for (int i = 0; i < q.num_nodes(); ++i) {
        if (st[i] != -theta[i]) return false;
    }
    return true;
}

long theta_of(const Stability& theta, const DimVector& d) {
    long r = 0;
    for (std::size_t i = 0; i < d.size(); ++i) r += theta[i] * d[i];
    return r;
}

Slope slope(const Stability& theta, const DimVector& d) {
    const int n = total_dim(d);
    if (n == 0) throw Error(ErrorKind::ZeroDimVector, "slope of the zero dimension vector");
    return Slope(theta_of(theta, d), n);
}

bool is_admissible_selfdual(const QuiverWithDuality& q, const DimVector& e) {
    if (!q.is_symmetric(e)) return false;
    for (int i : q.nodes_in(NodeClass::Fixed)) {
        if (q.s(i) == -1 && e[i] % 2 != 0) return false;
    }
    return true;
}

namespace {

void compositions(int nodes, int total, DimVector& cur, int pos, std::vector<DimVector>& out) {
    if (pos == nodes - 1) {
        cur[pos] = total;
        out.push_back(cur);
        return;
    }
    for (int k = 0; k <= total; ++k) {
        cur[pos] = k;
        compositions(nodes, total - k, cur, pos + 1, out);
    }
}

}  // namespace

std::vector<DimVector> enumerate_dimvectors(const QuiverWithDuality& q, int n) {
    std::vector<DimVector> out;
    if (q.num_nodes() == 0) return out;
    for (int t = 1; t <= n; ++t) {
        std::vector<DimVector> level;
        DimVector cur(q.num_nodes(), 0);
        compositions(q.num_nodes(), t, cur, 0, level);
        std::sort(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::vector<DimVector> enumerate_selfdual(const QuiverWithDuality& q, int n) {
    std::vector<DimVector> out;
    if (n >= 0) out.push_back(q.zero());
    for (auto& d : enumerate_dimvectors(q, n)) {
        if (is_admissible_selfdual(q, d)) out.push_back(std::move(d));
    }
    return out;
}

std::vector<DimVector> enumerate_below(const DimVector& bound) {
    std::vector<DimVector> out;
    DimVector cur(bound.size(), 0);
    while (true) {
        if (!is_zero(cur)) out.push_back(cur);
        std::size_t i = 0;
        while (i < cur.size() && cur[i] == bound[i]) {
            cur[i] = 0;
            ++i;
        }
        if (i == cur.size()) break;
        ++cur[i];
    }
    std::sort(out.begin(), out.end(), DimLess{});
    return out;
}

const char* to_string(FiniteTypeClass c) {
    switch (c) {
    case FiniteTypeClass::NotFinite: return "not-finite";
    case FiniteTypeClass::TypeAFlip: return "type-A-with-flip";
    case FiniteTypeClass::DisjointPair: return "disjoint-union-with-opposite";
    case FiniteTypeClass::Mixed: return "mixed";
    }
    return "unknown";
}

namespace {

// Dynkin label of a connected simple graph given as adjacency lists, or empty if not ADE.
std::string dynkin_label(const std::vector<std::vector<int>>& adj, const std::vector<int>& comp,
                         int edges) {
    const int n = static_cast<int>(comp.size());
    if (edges != n - 1) return {};
    int branch = -1;
    for (int v : comp) {
        const int deg = static_cast<int>(adj[v].size());
        if (deg > 3) return {};
        if (deg == 3) {
            if (branch != -1) return {};
            branch = v;
        }
    }
    if (branch == -1) return "A" + std::to_string(n);
    std::vector<int> arms;
    for (int start : adj[branch]) {
        int len = 1;
        int prev = branch;
        int cur = start;
        while (adj[cur].size() == 2) {
            const int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = next;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return "E" + std::to_string(n);
    return {};
}

}  // namespace

FiniteTypeVerdict is_finite_type(const QuiverWithDuality& q) {
    FiniteTypeVerdict out;
    const int n = q.num_nodes();
    std::vector<std::vector<int>> adj(n);
    std::set<std::pair<int, int>> seen;
    for (const Arrow& a : q.arrows()) {
        if (a.src == a.tgt) {
            out.reason = "loop at node " + q.node_id(a.src);
            return out;
        }
        const auto key = std::minmax(a.src, a.tgt);
        if (!seen.insert(key).second) {
            out.reason = "multiple edges between " + q.node_id(a.src) + " and " + q.node_id(a.tgt);
            return out;
        }
        adj[a.src].push_back(a.tgt);
        adj[a.tgt].push_back(a.src);
    }
    std::vector<int> comp_of(n, -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (comp_of[s] != -1) continue;
        std::vector<int> stack{s};
        std::vector<int> members;
        comp_of[s] = static_cast<int>(comps.size());
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int w : adj[v]) {
                if (comp_of[w] == -1) {
                    comp_of[w] = comp_of[s];
                    stack.push_back(w);
                }
            }
        }
        comps.push_back(members);
    }
    bool any_flip = false;
    bool any_pair = false;
    bool any_other = false;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        int edges = 0;
        for (int v : comps[c]) edges += static_cast<int>(adj[v].size());
        edges /= 2;
        const std::string label = dynkin_label(adj, comps[c], edges);
        if (label.empty()) {
            out.reason = "component containing node " + q.node_id(comps[c][0]) + " is not ADE";
            out.components.clear();
            return out;
        }
        out.components.push_back(label);
        const int image = comp_of[q.sigma_node(comps[c][0])];
        if (image != static_cast<int>(c)) {
            any_pair = true;
        } else if (label[0] == 'A') {
            any_flip = true;
        } else {
            any_other = true;
        }
    }
    out.finite = true;
    if (any_other || (any_flip && any_pair)) {
        out.cls = FiniteTypeClass::Mixed;
    } else if (any_pair) {
        out.cls = FiniteTypeClass::DisjointPair;
    } else {
        out.cls = FiniteTypeClass::TypeAFlip;
    }
    return out;
}

GenericityVerdict is_sigma_generic(const QuiverWithDuality& q, const Stability& theta, int n,
                                   const std::function<bool(const DimVector&)>& semistable_nonzero) {
    GenericityVerdict out;
    out.bound = n;
    if (!is_sigma_compatible(q, theta)) {
        out.generic = false;
        out.reason = "stability is not sigma-compatible";
        return out;
    }
    const auto dims = enumerate_dimvectors(q, n);
    for (std::size_t a = 0; a < dims.size(); ++a) {
        const Slope ma = slope(theta, dims[a]);
        for (std::size_t b = a + 1; b < dims.size(); ++b) {
            if (slope(theta, dims[b]) != ma) continue;
            if (skew_form(q, dims[a], dims[b]) != 0) {
                out.generic = false;
                out.reason = "equal slopes but nonzero skew form: " + to_string(dims[a]) + ", " +
                             to_string(dims[b]);
                return out;
            }
        }
        if (ma.is_zero() && !q.is_symmetric(dims[a]) && semistable_nonzero(dims[a])) {
            out.generic = false;
            out.reason = "slope-zero semistable dimension vector is not symmetric: " +
                         to_string(dims[a]);
            return out;
        }
    }
    return out;
}

std::string to_string(const DimVector& d) {
    std::string out = "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(d[i]);
    }
    return out + ")";
}

}  // namespace oridt
