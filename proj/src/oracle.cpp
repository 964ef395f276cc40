#include "oridt/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "oridt/error.hpp"
#include "oridt/scalar.hpp"

namespace oridt {

namespace {

void require_prime(long p, const OracleCaps& caps) {
    if (!is_odd_prime(p)) throw Error(ErrorKind::EvenPrime, "oracle needs an odd prime, got " + std::to_string(p));
    if (p > caps.max_prime) {
        throw Error(ErrorKind::OutOfRange,
                    "prime " + std::to_string(p) + " exceeds the cap " + std::to_string(caps.max_prime));
    }
}

mpz_class ipow(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

Mat standard_symplectic(int n) {
    Mat m(n, n);
    const int h = n / 2;
    for (int i = 0; i < h; ++i) {
        m(i, h + i) = 1;
        m(h + i, i) = -1;
    }
    return m;
}

}  // namespace

std::string GramChoice::label(const QuiverWithDuality& q) const {
    std::string out;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!eps[i]) continue;
        if (!out.empty()) out += ",";
        out += q.node_id(static_cast<int>(i)) + (eps[i] > 0 ? ":+" : ":-");
    }
    return out.empty() ? "standard" : out;
}

std::vector<GramChoice> gram_sectors(const QuiverWithDuality& q, const DimVector& e, const PrimeField& f) {
    if (!q.is_symmetric(e)) throw Error(ErrorKind::NotSymmetric, to_string(e) + " is not sigma-symmetric");
    const int n = q.num_nodes();
    std::vector<int> choice_nodes;
    for (int i = 0; i < n; ++i) {
        if (q.node_class(i) != NodeClass::Fixed) continue;
        if (q.s(i) == -1 && e[i] % 2) {
            throw Error(ErrorKind::OddSymplecticDimension,
                        "odd dimension " + std::to_string(e[i]) + " at symplectic node " + q.node_id(i));
        }
        if (q.s(i) == 1 && e[i] > 0) choice_nodes.push_back(i);
    }
    std::vector<GramChoice> out;
    const int combos = 1 << choice_nodes.size();
    for (int mask = 0; mask < combos; ++mask) {
        GramChoice g;
        g.eps.assign(n, 0);
        g.witt.assign(n, 0);
        g.J.resize(n);
        for (std::size_t k = 0; k < choice_nodes.size(); ++k) g.eps[choice_nodes[k]] = (mask >> k) & 1 ? -1 : 1;
        for (int i = 0; i < n; ++i) {
            const int di = e[i];
            switch (q.node_class(i)) {
            case NodeClass::Plus: g.J[i] = Mat::identity(di); break;
            case NodeClass::Minus: g.J[i] = scale(f, Mat::identity(di), q.s(i)); break;
            case NodeClass::Fixed:
                if (q.s(i) == -1) {
                    g.J[i] = scale(f, standard_symplectic(di), 1);
                } else {
                    g.J[i] = Mat::identity(di);
                    if (g.eps[i] == -1) g.J[i](di - 1, di - 1) = f.nu();
                    if (di > 0 && di % 2 == 0) {
                        const int m = di / 2;
                        int disc = det(f, g.J[i]);
                        if (m % 2) disc = f.neg(disc);
                        g.witt[i] = f.is_square(disc) ? 1 : -1;
                    }
                }
                break;
            }
        }
        out.push_back(std::move(g));
    }
    return out;
}

PointSpace PointSpace::ordinary(const QuiverWithDuality& q, const DimVector& d, const PrimeField& f) {
    PointSpace s;
    s.q_ = &q;
    s.f_ = &f;
    s.dims_ = d;
    for (const Arrow& a : q.arrows()) {
        Slot slot;
        slot.offset = s.params_;
        s.params_ += d[a.src] * d[a.tgt];
        s.slots_.push_back(slot);
    }
    return s;
}

PointSpace PointSpace::selfdual(const QuiverWithDuality& q, const DimVector& e, const GramChoice& g,
                                const PrimeField& f) {
    PointSpace s;
    s.q_ = &q;
    s.f_ = &f;
    s.dims_ = e;
    s.selfdual_ = true;
    s.gram_ = g;
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& ar = q.arrows()[a];
        Slot slot;
        slot.offset = s.params_;
        switch (q.arrow_class(a)) {
        case NodeClass::Plus:
            slot.kind = Kind::Free;
            s.params_ += e[ar.src] * e[ar.tgt];
            break;
        case NodeClass::Minus: slot.kind = Kind::Dependent; break;
        case NodeClass::Fixed: {
            slot.kind = Kind::Form;
            slot.sym = q.s(ar.src) * q.tau(a);
            const int n = e[ar.src];
            s.params_ += slot.sym == 1 ? n * (n + 1) / 2 : n * (n - 1) / 2;
            break;
        }
        }
        s.slots_.push_back(slot);
    }
    return s;
}

std::optional<std::uint64_t> PointSpace::size() const {
    std::uint64_t r = 1;
    for (int i = 0; i < params_; ++i) {
        if (r > UINT64_MAX / static_cast<std::uint64_t>(f_->p())) return std::nullopt;
        r *= f_->p();
    }
    return r;
}

std::vector<Mat> PointSpace::decode(std::uint64_t index) const {
    const QuiverWithDuality& q = *q_;
    const PrimeField& f = *f_;
    const int p = f.p();
    std::vector<Mat> maps(q.num_arrows());
    // digits in slot order, least significant first
    std::vector<int> digits(params_);
    for (int i = 0; i < params_; ++i) {
        digits[i] = static_cast<int>(index % p);
        index /= p;
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& ar = q.arrows()[a];
        const Slot& sl = slots_[a];
        const int rows = dims_[ar.tgt];
        const int cols = dims_[ar.src];
        if (sl.kind == Kind::Free) {
            Mat m(rows, cols);
            for (int k = 0; k < rows * cols; ++k) m.a[k] = digits[sl.offset + k];
            maps[a] = std::move(m);
        } else if (sl.kind == Kind::Form) {
            const int n = cols;
            Mat b(n, n);
            int k = sl.offset;
            for (int i = 0; i < n; ++i) {
                for (int j = sl.sym == 1 ? i : i + 1; j < n; ++j) {
                    b(i, j) = digits[k++];
                    if (i != j) b(j, i) = sl.sym == 1 ? b(i, j) : f.neg(b(i, j));
                }
            }
            // B = m^T J_{sigma i, i}  =>  m = (J_{sigma i, i}^{-1})^T B^T
            const Mat& js = gram_.J[ar.tgt];
            maps[a] = mul(f, transpose(inverse(f, js)), transpose(b));
        }
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        if (slots_[a].kind != Kind::Dependent) continue;
        const int b = q.sigma_arrow(a);
        const Arrow& br = q.arrows()[b];
        // m_{sigma b} = tau_b J_i^{-1} m_b^T J_j for b : i -> j
        Mat m = mul(f, mul(f, inverse(f, gram_.J[br.src]), transpose(maps[b])), gram_.J[br.tgt]);
        maps[a] = scale(f, m, q.tau(b));
    }
    return maps;
}

std::uint64_t PointSpace::encode(const std::vector<Mat>& maps) const {
    const QuiverWithDuality& q = *q_;
    const PrimeField& f = *f_;
    std::vector<int> digits(params_, 0);
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& ar = q.arrows()[a];
        const Slot& sl = slots_[a];
        if (sl.kind == Kind::Free) {
            for (std::size_t k = 0; k < maps[a].a.size(); ++k) digits[sl.offset + k] = maps[a].a[k];
        } else if (sl.kind == Kind::Form) {
            const Mat b = mul(f, transpose(maps[a]), gram_.J[ar.tgt]);
            int k = sl.offset;
            const int n = b.rows;
            for (int i = 0; i < n; ++i) {
                for (int j = sl.sym == 1 ? i : i + 1; j < n; ++j) digits[k++] = b(i, j);
            }
        }
    }
    std::uint64_t index = 0;
    for (int i = params_ - 1; i >= 0; --i) index = index * f.p() + digits[i];
    return index;
}

namespace {

// Per-node subspace lists shared across many points of one dimension vector.
struct Lattice {
    std::vector<std::vector<Subspace>> per_node;
    std::uint64_t combos = 1;
};

Lattice build_lattice(const PrimeField& f, const DimVector& d, const OracleCaps& caps) {
    Lattice l;
    for (int n : d) {
        std::uint64_t count = 0;
        for (int k = 0; k <= n; ++k) count += count_subspaces(f.p(), n, k);
        if (l.combos > caps.max_subspace_combos / std::max<std::uint64_t>(count, 1)) {
            throw CapExceeded("graded subspace enumeration", l.combos * count, caps.max_subspace_combos);
        }
        l.combos *= count;
        std::vector<Subspace> all;
        for (int k = 0; k <= n; ++k) {
            auto subs = enumerate_subspaces(f, n, k);
            all.insert(all.end(), subs.begin(), subs.end());
        }
        l.per_node.push_back(std::move(all));
    }
    return l;
}

bool closed_under(const QuiverWithDuality& q, const PrimeField& f, const std::vector<Mat>& maps,
                  const std::vector<const Subspace*>& u) {
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& ar = q.arrows()[a];
        const Subspace& src = *u[ar.src];
        const Subspace& tgt = *u[ar.tgt];
        if (src.dim() == 0 || tgt.dim() == tgt.n) continue;
        for (int r = 0; r < src.dim(); ++r) {
            std::vector<int> v(src.basis.a.begin() + r * src.n, src.basis.a.begin() + (r + 1) * src.n);
            if (!tgt.contains(f, apply(f, maps[a], v))) return false;
        }
    }
    return true;
}

bool isotropic(const QuiverWithDuality& q, const PrimeField& f, const GramChoice& g,
               const std::vector<const Subspace*>& u) {
    for (int i = 0; i < q.num_nodes(); ++i) {
        const Subspace& x = *u[i];
        const Subspace& y = *u[q.sigma_node(i)];
        if (x.dim() == 0 || y.dim() == 0) continue;
        const Mat pair = mul(f, mul(f, x.basis, g.J[i]), transpose(y.basis));
        for (int v : pair.a) {
            if (v) return false;
        }
    }
    return true;
}

bool semistable_with(const QuiverWithDuality& q, const PrimeField& f, const Stability& theta, const DimVector& d,
                     const std::vector<Mat>& maps, const Lattice& lat, const GramChoice* iso) {
    const int n = q.num_nodes();
    const long td = total_dim(d);
    if (td == 0) return true;
    const long thd = theta_of(theta, d);
    std::vector<std::size_t> idx(n, 0);
    std::vector<const Subspace*> u(n);
    while (true) {
        long dim = 0;
        long th = 0;
        bool full = true;
        for (int i = 0; i < n; ++i) {
            u[i] = &lat.per_node[i][idx[i]];
            dim += u[i]->dim();
            th += theta[i] * u[i]->dim();
            full = full && u[i]->dim() == d[i];
        }
        // destabilizing iff theta(U)/dim U > theta(d)/dim d
        if (dim > 0 && !full && th * td > thd * dim && (!iso || isotropic(q, f, *iso, u)) &&
            closed_under(q, f, maps, u)) {
            return false;
        }
        int k = 0;
        while (k < n && ++idx[k] == lat.per_node[k].size()) {
            idx[k] = 0;
            ++k;
        }
        if (k == n) break;
    }
    return true;
}

}  // namespace

bool is_semistable(const QuiverWithDuality& q, const PrimeField& f, const Stability& theta, const DimVector& d,
                   const std::vector<Mat>& maps, const OracleCaps& caps, const GramChoice* isotropic_only) {
    const Lattice lat = build_lattice(f, d, caps);
    return semistable_with(q, f, theta, d, maps, lat, isotropic_only);
}

mpz_class gl_order(long p, int n) {
    mpz_class r = 1;
    const mpz_class pn = ipow(p, n);
    for (int k = 0; k < n; ++k) r *= pn - ipow(p, k);
    return r;
}

mpz_class orthogonal_order(long p, int n, int witt) {
    if (n == 0) return 1;
    const int m = n / 2;
    mpz_class r = 2;
    if (n % 2) {
        r *= ipow(p, static_cast<long>(m) * m);
        for (int k = 1; k <= m; ++k) r *= ipow(p, 2 * k) - 1;
        return r;
    }
    if (witt != 1 && witt != -1) throw Error(ErrorKind::OutOfRange, "even orthogonal group needs a Witt type");
    r *= ipow(p, static_cast<long>(m) * (m - 1));
    r *= ipow(p, m) - witt;
    for (int k = 1; k < m; ++k) r *= ipow(p, 2 * k) - 1;
    return r;
}

mpz_class symplectic_order(long p, int n) {
    if (n % 2) throw Error(ErrorKind::OddSymplecticDimension, "symplectic group in odd dimension " + std::to_string(n));
    const int m = n / 2;
    mpz_class r = ipow(p, static_cast<long>(m) * m);
    for (int k = 1; k <= m; ++k) r *= ipow(p, 2 * k) - 1;
    return r;
}

mpz_class group_order(const QuiverWithDuality& q, const DimVector& d, long p) {
    mpz_class r = 1;
    for (int i = 0; i < q.num_nodes(); ++i) r *= gl_order(p, d[i]);
    return r;
}

mpz_class group_order_sigma(const QuiverWithDuality& q, const DimVector& e, const std::vector<int>& witt, long p) {
    if (!q.is_symmetric(e)) throw Error(ErrorKind::NotSymmetric, to_string(e) + " is not sigma-symmetric");
    mpz_class r = 1;
    for (int i = 0; i < q.num_nodes(); ++i) {
        switch (q.node_class(i)) {
        case NodeClass::Plus: r *= gl_order(p, e[i]); break;
        case NodeClass::Minus: break;
        case NodeClass::Fixed:
            r *= q.s(i) == 1 ? orthogonal_order(p, e[i], witt.empty() ? 0 : witt[i]) : symplectic_order(p, e[i]);
            break;
        }
    }
    return r;
}

namespace {

mpz_class space_group_order(const QuiverWithDuality& q, const PointSpace& s, long p) {
    return s.is_selfdual() ? group_order_sigma(q, s.dims(), s.gram().witt, p) : group_order(q, s.dims(), p);
}

std::uint64_t checked_size(const PointSpace& s, const OracleCaps& caps) {
    const auto n = s.size();
    if (!n || *n > caps.max_points) {
        throw CapExceeded("point enumeration", n.value_or(UINT64_MAX), caps.max_points);
    }
    return *n;
}

}  // namespace

std::vector<std::vector<Mat>> group_elements(const QuiverWithDuality& q, const PointSpace& space,
                                             const PrimeField& f, const OracleCaps& caps) {
    const mpz_class order = space_group_order(q, space, f.p());
    if (order > mpz_class(std::to_string(caps.max_group))) {
        throw CapExceeded("group enumeration", order.fits_ulong_p() ? order.get_ui() : UINT64_MAX, caps.max_group);
    }
    const DimVector& d = space.dims();
    const int n = q.num_nodes();
    // factor lists: one per independent node
    std::vector<std::vector<Mat>> choices(n);
    std::vector<bool> independent(n, false);
    for (int i = 0; i < n; ++i) {
        if (!space.is_selfdual()) {
            choices[i] = general_linear(f, d[i]);
            independent[i] = true;
        } else if (q.node_class(i) == NodeClass::Plus) {
            choices[i] = general_linear(f, d[i]);
            independent[i] = true;
        } else if (q.node_class(i) == NodeClass::Fixed) {
            choices[i] = isometries(f, space.gram().J[i]);
            independent[i] = true;
        }
    }
    std::vector<std::vector<Mat>> out;
    std::vector<Mat> cur(n);
    std::function<void(int)> build = [&](int i) {
        if (i == n) {
            std::vector<Mat> g = cur;
            for (int k = 0; k < n; ++k) {
                if (independent[k]) continue;
                // g_k^T J_{k, sk} g_sk = J_{k, sk} with sk = sigma(k) independent
                const int sk = q.sigma_node(k);
                const Mat& J = space.gram().J[sk];
                g[k] = mul(f, mul(f, inverse(f, J), transpose(inverse(f, g[sk]))), J);
            }
            out.push_back(std::move(g));
            return;
        }
        if (!independent[i]) {
            build(i + 1);
            return;
        }
        for (const Mat& m : choices[i]) {
            cur[i] = m;
            build(i + 1);
        }
    };
    build(0);
    return out;
}

std::uint64_t count_semistable(const QuiverWithDuality& q, const PointSpace& space, const PrimeField& f,
                               const Stability& theta, const OracleCaps& caps, Exec exec) {
    const std::uint64_t n = checked_size(space, caps);
    const Lattice lat = build_lattice(f, space.dims(), caps);
    const DimVector& d = space.dims();
    if (exec == Exec::Serial) {
        std::uint64_t count = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (semistable_with(q, f, theta, d, space.decode(i), lat, nullptr)) ++count;
        }
        return count;
    }
    unsigned long long count = 0;
    const long long total = static_cast<long long>(n);
#pragma omp parallel for reduction(+ : count) schedule(dynamic, 64)
    for (long long i = 0; i < total; ++i) {
        if (semistable_with(q, f, theta, d, space.decode(static_cast<std::uint64_t>(i)), lat, nullptr)) ++count;
    }
    return count;
}

mpq_class stack_count(const QuiverWithDuality& q, const Stability& theta, const DimVector& d, long p,
                      const OracleCaps& caps, Exec exec) {
    require_prime(p, caps);
    const PrimeField f(static_cast<int>(p));
    const PointSpace space = PointSpace::ordinary(q, d, f);
    mpq_class r(mpz_class(std::to_string(count_semistable(q, space, f, theta, caps, exec))), group_order(q, d, p));
    r.canonicalize();
    return r;
}

mpq_class stack_count_sigma(const QuiverWithDuality& q, const Stability& theta, const DimVector& e, long p,
                            const OracleCaps& caps, Exec exec) {
    require_prime(p, caps);
    if (!is_sigma_compatible(q, theta)) throw Error(ErrorKind::NotSigmaCompatible, "stability is not sigma-compatible");
    if (!is_admissible_selfdual(q, e)) throw Error(ErrorKind::Inadmissible, to_string(e) + " is not admissible");
    const PrimeField f(static_cast<int>(p));
    mpq_class total = 0;
    for (const GramChoice& g : gram_sectors(q, e, f)) {
        const PointSpace space = PointSpace::selfdual(q, e, g, f);
        mpq_class c(mpz_class(std::to_string(count_semistable(q, space, f, theta, caps, exec))),
                    group_order_sigma(q, e, g.witt, p));
        c.canonicalize();
        total += c;
    }
    return total;
}

namespace {

std::vector<Mat> act(const PrimeField& f, const QuiverWithDuality& q, const std::vector<Mat>& g,
                     const std::vector<Mat>& ginv, const std::vector<Mat>& maps) {
    std::vector<Mat> out(maps.size());
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& ar = q.arrows()[a];
        out[a] = mul(f, mul(f, g[ar.tgt], maps[a]), ginv[ar.src]);
    }
    return out;
}

}  // namespace

namespace {

void fill_census(const QuiverWithDuality& q, const PrimeField& f, const Stability& theta, const OracleCaps& caps,
                 int sector, const PointSpace& space, std::vector<int>& index, std::vector<CensusEntry>& entries) {
    const std::uint64_t n = checked_size(space, caps);
    const auto group = group_elements(q, space, f, caps);
    std::vector<std::vector<Mat>> inverses;
    inverses.reserve(group.size());
    for (const auto& g : group) {
        std::vector<Mat> inv(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) inv[i] = g[i].rows ? inverse(f, g[i]) : g[i];
        inverses.push_back(std::move(inv));
    }
    const mpz_class order = space_group_order(q, space, f.p());
    if (order != mpz_class(std::to_string(group.size()))) {
        throw std::logic_error("enumerated group size disagrees with the order formula");
    }
    const Lattice lat = build_lattice(f, space.dims(), caps);
    index.assign(n, -1);
    for (std::uint64_t x = 0; x < n; ++x) {
        if (index[x] != -1) continue;
        const int id = static_cast<int>(entries.size());
        const auto maps = space.decode(x);
        std::uint64_t orbit = 0;
        for (std::size_t k = 0; k < group.size(); ++k) {
            const std::uint64_t y = space.encode(act(f, q, group[k], inverses[k], maps));
            if (index[y] == -1) {
                index[y] = id;
                ++orbit;
            }
        }
        CensusEntry e;
        e.sector = sector;
        e.representative = x;
        e.orbit_size = orbit;
        const mpz_class orb(std::to_string(orbit));
        if (order % orb != 0) throw std::logic_error("orbit size does not divide the group order");
        e.aut_order = order / orb;
        e.semistable = semistable_with(q, f, theta, space.dims(), maps, lat, nullptr);
        entries.push_back(std::move(e));
    }
}

}  // namespace

Census Census::ordinary(const QuiverWithDuality& q, const DimVector& d, const PrimeField& f, const Stability& theta,
                        const OracleCaps& caps) {
    Census c;
    c.spaces_.push_back(PointSpace::ordinary(q, d, f));
    c.class_index_.resize(1);
    fill_census(q, f, theta, caps, 0, c.spaces_[0], c.class_index_[0], c.entries_);
    return c;
}

Census Census::selfdual(const QuiverWithDuality& q, const DimVector& e, const PrimeField& f, const Stability& theta,
                        const OracleCaps& caps) {
    Census c;
    for (const GramChoice& g : gram_sectors(q, e, f)) c.spaces_.push_back(PointSpace::selfdual(q, e, g, f));
    c.class_index_.resize(c.spaces_.size());
    for (std::size_t s = 0; s < c.spaces_.size(); ++s) {
        fill_census(q, f, theta, caps, static_cast<int>(s), c.spaces_[s], c.class_index_[s], c.entries_);
    }
    return c;
}

int Census::class_of(int sector, std::uint64_t point) const { return class_index_.at(sector).at(point); }

mpq_class Census::mass(bool semistable_only) const {
    mpq_class m = 0;
    for (const auto& e : entries_) {
        if (semistable_only && !e.semistable) continue;
        m += mpq_class(mpz_class(1), e.aut_order);
    }
    m.canonicalize();
    return m;
}

namespace {

std::vector<int> row(const Mat& m, int r) {
    return std::vector<int>(m.a.begin() + static_cast<std::ptrdiff_t>(r) * m.cols,
                            m.a.begin() + static_cast<std::ptrdiff_t>(r + 1) * m.cols);
}

// Coordinates of y in the basis formed by `vecs` (assumed independent, y in their span).
std::vector<int> coordinates(const PrimeField& f, const std::vector<std::vector<int>>& vecs, const std::vector<int>& y) {
    const int n = static_cast<int>(y.size());
    const int k = static_cast<int>(vecs.size());
    Mat aug(n, k + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) aug(i, j) = vecs[j][i];
        aug(i, k) = y[i];
    }
    std::vector<int> piv;
    const Mat r = rref(f, aug, &piv);
    if (!piv.empty() && piv.back() == k) throw std::logic_error("vector outside the span");
    std::vector<int> c(k, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) c[piv[i]] = r(static_cast<int>(i), k);
    return c;
}

int form_value(const PrimeField& f, const std::vector<int>& x, const Mat& J, const std::vector<int>& y) {
    long s = 0;
    for (int i = 0; i < J.rows; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < J.cols; ++j) s += x[i] * J(i, j) * y[j];
    }
    return f.reduce(s);
}

std::vector<std::vector<int>> combine(const PrimeField& f, const std::vector<std::vector<int>>& vecs, const Mat& t) {
    // new_b = sum_a t(a, b) vecs[a]
    std::vector<std::vector<int>> out(t.cols, std::vector<int>(vecs.empty() ? 0 : vecs[0].size(), 0));
    for (int b = 0; b < t.cols; ++b) {
        for (int a = 0; a < t.rows; ++a) {
            if (!t(a, b)) continue;
            for (std::size_t i = 0; i < out[b].size(); ++i) out[b][i] = f.add(out[b][i], f.mul(t(a, b), vecs[a][i]));
        }
    }
    return out;
}

Mat gram_of(const PrimeField& f, const std::vector<std::vector<int>>& x, const Mat& J,
            const std::vector<std::vector<int>>& y) {
    Mat g(static_cast<int>(x.size()), static_cast<int>(y.size()));
    for (std::size_t a = 0; a < x.size(); ++a) {
        for (std::size_t b = 0; b < y.size(); ++b) g(static_cast<int>(a), static_cast<int>(b)) = form_value(f, x[a], J, y[b]);
    }
    return g;
}

}  // namespace

IdentityReport verify_integration_identity(const QuiverWithDuality& q, const PrimeField& f, const Census& u_census,
                                           int u_class, const Census& m_census, int m_class, const OracleCaps& caps) {
    const PointSpace& uspace = u_census.spaces().at(0);
    const DimVector d = uspace.dims();
    const DimVector e = m_census.spaces().at(0).dims();
    const DimVector nd = add(hyperbolic_sum(q, d), e);
    const int n = q.num_nodes();
    const Stability zero(n, 0);
    const Census ncensus = Census::selfdual(q, nd, f, zero, caps);

    std::vector<std::vector<Subspace>> subs(n);
    std::uint64_t combos = 1;
    for (int i = 0; i < n; ++i) {
        subs[i] = enumerate_subspaces(f, nd[i], d[i]);
        combos *= subs[i].size();
    }
    if (combos > caps.max_subspace_combos) throw CapExceeded("isotropic subspace enumeration", combos, caps.max_subspace_combos);

    IdentityReport rep;
    rep.ambient_classes = static_cast<int>(ncensus.entries().size());
    mpq_class lhs = 0;
    for (const CensusEntry& ne : ncensus.entries()) {
        const PointSpace& nspace = ncensus.spaces()[ne.sector];
        const GramChoice& gram = nspace.gram();
        const auto maps = nspace.decode(ne.representative);
        std::uint64_t matches = 0;
        std::vector<std::size_t> idx(n, 0);
        std::vector<const Subspace*> u(n);
        bool done = combos == 0;
        while (!done) {
            for (int i = 0; i < n; ++i) u[i] = &subs[i][idx[i]];
            if (closed_under(q, f, maps, u) && isotropic(q, f, gram, u)) {
                // restricted representation on U, coordinates via RREF pivots
                std::vector<Mat> umaps(q.num_arrows());
                for (int a = 0; a < q.num_arrows(); ++a) {
                    const Arrow& ar = q.arrows()[a];
                    Mat m(d[ar.tgt], d[ar.src]);
                    for (int c = 0; c < d[ar.src]; ++c) {
                        const auto img = apply(f, maps[a], row(u[ar.src]->basis, c));
                        for (int r = 0; r < d[ar.tgt]; ++r) m(r, c) = img[u[ar.tgt]->pivots[r]];
                    }
                    umaps[a] = std::move(m);
                }
                const bool u_ok = u_census.class_of(0, uspace.encode(umaps)) == u_class;
                bool m_ok = false;
                if (u_ok) {
                    // U-perp at node i: y with <u, y> = 0 for u in U_{sigma i}
                    std::vector<std::vector<std::vector<int>>> comp(n);
                    std::vector<std::vector<std::vector<int>>> ubasis(n);
                    for (int i = 0; i < n; ++i) {
                        const int si = q.sigma_node(i);
                        Mat cons(u[si]->dim(), nd[i]);
                        for (int r = 0; r < u[si]->dim(); ++r) {
                            const auto ur = row(u[si]->basis, r);
                            const Mat& J = gram.J[si];
                            for (int c = 0; c < nd[i]; ++c) {
                                long s = 0;
                                for (int k = 0; k < nd[si]; ++k) s += ur[k] * J(k, c);
                                cons(r, c) = f.reduce(s);
                            }
                        }
                        const Mat perp = cons.rows ? kernel(f, cons) : Mat::identity(nd[i]);
                        for (int r = 0; r < u[i]->dim(); ++r) ubasis[i].push_back(row(u[i]->basis, r));
                        // extend a basis of U_i to U-perp_i
                        Mat acc = u[i]->basis;
                        int rk = u[i]->dim();
                        for (int r = 0; r < perp.rows; ++r) {
                            Mat trial(acc.rows + 1, nd[i]);
                            std::copy(acc.a.begin(), acc.a.end(), trial.a.begin());
                            const auto pr = row(perp, r);
                            std::copy(pr.begin(), pr.end(), trial.a.begin() + static_cast<std::ptrdiff_t>(acc.rows) * nd[i]);
                            if (rank(f, trial) > rk) {
                                acc = trial;
                                ++rk;
                                comp[i].push_back(pr);
                            }
                        }
                    }
                    // normalize the induced form on the quotient
                    for (int i = 0; i < n; ++i) {
                        if (q.node_class(i) != NodeClass::Plus || comp[i].empty()) continue;
                        const int si = q.sigma_node(i);
                        const Mat g = gram_of(f, comp[i], gram.J[i], comp[si]);
                        comp[si] = combine(f, comp[si], inverse(f, g));
                    }
                    int sector = -1;
                    std::vector<std::vector<std::vector<int>>> fixed_basis = comp;
                    for (std::size_t s = 0; s < m_census.spaces().size() && sector < 0; ++s) {
                        const GramChoice& target = m_census.spaces()[s].gram();
                        bool ok = true;
                        auto trial = comp;
                        for (int i = 0; i < n && ok; ++i) {
                            if (q.node_class(i) != NodeClass::Fixed || comp[i].empty()) continue;
                            const Mat g = gram_of(f, comp[i], gram.J[i], comp[i]);
                            bool found = false;
                            for (const Mat& t : general_linear(f, e[i])) {
                                if (mul(f, mul(f, transpose(t), g), t) == target.J[i]) {
                                    trial[i] = combine(f, comp[i], t);
                                    found = true;
                                    break;
                                }
                            }
                            ok = found;
                        }
                        if (ok) {
                            sector = static_cast<int>(s);
                            fixed_basis = trial;
                        }
                    }
                    if (sector < 0) throw std::logic_error("quotient form matches no standard sector");
                    std::vector<Mat> qmaps(q.num_arrows());
                    for (int a = 0; a < q.num_arrows(); ++a) {
                        const Arrow& ar = q.arrows()[a];
                        Mat m(e[ar.tgt], e[ar.src]);
                        std::vector<std::vector<int>> frame = fixed_basis[ar.tgt];
                        frame.insert(frame.end(), ubasis[ar.tgt].begin(), ubasis[ar.tgt].end());
                        for (int c = 0; c < e[ar.src]; ++c) {
                            const auto img = apply(f, maps[a], fixed_basis[ar.src][c]);
                            const auto co = coordinates(f, frame, img);
                            for (int r = 0; r < e[ar.tgt]; ++r) m(r, c) = co[r];
                        }
                        qmaps[a] = std::move(m);
                    }
                    const PointSpace& mspace = m_census.spaces()[sector];
                    m_ok = m_census.class_of(sector, mspace.encode(qmaps)) == m_class;
                }
                if (u_ok && m_ok) ++matches;
            }
            int k = 0;
            while (k < n && ++idx[k] == subs[k].size()) {
                idx[k] = 0;
                ++k;
            }
            done = k == n;
        }
        rep.flags += matches;
        if (matches) lhs += mpq_class(mpz_class(std::to_string(matches)), ne.aut_order);
    }
    lhs.canonicalize();
    const long ex = -euler_form(q, e, d) - sd_euler(q, d);
    const long p = f.p();
    mpq_class rhs = ex >= 0 ? mpq_class(ipow(p, ex)) : mpq_class(mpz_class(1), ipow(p, -ex));
    rhs /= mpq_class(u_census.entries().at(u_class).aut_order * m_census.entries().at(m_class).aut_order);
    rhs.canonicalize();
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.equal = lhs == rhs;
    return rep;
}

}  // namespace oridt
