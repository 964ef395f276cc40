// Serial reference against the OpenMP kernels: torus products and oracle point counts.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "oridt/engine.hpp"
#include "oridt/identities.hpp"
#include "oridt/oracle.hpp"

using namespace oridt;

namespace {

double seconds(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

QuiverWithDuality kronecker(int n) {
    RawQuiver r;
    r.nodes = {"-1", "1"};
    r.sigma_nodes = {{"-1", "1"}, {"1", "-1"}};
    r.s = {{"-1", -1}, {"1", -1}};
    for (int k = 0; k < n; ++k) {
        const std::string id = "a" + std::to_string(k + 1);
        r.arrows.push_back({id, "-1", "1"});
        r.sigma_arrows[id] = id;
        r.tau[id] = -1;
    }
    return QuiverWithDuality::validate(r);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    bool ok = true;

    {
        const QuiverWithDuality q = kronecker(3);
        const int bound = 10;
        DtEngine eng(q);
        TorusSeries a = TorusSeries::unit(q, bound);
        for (const DimVector& d : enumerate_dimvectors(q, bound)) a.add(d, eng.a_total(d));
        const TorusSeries b = qdilog(q, {1, 1}, DilogBase::Q2, 1, bound);
        TorusSeries s;
        TorusSeries p;
        const double ts = seconds([&] { s = torus_mul(q, a, b, Exec::Serial); });
        const double tp = seconds([&] { p = torus_mul(q, a, b, Exec::Parallel); });
        ok = ok && s == p;
        std::printf("torus_mul K3 bound %d: serial %.3fs parallel %.3fs agree %s\n", bound, ts, tp,
                    s == p ? "yes" : "NO");
    }

    {
        const QuiverWithDuality q = kronecker(2);
        const PrimeField f(7);
        const DimVector e{2, 2};
        for (const GramChoice& g : gram_sectors(q, e, f)) {
            const PointSpace space = PointSpace::selfdual(q, e, g, f);
            std::uint64_t s = 0;
            std::uint64_t p = 0;
            const double ts = seconds([&] { s = count_semistable(q, space, f, {1, -1}, {}, Exec::Serial); });
            const double tp = seconds([&] { p = count_semistable(q, space, f, {1, -1}, {}, Exec::Parallel); });
            ok = ok && s == p;
            std::printf("count_semistable K2 e=(2,2) p=7 (%llu points): serial %.3fs parallel %.3fs agree %s\n",
                        static_cast<unsigned long long>(*space.size()), ts, tp, s == p ? "yes" : "NO");
        }
    }

    {
        const QuiverWithDuality q = a2_flip(true);
        const PrimeField f(7);
        const DimVector d{2, 2};
        const PointSpace space = PointSpace::ordinary(q, d, f);
        std::uint64_t s = 0;
        std::uint64_t p = 0;
        const double ts = seconds([&] { s = count_semistable(q, space, f, {1, -1}, {}, Exec::Serial); });
        const double tp = seconds([&] { p = count_semistable(q, space, f, {1, -1}, {}, Exec::Parallel); });
        ok = ok && s == p;
        std::printf("count_semistable A2 d=(2,2) p=7 (%llu points): serial %.3fs parallel %.3fs agree %s\n",
                    static_cast<unsigned long long>(*space.size()), ts, tp, s == p ? "yes" : "NO");
    }
    return ok ? 0 : 1;
}
