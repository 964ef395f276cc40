#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oridt/error.hpp"
#include "oridt/identities.hpp"
#include "oridt/series.hpp"

using namespace oridt;

namespace {

const ScalarV v = ScalarV::v_pow(1);

TorusSeries mono(int bound, const DimVector& d, const ScalarV& c = ScalarV(1)) {
    TorusSeries t;
    t.bound = bound;
    t.add(d, c);
    return t;
}

ModuleSeries xi(int bound, const DimVector& e, const ScalarV& c = ScalarV(1)) {
    ModuleSeries m;
    m.bound = bound;
    m.add(e, c);
    return m;
}

ScalarV small_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<int> c(-2, 2);
    std::uniform_int_distribution<int> k(-2, 2);
    return ScalarV::v_pow(k(rng)) * ScalarV(c(rng)) + ScalarV(c(rng));
}

TorusSeries random_torus(const QuiverWithDuality& q, int bound, std::mt19937& rng) {
    TorusSeries t;
    t.bound = bound;
    std::bernoulli_distribution keep(0.5);
    t.add(q.zero(), small_scalar(rng));
    for (const auto& d : enumerate_dimvectors(q, bound)) {
        if (keep(rng)) t.add(d, small_scalar(rng));
    }
    return t;
}

ModuleSeries random_module(const QuiverWithDuality& q, int bound, std::mt19937& rng) {
    ModuleSeries m;
    m.bound = bound;
    for (const auto& e : enumerate_selfdual(q, bound)) m.add(e, small_scalar(rng));
    return m;
}

std::vector<QuiverWithDuality> quivers() {
    return {fixtures::a2(true), fixtures::a2(false), fixtures::kronecker(2), fixtures::a3(true)};
}

}  // namespace

TEST_CASE("torus product examples") {
    const auto q = fixtures::a2(true);
    const int n = 4;
    CHECK(torus_mul(q, mono(n, {1, 0}), mono(n, {0, 1})) == mono(n, {1, 1}, ScalarV::v_pow(-1)));
    std::mt19937 rng(3);
    const TorusSeries a = random_torus(q, n, rng);
    CHECK(torus_mul(q, TorusSeries::unit(q, n), a) == a);
    CHECK(torus_mul(q, mono(n, {1, 1}), mono(n, {1, 1})) == mono(n, {2, 2}));
    CHECK(torus_mul(q, mono(n, {2, 1}), mono(n, {1, 1})).terms.empty());
}

TEST_CASE("bound mismatch") {
    const auto q = fixtures::a2(true);
    try {
        torus_mul(q, TorusSeries::unit(q, 2), TorusSeries::unit(q, 3));
        FAIL("expected BoundMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BoundMismatch);
    }
    CHECK_THROWS_AS(module_act(q, TorusSeries::unit(q, 2), ModuleSeries::vacuum(q, 3)), Error);
}

TEST_CASE("module action examples") {
    const auto q = fixtures::a2(true);
    const int n = 4;
    const auto m = xi(n, {1, 1}, ScalarV(5));
    CHECK(module_act(q, TorusSeries::unit(q, n), m) == m);
    CHECK(module_act(q, mono(n, {1, 0}), ModuleSeries::vacuum(q, n)) == xi(n, {1, 1}, ScalarV::v_pow(-1)));
    CHECK(module_act(q, mono(n, {0, 1}), ModuleSeries::vacuum(q, n)) == xi(n, {1, 1}, v));
}

TEST_CASE("dilogarithm coefficients") {
    const auto q = fixtures::a2(true);
    const TorusSeries e = qdilog(q, {1, 0}, DilogBase::Q, 0, 2);
    CHECK(e.coeff({0, 0}) == ScalarV(1));
    CHECK(e.coeff({1, 0}) == v / (v * v - ScalarV(1)));
    const ScalarV q1 = v * v;
    CHECK(e.coeff({2, 0}) == q1 * q1 / ((q1 * q1 - ScalarV(1)) * (q1 * q1 - q1)));
    CHECK(e.coeff({2, 0}) == v.pow(4) / ((v.pow(4) - ScalarV(1)) * (v.pow(4) - v.pow(2))));
    const TorusSeries h = qdilog(q, {1, 1}, DilogBase::Q2, -1, 2);
    CHECK(h.coeff({1, 1}) == v / (v.pow(4) - ScalarV(1)));
    CHECK(restrict(e, 1) == qdilog(q, {1, 0}, DilogBase::Q, 0, 1));
    try {
        qdilog(q, {0, 0}, DilogBase::Q, 0, 2);
        FAIL("expected ZeroVector");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::ZeroVector);
    }
}

TEST_CASE("rescaled dilog products") {
    const auto q = fixtures::a2(true);
    const int n = 4;
    const auto none = [](const DimVector&) { return 0L; };
    CHECK(rescale_dilog_product(q, {}, none, n) == TorusSeries::unit(q, n));
    const auto half = [](const DimVector&) { return 1L; };
    CHECK(rescale_dilog_product(q, {{{1, 0}}}, half, n) == qdilog(q, {1, 0}, DilogBase::Q, 1, n));
    // slope-zero factor (1,1) with the rule from e = 0
    const DimVector e0{0, 0};
    const DimVector d{1, 1};
    CHECK(1 - 2 * euler_form(q, e0, d) - 2 * sd_euler(q, d) == 1);
}

TEST_CASE("torus inverse and powers") {
    const auto q = fixtures::kronecker(2);
    std::mt19937 rng(5);
    TorusSeries a = random_torus(q, 4, rng);
    a.terms[q.zero()] = ScalarV(1);
    CHECK(torus_mul(q, a, torus_inverse(q, a)) == TorusSeries::unit(q, 4));
    CHECK(torus_pow(q, a, 2) == torus_mul(q, a, a));
    CHECK(torus_mul(q, torus_pow(q, a, -2), torus_pow(q, a, 2)) == TorusSeries::unit(q, 4));
}

TEST_CASE("dilog identities on A2") {
    for (const char* name : {"pentagon", "a2-orthogonal", "a2-symplectic"}) {
        const IdentityCheck c = dilog_identity(name, 6);
        CHECK_MESSAGE(c.equal, name);
    }
    CHECK_THROWS_AS(dilog_identity("hexagon", 3), Error);
}

TEST_CASE("property: associativity") {
    std::mt19937 rng(1);
    for (const auto& q : quivers()) {
        for (int it = 0; it < 3; ++it) {
            const auto a = random_torus(q, 5, rng);
            const auto b = random_torus(q, 5, rng);
            const auto c = random_torus(q, 5, rng);
            CHECK(torus_mul(q, torus_mul(q, a, b), c) == torus_mul(q, a, torus_mul(q, b, c)));
        }
    }
}

TEST_CASE("property: module axiom") {
    std::mt19937 rng(2);
    for (const auto& q : quivers()) {
        for (int it = 0; it < 3; ++it) {
            const auto a = random_torus(q, 5, rng);
            const auto b = random_torus(q, 5, rng);
            const auto m = random_module(q, 5, rng);
            CHECK(module_act(q, torus_mul(q, a, b), m) == module_act(q, a, module_act(q, b, m)));
        }
    }
}

TEST_CASE("property: unit laws") {
    std::mt19937 rng(3);
    for (const auto& q : quivers()) {
        const auto a = random_torus(q, 4, rng);
        const auto m = random_module(q, 4, rng);
        CHECK(torus_mul(q, a, TorusSeries::unit(q, 4)) == a);
        CHECK(torus_mul(q, TorusSeries::unit(q, 4), a) == a);
        CHECK(module_act(q, TorusSeries::unit(q, 4), m) == m);
    }
}

TEST_CASE("property: truncation coherence") {
    std::mt19937 rng(4);
    for (const auto& q : quivers()) {
        const auto a = random_torus(q, 5, rng);
        const auto b = random_torus(q, 5, rng);
        const auto m = random_module(q, 5, rng);
        for (int n = 0; n < 5; ++n) {
            CHECK(restrict(torus_mul(q, a, b), n) == torus_mul(q, restrict(a, n), restrict(b, n)));
            CHECK(restrict(module_act(q, a, m), n) == module_act(q, restrict(a, n), restrict(m, n)));
        }
        for (int n = 1; n <= 5; ++n) {
            CHECK(restrict(qdilog(q, {1, 1}, DilogBase::Q2, 1, 6), n) == qdilog(q, {1, 1}, DilogBase::Q2, 1, n));
        }
    }
}

TEST_CASE("property: serial and parallel kernels agree") {
    std::mt19937 rng(6);
    for (const auto& q : quivers()) {
        const auto a = random_torus(q, 6, rng);
        const auto b = random_torus(q, 6, rng);
        const auto m = random_module(q, 6, rng);
        CHECK(torus_mul(q, a, b, Exec::Serial) == torus_mul(q, a, b, Exec::Parallel));
        CHECK(module_act(q, a, m, Exec::Serial) == module_act(q, a, m, Exec::Parallel));
    }
}

TEST_CASE("first difference is reported in graded order") {
    const auto q = fixtures::a2(true);
    TorusSeries a = TorusSeries::unit(q, 3);
    TorusSeries b = a;
    b.add({2, 0}, ScalarV(1));
    b.add({0, 1}, ScalarV(1));
    CHECK(first_difference(a, b) == DimVector{0, 1});
    CHECK_FALSE(first_difference(a, a));
}
