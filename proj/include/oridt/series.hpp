#pragma once

#include <functional>
#include <map>
#include <vector>

#include "oridt/quiver.hpp"
#include "oridt/scalar.hpp"

namespace oridt {

// Truncated element of the quantum torus: sum of c_d x_d with |d| <= bound.
struct TorusSeries {
    int bound = 0;
    std::map<DimVector, ScalarV> terms;

    static TorusSeries unit(const QuiverWithDuality& q, int bound);
    ScalarV coeff(const DimVector& d) const;
    void add(const DimVector& d, const ScalarV& c);
    friend bool operator==(const TorusSeries& a, const TorusSeries& b) = default;
};

// Truncated element of the module: sum of c_e xi_e over admissible symmetric e.
struct ModuleSeries {
    int bound = 0;
    std::map<DimVector, ScalarV> terms;

    static ModuleSeries vacuum(const QuiverWithDuality& q, int bound);
    ScalarV coeff(const DimVector& e) const;
    void add(const DimVector& e, const ScalarV& c);
    friend bool operator==(const ModuleSeries& a, const ModuleSeries& b) = default;
};

enum class Exec { Serial, Parallel };

TorusSeries torus_mul(const QuiverWithDuality& q, const TorusSeries& a, const TorusSeries& b,
                      Exec exec = Exec::Parallel);
TorusSeries torus_add(const TorusSeries& a, const TorusSeries& b);
TorusSeries torus_scale(const TorusSeries& a, const ScalarV& c);
// Requires an invertible constant term.
TorusSeries torus_inverse(const QuiverWithDuality& q, const TorusSeries& a);
TorusSeries torus_pow(const QuiverWithDuality& q, const TorusSeries& a, long n);
TorusSeries restrict(const TorusSeries& a, int bound);

ModuleSeries module_act(const QuiverWithDuality& q, const TorusSeries& a, const ModuleSeries& m,
                        Exec exec = Exec::Parallel);
ModuleSeries module_add(const ModuleSeries& a, const ModuleSeries& b);
ModuleSeries module_scale(const ModuleSeries& a, const ScalarV& c);
ModuleSeries restrict(const ModuleSeries& a, int bound);

// First key (graded-lex) where the two series differ, if any.
std::optional<DimVector> first_difference(const TorusSeries& a, const TorusSeries& b);
std::optional<DimVector> first_difference(const ModuleSeries& a, const ModuleSeries& b);

enum class DilogBase { Q, Q2 };

// E_base(v^shift_v x_d) = sum_n base^{n^2/2} y^n / prod_{k<n} (base^n - base^k), truncated at bound.
TorusSeries qdilog(const QuiverWithDuality& q, const DimVector& d, DilogBase base, long shift_v,
                   int bound);

struct DilogFactor {
    DimVector d;
    DilogBase base = DilogBase::Q;
    long shift_v = 0;
    long exponent = 1;
};

// Ordered product of E_base(v^shift x_d)^exponent.
TorusSeries dilog_product(const QuiverWithDuality& q, const std::vector<DilogFactor>& factors,
                          int bound);
// As dilog_product with each shift increased by rule(d), in units of v.
TorusSeries rescale_dilog_product(const QuiverWithDuality& q, const std::vector<DilogFactor>& factors,
                                  const std::function<long(const DimVector&)>& rule, int bound);

}  // namespace oridt
