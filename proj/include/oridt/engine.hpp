#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "oridt/quiver.hpp"
#include "oridt/scalar.hpp"
#include "oridt/series.hpp"

namespace oridt {

struct OmegaTable {
    int bound = 0;
    Stability theta;
    std::map<DimVector, long> omega;        // ordinary invariants, every slope
    std::map<DimVector, long> omega_sigma;  // orientifold invariants, empty for dt_factorize
    bool finite_type = false;
    std::string verdict;
    std::vector<std::string> warnings;
    // set when an extracted coefficient is not an integer
    std::optional<DimVector> failed_at;
    std::string residual;

    bool integral() const { return !failed_at; }
};

struct WallCrossReport {
    bool equal = true;
    int bound = 0;
    ModuleSeries left;
    ModuleSeries right;
    std::optional<DimVector> first_difference;
};

struct PrimitiveWcf {
    long I = 0;
    long delta = 0;
    std::vector<std::string> warnings;
};

// I(d,e) = <e,d> + Etilde(d), delta = (-1)^{I-1} I omega_d omega_e
PrimitiveWcf primitive_wcf(const QuiverWithDuality& q, const DimVector& d, const DimVector& e,
                           long omega_d, long omega_sigma_e);

// Integer value of a constant scalar, if it is one.
std::optional<long> as_integer(const ScalarV& s);

// Memoized generating functions for one quiver. Thread-safe; values are pure.
class DtEngine {
public:
    explicit DtEngine(const QuiverWithDuality& q) : q_(q) {}

    const QuiverWithDuality& quiver() const { return q_; }

    // q^{-chi(d,d)/2} / (q^{-1})_d
    ScalarV a_total(const DimVector& d) const;
    // q^{-E(e)/2} / (q^{-1})^sigma_e, zero for inadmissible e
    ScalarV a_sigma_total(const DimVector& e) const;

    ScalarV a_semistable(const Stability& theta, const DimVector& d);
    TorusSeries a_slope(const Stability& theta, const Slope& mu, int bound);
    // Realizable slopes of the given sign class, strictly decreasing.
    std::vector<Slope> slopes(const Stability& theta, int bound, bool positive_only);
    TorusSeries positive_slope_product(const Stability& theta, int bound);

    ScalarV a_sigma_semistable_rec(const Stability& theta, const DimVector& e);
    ScalarV a_sigma_semistable_closed(const Stability& theta, const DimVector& e);
    ModuleSeries orientifold_series(const Stability& theta, int bound);
    ModuleSeries orientifold_series_closed(const Stability& theta, int bound);
    ModuleSeries a_sigma_total_series(int bound) const;

    // Compares prod_{mu>0} A_mu * A^{sigma} for the two stabilities, the self-dual
    // factor taken from the closed form.
    WallCrossReport wallcross_check(const Stability& theta, const Stability& theta2, int bound);

    OmegaTable dt_factorize(const Stability& theta, int bound);
    OmegaTable oridt_factorize(const Stability& theta, int bound);

    // Products of dilogarithms rebuilt from a table.
    TorusSeries expand_slope(const OmegaTable& t, const Slope& mu, int bound) const;
    ModuleSeries expand_orientifold(const OmegaTable& t, int bound) const;

    std::size_t cache_size() const;
    void save_cache(const std::string& dir) const;
    void load_cache(const std::string& dir);

private:
    struct Memo {
        std::map<DimVector, ScalarV> ss;
        std::map<std::pair<DimVector, Slope>, ScalarV> hn;
        std::map<DimVector, ScalarV> sss;
        std::map<std::pair<DimVector, Slope>, ScalarV> shn;
        std::map<DimVector, ScalarV> closed;
    };

    template <class Map, class Key>
    std::optional<ScalarV> lookup(const Stability& theta, Map Memo::*field, const Key& key) const;
    template <class Map, class Key>
    ScalarV store(const Stability& theta, Map Memo::*field, const Key& key, const ScalarV& value);

    // Sum over HN types of d with every slope below mu.
    ScalarV hn_tail(const Stability& theta, const DimVector& d, const Slope& mu);
    // Sum over sigma-HN types of e whose ordinary slopes lie strictly between 0 and mu.
    ScalarV sigma_hn_tail(const Stability& theta, const DimVector& e, const Slope& mu);
    void require_compatible(const Stability& theta) const;
    void require_admissible(const DimVector& e) const;
    std::vector<DilogFactor> slope_factors(const OmegaTable& t, const Slope& mu, DilogBase base) const;

    QuiverWithDuality q_;
    mutable std::mutex mu_;
    std::map<Stability, Memo> memo_;
};

}  // namespace oridt
