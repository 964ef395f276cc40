#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oridt/fp.hpp"
#include "oridt/quiver.hpp"
#include "oridt/series.hpp"

namespace oridt {

struct OracleCaps {
    std::uint64_t max_points = 10'000'000;
    std::uint64_t max_group = 1'000'000;
    std::uint64_t max_subspace_combos = 1'000'000;
    int max_prime = 13;
};

// Gram data of one self-dual sector: J[i] is the pairing block V_i x V_sigma(i).
struct GramChoice {
    std::vector<int> eps;  // per node: +1/-1 label at orthogonal fixed nodes of positive dimension, else 0
    std::vector<Mat> J;
    // Witt type of the form at orthogonal fixed nodes of even positive dimension, else 0.
    std::vector<int> witt;
    // "standard", or node:sign for each orthogonal fixed node
    std::string label(const QuiverWithDuality& q) const;
};

// Standard blocks: identity for swapped pairs, identity or diag(1,..,1,nu) at orthogonal
// fixed nodes, [[0,I],[-I,0]] at symplectic fixed nodes.
std::vector<GramChoice> gram_sectors(const QuiverWithDuality& q, const DimVector& e, const PrimeField& f);

// How the points of R_d (or R^sigma_e for a sector) are parametrized.
class PointSpace {
public:
    // Ordinary representations of dimension d.
    static PointSpace ordinary(const QuiverWithDuality& q, const DimVector& d, const PrimeField& f);
    // Self-dual representations in the given sector.
    static PointSpace selfdual(const QuiverWithDuality& q, const DimVector& e, const GramChoice& g,
                               const PrimeField& f);

    const DimVector& dims() const { return dims_; }
    int params() const { return params_; }
    // p^params, or nullopt if it overflows 64 bits.
    std::optional<std::uint64_t> size() const;
    bool is_selfdual() const { return selfdual_; }
    const GramChoice& gram() const { return gram_; }

    std::vector<Mat> decode(std::uint64_t index) const;
    std::uint64_t encode(const std::vector<Mat>& maps) const;

private:
    enum class Kind { Free, Form, Dependent };
    struct Slot {
        Kind kind = Kind::Free;
        int offset = 0;
        int sym = 1;  // for Form: +1 symmetric, -1 skew
    };

    const QuiverWithDuality* q_ = nullptr;
    const PrimeField* f_ = nullptr;
    DimVector dims_;
    bool selfdual_ = false;
    GramChoice gram_;
    std::vector<Slot> slots_;
    int params_ = 0;
};

// Whether every graded subspace closed under the maps has slope at most mu(d).
// With `gram`, only isotropic subrepresentations are tested.
bool is_semistable(const QuiverWithDuality& q, const PrimeField& f, const Stability& theta,
                   const DimVector& d, const std::vector<Mat>& maps, const OracleCaps& caps,
                   const GramChoice* isotropic_only = nullptr);

// Exact group orders from closed formulas.
mpz_class gl_order(long p, int n);
mpz_class group_order(const QuiverWithDuality& q, const DimVector& d, long p);
// Self-dual isometry group; witt[i] = +1 split / -1 non-split at even orthogonal fixed nodes.
mpz_class group_order_sigma(const QuiverWithDuality& q, const DimVector& e, const std::vector<int>& witt, long p);
mpz_class orthogonal_order(long p, int n, int witt);
mpz_class symplectic_order(long p, int n);

// All group elements, one matrix per node.
std::vector<std::vector<Mat>> group_elements(const QuiverWithDuality& q, const PointSpace& space,
                                             const PrimeField& f, const OracleCaps& caps);

std::uint64_t count_semistable(const QuiverWithDuality& q, const PointSpace& space, const PrimeField& f,
                               const Stability& theta, const OracleCaps& caps, Exec exec = Exec::Parallel);

// #semistable points / #GL_d
mpq_class stack_count(const QuiverWithDuality& q, const Stability& theta, const DimVector& d, long p,
                      const OracleCaps& caps = {}, Exec exec = Exec::Parallel);
// sum over sectors of #semistable points / #G^sigma
mpq_class stack_count_sigma(const QuiverWithDuality& q, const Stability& theta, const DimVector& e, long p,
                            const OracleCaps& caps = {}, Exec exec = Exec::Parallel);

struct CensusEntry {
    int sector = 0;
    std::uint64_t representative = 0;
    std::uint64_t orbit_size = 0;
    mpz_class aut_order;
    bool semistable = false;
};

// Orbit decomposition of every point (all sectors for self-dual dimension vectors).
class Census {
public:
    static Census ordinary(const QuiverWithDuality& q, const DimVector& d, const PrimeField& f,
                           const Stability& theta, const OracleCaps& caps = {});
    static Census selfdual(const QuiverWithDuality& q, const DimVector& e, const PrimeField& f,
                           const Stability& theta, const OracleCaps& caps = {});

    const std::vector<CensusEntry>& entries() const { return entries_; }
    const std::vector<PointSpace>& spaces() const { return spaces_; }
    int class_of(int sector, std::uint64_t point) const;
    // sum of 1/#Aut over classes, optionally semistable ones only
    mpq_class mass(bool semistable_only) const;

private:
    std::vector<PointSpace> spaces_;
    std::vector<std::vector<int>> class_index_;
    std::vector<CensusEntry> entries_;
};

struct IdentityReport {
    mpq_class lhs;
    mpq_class rhs;
    bool equal = false;
    int ambient_classes = 0;   // self-dual classes of dimension H(d) + e
    std::uint64_t flags = 0;   // isotropic subrepresentations matched
};

// Sum_N G^N_{U,M} / #Aut_S N against q^{-chi(e,d) - E(d)} / (#Aut U * #Aut_S M).
IdentityReport verify_integration_identity(const QuiverWithDuality& q, const PrimeField& f,
                                           const Census& u_census, int u_class, const Census& m_census,
                                           int m_class, const OracleCaps& caps = {});

}  // namespace oridt
