#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oridt/error.hpp"

namespace oridt {

// Node-indexed vectors. Indices follow the node order of the description.
using DimVector = std::vector<int>;
using Stability = std::vector<long>;

// Graded lexicographic order: total dimension first, then lexicographic.
struct DimLess {
    bool operator()(const DimVector& a, const DimVector& b) const;
};

int total_dim(const DimVector& d);

// Exact slope theta(d)/dim(d), stored reduced with positive denominator.
class Slope {
public:
    Slope() = default;
    Slope(long long num, long long den);

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_positive() const { return num_ > 0; }

    std::strong_ordering operator<=>(const Slope& other) const;
    bool operator==(const Slope& other) const = default;

    std::string to_string() const;

private:
    long long num_ = 0;
    long long den_ = 1;
};

struct RawArrow {
    std::string id;
    std::string src;
    std::string tgt;
};

// Unvalidated description as read from a config file.
struct RawQuiver {
    std::vector<std::string> nodes;
    std::vector<RawArrow> arrows;
    std::map<std::string, std::string> sigma_nodes;
    std::map<std::string, std::string> sigma_arrows;
    std::map<std::string, int> s;
    std::map<std::string, int> tau;
};

enum class NodeClass { Plus, Fixed, Minus };

struct Arrow {
    std::string id;
    int src;
    int tgt;
};

// Which member of a swapped pair is placed in the positive part.
enum class PositiveRule { LexSmaller, LexLarger };

class QuiverWithDuality {
public:
    static QuiverWithDuality validate(const RawQuiver& raw,
                                      PositiveRule rule = PositiveRule::LexSmaller);

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }
    const std::vector<std::string>& node_ids() const { return nodes_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::string& node_id(int i) const { return nodes_[i]; }
    std::optional<int> node_index(const std::string& id) const;

    int sigma_node(int i) const { return sigma_nodes_[i]; }
    int sigma_arrow(int a) const { return sigma_arrows_[a]; }
    int s(int i) const { return s_[i]; }
    int tau(int a) const { return tau_[a]; }
    NodeClass node_class(int i) const { return node_class_[i]; }
    NodeClass arrow_class(int a) const { return arrow_class_[a]; }

    std::vector<int> nodes_in(NodeClass c) const;
    std::vector<int> arrows_in(NodeClass c) const;

    DimVector zero() const { return DimVector(nodes_.size(), 0); }
    DimVector sigma(const DimVector& d) const;
    Stability sigma_dual(const Stability& theta) const;
    bool is_symmetric(const DimVector& d) const;

    // Stable identifier of the structure, used to key on-disk caches.
    std::string fingerprint() const;
    const RawQuiver& raw() const { return raw_; }

private:
    QuiverWithDuality() = default;

    RawQuiver raw_;
    std::vector<std::string> nodes_;
    std::vector<Arrow> arrows_;
    std::vector<int> sigma_nodes_;
    std::vector<int> sigma_arrows_;
    std::vector<int> s_;
    std::vector<int> tau_;
    std::vector<NodeClass> node_class_;
    std::vector<NodeClass> arrow_class_;
};

// chi(d, d') = sum_i d_i d'_i - sum_{i->j} d_i d'_j
long euler_form(const QuiverWithDuality& q, const DimVector& d, const DimVector& dp);
// <d, d'> = chi(d, d') - chi(d', d)
long skew_form(const QuiverWithDuality& q, const DimVector& d, const DimVector& dp);

struct SdEulerParts {
    long e0;  // node part: the isometry group dimension for symmetric d
    long e1;  // arrow part: minus the dimension of the self-dual structure space
};

SdEulerParts sd_euler_parts(const QuiverWithDuality& q, const DimVector& d);
long sd_euler(const QuiverWithDuality& q, const DimVector& d);
// E(d) - E(sigma(d))
long e_tilde(const QuiverWithDuality& q, const DimVector& d);

// d + sigma(d)
DimVector hyperbolic_sum(const QuiverWithDuality& q, const DimVector& d);

DimVector add(const DimVector& a, const DimVector& b);
DimVector sub(const DimVector& a, const DimVector& b);
DimVector scale(const DimVector& a, int k);
bool leq(const DimVector& a, const DimVector& b);
bool is_zero(const DimVector& d);
bool is_primitive(const DimVector& d);

bool is_sigma_compatible(const QuiverWithDuality& q, const Stability& theta);
long theta_of(const Stability& theta, const DimVector& d);
Slope slope(const Stability& theta, const DimVector& d);

// sigma(e) = e and e_i even wherever sigma fixes i with s_i = -1.
bool is_admissible_selfdual(const QuiverWithDuality& q, const DimVector& e);

// All d with 0 < |d| <= n, graded-lex order.
std::vector<DimVector> enumerate_dimvectors(const QuiverWithDuality& q, int n);
// All admissible symmetric e with |e| <= n (zero included), graded-lex order.
std::vector<DimVector> enumerate_selfdual(const QuiverWithDuality& q, int n);
// All d <= bound componentwise, zero excluded, graded-lex order.
std::vector<DimVector> enumerate_below(const DimVector& bound);

enum class FiniteTypeClass { NotFinite, TypeAFlip, DisjointPair, Mixed };

struct FiniteTypeVerdict {
    bool finite = false;
    FiniteTypeClass cls = FiniteTypeClass::NotFinite;
    std::vector<std::string> components;  // Dynkin label per connected component
    std::string reason;
};

const char* to_string(FiniteTypeClass c);

FiniteTypeVerdict is_finite_type(const QuiverWithDuality& q);

struct GenericityVerdict {
    bool generic = true;
    std::string reason;  // first failing witness, empty when generic
    int bound = 0;       // the verdict certifies dimension vectors up to this total dimension
};

// Bounded scan. `semistable_nonzero(d)` reports whether the semistable count at d is nonzero.
GenericityVerdict is_sigma_generic(const QuiverWithDuality& q, const Stability& theta, int n,
                                   const std::function<bool(const DimVector&)>& semistable_nonzero);

std::string to_string(const DimVector& d);

}  // namespace oridt
