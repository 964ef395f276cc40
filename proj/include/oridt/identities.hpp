#pragma once

#include <map>
#include <optional>
#include <string>

#include "oridt/quiver.hpp"
#include "oridt/scalar.hpp"
#include "oridt/series.hpp"

namespace oridt {

// Outcome of comparing two truncated expansions term by term.
struct IdentityCheck {
    std::string name;
    int bound = 0;
    bool equal = false;
    bool module = false;  // left/right are module coefficients (xi_e) rather than torus ones
    std::map<DimVector, ScalarV> left;
    std::map<DimVector, ScalarV> right;
    std::optional<DimVector> first_difference;
};

// A2 with nodes -1 (source) and 1 (sink) and a single arrow fixed by the flip.
QuiverWithDuality a2_flip(bool symplectic);

// E(x_sink) E(x_source) = E(x_source) E(x_(1,1)) E(x_sink)
IdentityCheck pentagon_identity(int bound);
// E(x_sink) * xi_0 = E(x_source) E_{q^2}(v^-1 x_(1,1)) * xi_0
IdentityCheck a2_orthogonal_identity(int bound);
// E(x_sink) * xi_0 = E(x_source) (E_{q^2}(v x_(1,1)) * xi_0 + E_{q^2}(v^-1 x_(1,1)) * xi_(1,1))
IdentityCheck a2_symplectic_identity(int bound);

// Dispatch by name: "pentagon", "a2-orthogonal", "a2-symplectic".
IdentityCheck dilog_identity(const std::string& name, int bound);

}  // namespace oridt
