#pragma once

#include <string>

#include "oridt/quiver.hpp"

namespace fixtures {

// A2 with the flip: nodes -1, 1 and one fixed arrow -1 -> 1.
inline oridt::RawQuiver a2_raw(bool symplectic) {
    oridt::RawQuiver r;
    r.nodes = {"-1", "1"};
    r.arrows = {{"a", "-1", "1"}};
    r.sigma_nodes = {{"-1", "1"}, {"1", "-1"}};
    r.sigma_arrows = {{"a", "a"}};
    const int s = symplectic ? -1 : 1;
    r.s = {{"-1", s}, {"1", s}};
    r.tau = {{"a", -1}};
    return r;
}

inline oridt::QuiverWithDuality a2(bool symplectic) {
    return oridt::QuiverWithDuality::validate(a2_raw(symplectic));
}

// Kronecker quiver with n fixed arrows, symplectic duality.
inline oridt::RawQuiver kronecker_raw(int n) {
    oridt::RawQuiver r;
    r.nodes = {"-1", "1"};
    r.sigma_nodes = {{"-1", "1"}, {"1", "-1"}};
    r.s = {{"-1", -1}, {"1", -1}};
    for (int k = 0; k < n; ++k) {
        const std::string id = "a" + std::to_string(k + 1);
        r.arrows.push_back({id, "-1", "1"});
        r.sigma_arrows[id] = id;
        r.tau[id] = -1;
    }
    return r;
}

inline oridt::QuiverWithDuality kronecker(int n) { return oridt::QuiverWithDuality::validate(kronecker_raw(n)); }

// A4 with the flip: -2 -> -1 -> 1 -> 2.
inline oridt::RawQuiver a4_raw(bool symplectic) {
    oridt::RawQuiver r;
    r.nodes = {"-2", "-1", "1", "2"};
    r.arrows = {{"b", "-2", "-1"}, {"a", "-1", "1"}, {"c", "1", "2"}};
    r.sigma_nodes = {{"-2", "2"}, {"2", "-2"}, {"-1", "1"}, {"1", "-1"}};
    r.sigma_arrows = {{"a", "a"}, {"b", "c"}, {"c", "b"}};
    const int s = symplectic ? -1 : 1;
    r.s = {{"-2", s}, {"-1", s}, {"1", s}, {"2", s}};
    r.tau = {{"a", -1}, {"b", 1}, {"c", 1}};
    return r;
}

inline oridt::QuiverWithDuality a4(bool symplectic) { return oridt::QuiverWithDuality::validate(a4_raw(symplectic)); }

// A3 with the flip fixing the middle node: -1 -> 0 -> 1.
inline oridt::QuiverWithDuality a3(bool symplectic) {
    oridt::RawQuiver r;
    r.nodes = {"-1", "0", "1"};
    r.arrows = {{"b", "-1", "0"}, {"c", "0", "1"}};
    r.sigma_nodes = {{"-1", "1"}, {"1", "-1"}, {"0", "0"}};
    r.sigma_arrows = {{"b", "c"}, {"c", "b"}};
    const int s = symplectic ? -1 : 1;
    r.s = {{"-1", s}, {"0", s}, {"1", s}};
    r.tau = {{"b", 1}, {"c", 1}};
    return oridt::QuiverWithDuality::validate(r);
}

}  // namespace fixtures
