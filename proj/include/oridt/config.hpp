#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "oridt/oracle.hpp"
#include "oridt/quiver.hpp"

namespace oridt {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kMaxBound = 12;

struct RunConfig {
    std::string name;  // file stem, used for golden file names
    RawQuiver raw;
    PositiveRule rule = PositiveRule::LexSmaller;
    std::map<std::string, Stability> stabilities;
    int bound = 4;
    std::vector<long> primes{3};
    OracleCaps caps;
};

// Throws Error(ConfigError) on shape problems; quiver validity is checked separately.
RunConfig parse_config(const nlohmann::json& j, const std::string& name = "config");
RunConfig load_config(const std::string& path);

// "1,0,2" -> {1,0,2}
DimVector parse_dimvector(const std::string& text, int nodes);

}  // namespace oridt
