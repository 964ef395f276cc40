#include "oridt/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oridt/error.hpp"

namespace oridt {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::map<std::string, std::string> string_map(const nlohmann::json& j, const char* key) {
    const auto& m = field(j, key);
    if (!m.is_object()) fail(std::string("'") + key + "' must be an object");
    std::map<std::string, std::string> out;
    for (auto it = m.begin(); it != m.end(); ++it) {
        if (!it.value().is_string()) fail(std::string("'") + key + "." + it.key() + "' must be a string");
        out[it.key()] = it.value().get<std::string>();
    }
    return out;
}

std::map<std::string, int> sign_map(const nlohmann::json& j, const char* key) {
    const auto& m = field(j, key);
    if (!m.is_object()) fail(std::string("'") + key + "' must be an object");
    std::map<std::string, int> out;
    for (auto it = m.begin(); it != m.end(); ++it) {
        if (!it.value().is_number_integer()) fail(std::string("'") + key + "." + it.key() + "' must be an integer");
        out[it.key()] = it.value().get<int>();
    }
    return out;
}

std::uint64_t cap_value(const nlohmann::json& o, const char* key, std::uint64_t dflt) {
    if (!o.contains(key)) return dflt;
    const auto& v = o.at(key);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) fail(std::string("oracle.") + key + " must be a positive integer");
    return v.get<std::uint64_t>();
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j, const std::string& name) {
    if (!j.is_object()) fail("config must be a JSON object");
    const auto& ver = field(j, "schema_version");
    if (!ver.is_number_integer() || ver.get<int>() != kSchemaVersion) {
        fail("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
    }
    RunConfig c;
    c.name = name;
    const auto& q = field(j, "quiver");
    if (!q.is_object()) fail("'quiver' must be an object");
    const auto& nodes = field(q, "nodes");
    if (!nodes.is_array()) fail("'quiver.nodes' must be an array");
    for (const auto& n : nodes) {
        if (!n.is_string()) fail("node identifiers must be strings");
        c.raw.nodes.push_back(n.get<std::string>());
    }
    const auto& arrows = field(q, "arrows");
    if (!arrows.is_array()) fail("'quiver.arrows' must be an array");
    for (const auto& a : arrows) {
        if (!a.is_object() || !a.contains("id") || !a.contains("src") || !a.contains("tgt") || !a["id"].is_string() ||
            !a["src"].is_string() || !a["tgt"].is_string()) {
            fail("each arrow needs string fields id, src, tgt");
        }
        c.raw.arrows.push_back({a["id"].get<std::string>(), a["src"].get<std::string>(), a["tgt"].get<std::string>()});
    }
    c.raw.sigma_nodes = string_map(q, "sigma_nodes");
    c.raw.sigma_arrows = string_map(q, "sigma_arrows");
    c.raw.s = sign_map(q, "s");
    c.raw.tau = sign_map(q, "tau");
    if (q.contains("positive_rule")) {
        const std::string r = q["positive_rule"].is_string() ? q["positive_rule"].get<std::string>() : "";
        if (r == "lex-smaller") {
            c.rule = PositiveRule::LexSmaller;
        } else if (r == "lex-larger") {
            c.rule = PositiveRule::LexLarger;
        } else {
            fail("'quiver.positive_rule' must be lex-smaller or lex-larger");
        }
    }
    if (j.contains("stabilities")) {
        const auto& st = j["stabilities"];
        if (!st.is_object()) fail("'stabilities' must be an object");
        for (auto it = st.begin(); it != st.end(); ++it) {
            if (!it.value().is_array() || it.value().size() != c.raw.nodes.size()) {
                fail("stability '" + it.key() + "' must be an integer array with one entry per node");
            }
            Stability th;
            for (const auto& x : it.value()) {
                if (!x.is_number_integer()) fail("stability '" + it.key() + "' must hold integers");
                th.push_back(x.get<long>());
            }
            c.stabilities[it.key()] = th;
        }
    }
    if (j.contains("bound")) {
        const auto& b = j["bound"];
        if (!b.is_number_integer() || b.get<int>() < 0 || b.get<int>() > kMaxBound) {
            fail("'bound' must be an integer in [0, " + std::to_string(kMaxBound) + "]");
        }
        c.bound = b.get<int>();
    }
    if (j.contains("oracle")) {
        const auto& o = j["oracle"];
        if (!o.is_object()) fail("'oracle' must be an object");
        c.caps.max_points = cap_value(o, "max_points", c.caps.max_points);
        c.caps.max_group = cap_value(o, "max_group", c.caps.max_group);
        c.caps.max_subspace_combos = cap_value(o, "max_subspace_combos", c.caps.max_subspace_combos);
        if (o.contains("max_prime")) {
            const auto& m = o["max_prime"];
            if (!m.is_number_integer() || m.get<int>() < 3 || m.get<int>() > 13) fail("oracle.max_prime must be in [3, 13]");
            c.caps.max_prime = m.get<int>();
        }
        if (o.contains("primes")) {
            if (!o["primes"].is_array()) fail("oracle.primes must be an array");
            c.primes.clear();
            for (const auto& p : o["primes"]) {
                if (!p.is_number_integer()) fail("oracle.primes must hold integers");
                c.primes.push_back(p.get<long>());
            }
        }
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        fail("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j, std::filesystem::path(path).stem().string());
}

DimVector parse_dimvector(const std::string& text, int nodes) {
    DimVector d;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(part, &used);
            if (used != part.size() || v < 0) throw std::invalid_argument(part);
            d.push_back(v);
        } catch (const std::exception&) {
            fail("bad dimension vector '" + text + "'");
        }
    }
    if (static_cast<int>(d.size()) != nodes) {
        fail("dimension vector '" + text + "' needs " + std::to_string(nodes) + " entries");
    }
    return d;
}

}  // namespace oridt
