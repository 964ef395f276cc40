#include "oridt/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oridt/config.hpp"
#include "oridt/engine.hpp"
#include "oridt/error.hpp"
#include "oridt/identities.hpp"
#include "oridt/oracle.hpp"

namespace oridt {

namespace {

using Json = nlohmann::ordered_json;

Json terms_json(const std::map<DimVector, ScalarV>& terms) {
    Json a = Json::array();
    for (const auto& [d, c] : terms) a.push_back(Json::array({d, c.to_string()}));
    return a;
}

Json counts_json(const std::map<DimVector, long>& table) {
    Json a = Json::array();
    for (const auto& [d, n] : table) a.push_back(Json::array({d, n}));
    return a;
}

std::string rational(const mpq_class& x) { return x.get_str(); }

std::string specialized(const std::pair<mpq_class, mpq_class>& v, long p) {
    if (v.second == 0) return rational(v.first);
    return rational(v.first) + "+" + rational(v.second) + "*sqrt(" + std::to_string(p) + ")";
}

Json header(const std::string& command) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["v"] = "q^(1/2)";
    return j;
}

// Parsed command line, filled by CLI11.
struct Args {
    std::string config;
    std::string golden;
    std::string kind = "orientifold";
    std::vector<std::string> thetas;
    std::optional<int> bound;
    bool orientifold = false;
    long prime = 3;
    std::string dim;
    bool ordinary = false;
    bool census = false;
    std::string identity;
    std::string d;
    std::string e;
};

struct Context {
    RunConfig cfg;
    std::optional<QuiverWithDuality> q;
    std::unique_ptr<DtEngine> engine;
    const char* cache = nullptr;
};

struct Outcome {
    Json report;
    std::string summary;
    int code = kExitOk;
};

const Stability& theta_named(const Context& c, const std::string& name) {
    const auto it = c.cfg.stabilities.find(name);
    if (it == c.cfg.stabilities.end()) throw Error(ErrorKind::ConfigError, "no stability named '" + name + "'");
    return it->second;
}

int bound_of(const Context& c, const Args& a) {
    const int b = a.bound.value_or(c.cfg.bound);
    if (b < 0 || b > kMaxBound) {
        throw Error(ErrorKind::ConfigError, "bound must lie in [0, " + std::to_string(kMaxBound) + "]");
    }
    return b;
}

Json theta_json(const Context& c, const std::string& name) {
    Json j;
    j["name"] = name;
    j["values"] = theta_named(c, name);
    return j;
}

Outcome cmd_validate(Context& c) {
    const QuiverWithDuality& q = *c.q;
    Outcome o;
    o.report = header("validate");
    o.report["valid"] = true;
    o.report["fingerprint"] = q.fingerprint();
    o.report["nodes"] = q.node_ids();
    Json part;
    const char* names[] = {"plus", "fixed", "minus"};
    const NodeClass classes[] = {NodeClass::Plus, NodeClass::Fixed, NodeClass::Minus};
    for (int k = 0; k < 3; ++k) {
        Json ids = Json::array();
        for (int i : q.nodes_in(classes[k])) ids.push_back(q.node_id(i));
        part[names[k]] = ids;
    }
    o.report["node_partition"] = part;
    Json apart;
    for (int k = 0; k < 3; ++k) {
        Json ids = Json::array();
        for (int a : q.arrows_in(classes[k])) ids.push_back(q.arrows()[a].id);
        apart[names[k]] = ids;
    }
    o.report["arrow_partition"] = apart;
    const FiniteTypeVerdict ft = is_finite_type(q);
    o.report["finite_type"] = ft.finite;
    o.report["finite_type_class"] = to_string(ft.cls);
    Json st = Json::array();
    for (const auto& [name, th] : c.cfg.stabilities) {
        st.push_back({{"name", name}, {"values", th}, {"sigma_compatible", is_sigma_compatible(q, th)}});
    }
    o.report["stabilities"] = st;
    o.summary = "valid quiver with " + std::to_string(q.num_nodes()) + " nodes and " +
                std::to_string(q.num_arrows()) + " arrows";
    return o;
}

Outcome cmd_series(Context& c, const Args& a) {
    const int bound = bound_of(c, a);
    Outcome o;
    o.report = header("series");
    o.report["kind"] = a.kind;
    std::map<DimVector, ScalarV> terms;
    if (a.kind == "total") {
        terms[c.q->zero()] = ScalarV(1);
        for (const DimVector& d : enumerate_dimvectors(*c.q, bound)) terms[d] = c.engine->a_total(d);
    } else {
        if (a.thetas.size() != 1) throw Error(ErrorKind::ConfigError, "series --kind " + a.kind + " needs one --theta");
        const Stability& th = theta_named(c, a.thetas[0]);
        o.report["theta"] = theta_json(c, a.thetas[0]);
        if (a.kind == "semistable") {
            terms[c.q->zero()] = ScalarV(1);
            for (const DimVector& d : enumerate_dimvectors(*c.q, bound)) {
                const ScalarV v = c.engine->a_semistable(th, d);
                if (!v.is_zero()) terms[d] = v;
            }
        } else {
            terms = c.engine->orientifold_series(th, bound).terms;
        }
    }
    o.report["bound"] = bound;
    o.report["terms"] = terms_json(terms);
    o.summary = a.kind + " series through total dimension " + std::to_string(bound) + ", " +
                std::to_string(terms.size()) + " nonzero terms";
    return o;
}

Outcome cmd_wallcross(Context& c, const Args& a) {
    if (a.thetas.size() != 2) throw Error(ErrorKind::ConfigError, "wallcross needs exactly two --theta options");
    const int bound = bound_of(c, a);
    const WallCrossReport r =
        c.engine->wallcross_check(theta_named(c, a.thetas[0]), theta_named(c, a.thetas[1]), bound);
    Outcome o;
    o.report = header("wallcross");
    o.report["theta"] = Json::array({theta_json(c, a.thetas[0]), theta_json(c, a.thetas[1])});
    o.report["bound"] = bound;
    o.report["equal"] = r.equal;
    o.report["first_difference"] = r.first_difference ? Json(*r.first_difference) : Json(nullptr);
    o.report["left"] = terms_json(r.left.terms);
    o.report["right"] = terms_json(r.right.terms);
    o.code = r.equal ? kExitOk : kExitFailed;
    o.summary = r.equal ? "equal through total dimension " + std::to_string(bound)
                        : "differ at " + to_string(*r.first_difference);
    return o;
}

Outcome cmd_factorize(Context& c, const Args& a) {
    if (a.thetas.size() != 1) throw Error(ErrorKind::ConfigError, "factorize needs one --theta");
    const int bound = bound_of(c, a);
    const Stability& th = theta_named(c, a.thetas[0]);
    const OmegaTable t = a.orientifold ? c.engine->oridt_factorize(th, bound) : c.engine->dt_factorize(th, bound);
    Outcome o;
    o.report = header("factorize");
    o.report["theta"] = theta_json(c, a.thetas[0]);
    o.report["bound"] = bound;
    o.report["orientifold"] = a.orientifold;
    o.report["finite_type"] = t.finite_type;
    o.report["verdict"] = t.verdict;
    o.report["integral"] = t.integral();
    o.report["omega"] = counts_json(t.omega);
    if (a.orientifold) o.report["omega_sigma"] = counts_json(t.omega_sigma);
    o.report["warnings"] = t.warnings;
    if (!t.integral()) {
        o.report["error"] = {{"kind", to_string(ErrorKind::NonIntegralInvariant)},
                             {"message", "non-integral coefficient " + t.residual + " at " + to_string(*t.failed_at)},
                             {"at", *t.failed_at},
                             {"residual", t.residual}};
        o.code = kExitFailed;
        o.summary = "non-integral invariant at " + to_string(*t.failed_at);
        return o;
    }
    bool same = true;
    for (const Slope& mu : c.engine->slopes(th, bound, false)) {
        same = same && c.engine->expand_slope(t, mu, bound) == c.engine->a_slope(th, mu, bound);
    }
    if (a.orientifold) same = same && c.engine->expand_orientifold(t, bound) == c.engine->orientifold_series(th, bound);
    o.report["reexpansion_equal"] = same;
    if (!same) o.code = kExitFailed;
    std::size_t nonzero = 0;
    for (const auto& [d, n] : a.orientifold ? t.omega_sigma : t.omega) nonzero += n != 0;
    o.summary = std::string(a.orientifold ? "orientifold" : "ordinary") + " invariants through total dimension " +
                std::to_string(bound) + ": " + std::to_string(nonzero) + " nonzero" +
                (same ? ", re-expansion matches" : ", re-expansion differs");
    return o;
}

Outcome cmd_oracle(Context& c, const Args& a) {
    if (a.thetas.size() != 1) throw Error(ErrorKind::ConfigError, "oracle needs one --theta");
    const QuiverWithDuality& q = *c.q;
    const Stability& th = theta_named(c, a.thetas[0]);
    const DimVector d = parse_dimvector(a.dim, q.num_nodes());
    const long p = a.prime;
    if (!is_odd_prime(p)) throw Error(ErrorKind::EvenPrime, "oracle needs an odd prime, got " + std::to_string(p));
    if (p > c.cfg.caps.max_prime) {
        throw Error(ErrorKind::OutOfRange, "prime " + std::to_string(p) + " exceeds the cap " +
                                               std::to_string(c.cfg.caps.max_prime));
    }
    const bool selfdual = !a.ordinary && q.is_symmetric(d) && is_sigma_compatible(q, th) && is_admissible_selfdual(q, d);
    const PrimeField f(static_cast<int>(p));
    Outcome o;
    o.report = header("oracle");
    o.report["theta"] = theta_json(c, a.thetas[0]);
    o.report["prime"] = p;
    o.report["dim"] = d;
    o.report["kind"] = selfdual ? "selfdual" : "ordinary";
    ScalarV normalized;
    mpq_class oracle = 0;
    Json sectors = Json::array();
    if (selfdual) {
        normalized = ScalarV::v_pow(-sd_euler(q, d)) * c.engine->a_sigma_semistable_rec(th, d);
        for (const GramChoice& g : gram_sectors(q, d, f)) {
            const PointSpace space = PointSpace::selfdual(q, d, g, f);
            const std::uint64_t ss = count_semistable(q, space, f, th, c.cfg.caps);
            const mpz_class order = group_order_sigma(q, d, g.witt, p);
            mpq_class part(mpz_class(std::to_string(ss)), order);
            part.canonicalize();
            oracle += part;
            sectors.push_back({{"sector", g.label(q)},
                               {"points", std::to_string(*space.size())},
                               {"semistable", std::to_string(ss)},
                               {"group_order", order.get_str()},
                               {"count", rational(part)}});
        }
    } else {
        normalized = ScalarV::v_pow(-euler_form(q, d, d)) * c.engine->a_semistable(th, d);
        const PointSpace space = PointSpace::ordinary(q, d, f);
        const std::uint64_t ss = count_semistable(q, space, f, th, c.cfg.caps);
        const mpz_class order = group_order(q, d, p);
        oracle = mpq_class(mpz_class(std::to_string(ss)), order);
        oracle.canonicalize();
        sectors.push_back({{"sector", "standard"},
                           {"points", std::to_string(*space.size())},
                           {"semistable", std::to_string(ss)},
                           {"group_order", order.get_str()},
                           {"count", rational(oracle)}});
    }
    const auto formula = normalized.specialize(p);
    const bool match = formula.second == 0 && formula.first == oracle;
    o.report["formula"] = specialized(formula, p);
    o.report["oracle"] = rational(oracle);
    o.report["match"] = match;
    o.report["sectors"] = sectors;
    if (a.census) {
        const Census cs = selfdual ? Census::selfdual(q, d, f, th, c.cfg.caps) : Census::ordinary(q, d, f, th, c.cfg.caps);
        Json classes = Json::array();
        for (const CensusEntry& e : cs.entries()) {
            classes.push_back({{"sector", cs.spaces()[e.sector].gram().label(q)},
                               {"representative", std::to_string(e.representative)},
                               {"orbit_size", std::to_string(e.orbit_size)},
                               {"aut_order", e.aut_order.get_str()},
                               {"semistable", e.semistable}});
        }
        o.report["census"] = {{"classes", classes}, {"semistable_mass", rational(cs.mass(true))}};
    }
    o.code = match ? kExitOk : kExitFailed;
    o.summary = std::string(selfdual ? "self-dual" : "ordinary") + " stack count over F_" + std::to_string(p) + " at " +
                to_string(d) + ": formula " + specialized(formula, p) + ", oracle " + rational(oracle) +
                (match ? " (match)" : " (MISMATCH)");
    return o;
}

Outcome cmd_dilog(const Args& a, int bound) {
    const IdentityCheck r = dilog_identity(a.identity, bound);
    Outcome o;
    o.report = header("dilog");
    o.report["identity"] = r.name;
    o.report["bound"] = bound;
    o.report["equal"] = r.equal;
    o.report["first_difference"] = r.first_difference ? Json(*r.first_difference) : Json(nullptr);
    o.report["module"] = r.module;
    o.report["left"] = terms_json(r.left);
    o.report["right"] = terms_json(r.right);
    o.summary = r.equal ? "equal through total dimension " + std::to_string(bound)
                        : "differ at " + to_string(*r.first_difference);
    o.report["summary"] = o.summary;
    o.code = r.equal ? kExitOk : kExitFailed;
    return o;
}

Outcome cmd_delta(Context& c, const Args& a) {
    if (a.thetas.size() != 1) throw Error(ErrorKind::ConfigError, "delta needs one --theta");
    const QuiverWithDuality& q = *c.q;
    const Stability& th = theta_named(c, a.thetas[0]);
    const DimVector d = parse_dimvector(a.d, q.num_nodes());
    const DimVector e = parse_dimvector(a.e, q.num_nodes());
    if (!q.is_symmetric(e)) throw Error(ErrorKind::NotSymmetric, to_string(e) + " is not sigma-symmetric");
    const int bound = std::max(total_dim(d), total_dim(e));
    const OmegaTable t = c.engine->oridt_factorize(th, bound);
    Outcome o;
    o.report = header("delta");
    o.report["theta"] = theta_json(c, a.thetas[0]);
    o.report["d"] = d;
    o.report["e"] = e;
    if (!t.integral()) {
        o.report["error"] = {{"kind", to_string(ErrorKind::NonIntegralInvariant)},
                             {"message", "non-integral coefficient " + t.residual + " at " + to_string(*t.failed_at)},
                             {"at", *t.failed_at},
                             {"residual", t.residual}};
        o.code = kExitFailed;
        o.summary = "non-integral invariant at " + to_string(*t.failed_at);
        return o;
    }
    const auto od = t.omega.find(d);
    const auto oe = t.omega_sigma.find(e);
    const long omega_d = od == t.omega.end() ? 0 : od->second;
    const long omega_e = oe == t.omega_sigma.end() ? 0 : oe->second;
    const PrimitiveWcf r = primitive_wcf(q, d, e, omega_d, omega_e);
    std::vector<std::string> warnings = t.warnings;
    warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
    o.report["omega_d"] = omega_d;
    o.report["omega_sigma_e"] = omega_e;
    o.report["I"] = r.I;
    o.report["delta"] = r.delta;
    o.report["warnings"] = warnings;
    o.summary = "I = " + std::to_string(r.I) + ", delta = " + std::to_string(r.delta);
    return o;
}

std::string slug(const std::string& s) {
    std::string out;
    for (char ch : s) out += std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '.' ? ch : '_';
    return out;
}

std::string golden_name(const std::string& config_name, const std::string& command, const Args& a) {
    std::string n = (config_name.empty() ? "builtin" : config_name) + "." + command;
    if (command == "series") n += "." + a.kind;
    if (command == "factorize" && a.orientifold) n += ".orientifold";
    if (command == "dilog") n += "." + a.identity;
    for (const auto& t : a.thetas) n += "." + t;
    if (command == "oracle") n += ".p" + std::to_string(a.prime) + "." + a.dim + (a.ordinary ? ".ordinary" : "");
    if (command == "delta") n += ".d" + a.d + ".e" + a.e;
    if (a.bound) n += ".n" + std::to_string(*a.bound);
    return slug(n) + ".json";
}

Json error_json(const std::string& command, const Error& e) {
    Json j = header(command);
    Json err;
    err["kind"] = to_string(e.kind());
    err["message"] = e.what();
    if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
        Json vs = Json::array();
        for (const auto& x : v->violations()) {
            vs.push_back({{"kind", to_string(x.kind)}, {"subject", x.subject}, {"message", x.message}});
        }
        err["violations"] = vs;
    }
    if (const auto* cap = dynamic_cast<const CapExceeded*>(&e)) {
        err["required"] = cap->required();
        err["cap"] = cap->cap();
    }
    j["error"] = err;
    return j;
}

int code_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::CapExceeded: return kExitCap;
    case ErrorKind::NonIntegralInvariant: return kExitFailed;
    default: return kExitConfig;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Orientifold DT series of quivers with duality structure"};
    app.require_subcommand(1);
    Args a;
    app.add_option("--config", a.config, "JSON run configuration");
    app.add_option("--golden", a.golden, "Directory of golden reports to compare against");

    auto* validate = app.add_subcommand("validate", "Validate the quiver and stabilities");
    auto* series = app.add_subcommand("series", "Generating series");
    series->add_option("--kind", a.kind)->check(CLI::IsMember({"total", "semistable", "orientifold"}));
    series->add_option("--theta", a.thetas);
    series->add_option("--bound", a.bound);
    auto* wallcross = app.add_subcommand("wallcross", "Compare factorizations for two stabilities");
    wallcross->add_option("--theta", a.thetas)->required();
    wallcross->add_option("--bound", a.bound);
    auto* factorize = app.add_subcommand("factorize", "Extract (orientifold) DT invariants");
    factorize->add_option("--theta", a.thetas)->required();
    factorize->add_option("--bound", a.bound);
    factorize->add_flag("--orientifold", a.orientifold);
    auto* oracle = app.add_subcommand("oracle", "Finite-field stack count against the formula");
    oracle->add_option("--theta", a.thetas)->required();
    oracle->add_option("--prime", a.prime)->required();
    oracle->add_option("--dim", a.dim)->required();
    oracle->add_flag("--ordinary", a.ordinary, "Count ordinary representations even for symmetric dimensions");
    oracle->add_flag("--census", a.census, "Also list isomorphism classes");
    auto* dilog = app.add_subcommand("dilog", "Quantum dilogarithm identities on A2");
    dilog->add_option("--identity", a.identity)
        ->required()
        ->check(CLI::IsMember({"pentagon", "a2-orthogonal", "a2-symplectic"}));
    dilog->add_option("--bound", a.bound);
    auto* delta = app.add_subcommand("delta", "Primitive orientifold wall-crossing jump");
    delta->add_option("--d", a.d)->required();
    delta->add_option("--e", a.e)->required();
    delta->add_option("--theta", a.thetas)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        err << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "";
        j["error"] = {{"kind", to_string(ErrorKind::ConfigError)}, {"message", e.what()}};
        out << j.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    std::string command;
    for (auto* s : {validate, series, wallcross, factorize, oracle, dilog, delta}) {
        if (s->parsed()) command = s->get_name();
    }

    Outcome o;
    Context c;
    try {
        if (command == "dilog") {
            int bound = 4;
            if (!a.config.empty()) {
                c.cfg = load_config(a.config);
                bound = c.cfg.bound;
            } else {
                c.cfg.name.clear();
            }
            if (a.bound) bound = *a.bound;
            if (bound < 0 || bound > kMaxBound) {
                throw Error(ErrorKind::ConfigError, "bound must lie in [0, " + std::to_string(kMaxBound) + "]");
            }
            o = cmd_dilog(a, bound);
        } else {
            if (a.config.empty()) throw Error(ErrorKind::ConfigError, command + " needs --config");
            c.cfg = load_config(a.config);
            c.q = QuiverWithDuality::validate(c.cfg.raw, c.cfg.rule);
            c.engine = std::make_unique<DtEngine>(*c.q);
            c.cache = std::getenv("ORIDT_CACHE");
            if (c.cache && *c.cache) c.engine->load_cache(c.cache);
            if (command == "validate") o = cmd_validate(c);
            if (command == "series") o = cmd_series(c, a);
            if (command == "wallcross") o = cmd_wallcross(c, a);
            if (command == "factorize") o = cmd_factorize(c, a);
            if (command == "oracle") o = cmd_oracle(c, a);
            if (command == "delta") o = cmd_delta(c, a);
            if (c.cache && *c.cache) c.engine->save_cache(c.cache);
        }
    } catch (const Error& e) {
        o.report = error_json(command, e);
        o.code = code_for(e);
        o.summary = std::string("error: ") + to_string(e.kind()) + ": " + e.what();
    }

    const std::string text = o.report.dump(2) + "\n";
    out << text;
    err << o.summary << " (v = q^(1/2))\n";

    if (!a.golden.empty()) {
        const auto path = std::filesystem::path(a.golden) / golden_name(c.cfg.name, command, a);
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            err << "golden file " << path.string() << " is missing\n";
            return kExitFailed;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        const std::string want = ss.str();
        if (want != text) {
            std::size_t at = 0;
            while (at < want.size() && at < text.size() && want[at] == text[at]) ++at;
            err << "golden mismatch against " << path.string() << " at byte " << at << "\n";
            return kExitFailed;
        }
        err << "golden match: " << path.filename().string() << "\n";
    }
    return o.code;
}

}  // namespace oridt
