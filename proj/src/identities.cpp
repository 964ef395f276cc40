#include "oridt/identities.hpp"

#include "oridt/error.hpp"

namespace oridt {

namespace {

const DimVector kSource{1, 0};
const DimVector kSink{0, 1};
const DimVector kMiddle{1, 1};

IdentityCheck finish(std::string name, int bound, const TorusSeries& l, const TorusSeries& r) {
    IdentityCheck c;
    c.name = std::move(name);
    c.bound = bound;
    c.left = l.terms;
    c.right = r.terms;
    c.first_difference = first_difference(l, r);
    c.equal = !c.first_difference;
    return c;
}

IdentityCheck finish(std::string name, int bound, const ModuleSeries& l, const ModuleSeries& r) {
    IdentityCheck c;
    c.name = std::move(name);
    c.bound = bound;
    c.module = true;
    c.left = l.terms;
    c.right = r.terms;
    c.first_difference = first_difference(l, r);
    c.equal = !c.first_difference;
    return c;
}

}  // namespace

QuiverWithDuality a2_flip(bool symplectic) {
    RawQuiver r;
    r.nodes = {"-1", "1"};
    r.arrows = {{"a", "-1", "1"}};
    r.sigma_nodes = {{"-1", "1"}, {"1", "-1"}};
    r.sigma_arrows = {{"a", "a"}};
    const int s = symplectic ? -1 : 1;
    r.s = {{"-1", s}, {"1", s}};
    r.tau = {{"a", -1}};
    return QuiverWithDuality::validate(r);
}

IdentityCheck pentagon_identity(int bound) {
    const QuiverWithDuality q = a2_flip(true);
    const TorusSeries l = torus_mul(q, qdilog(q, kSink, DilogBase::Q, 0, bound), qdilog(q, kSource, DilogBase::Q, 0, bound));
    const TorusSeries r = dilog_product(q, {{kSource}, {kMiddle}, {kSink}}, bound);
    return finish("pentagon", bound, l, r);
}

IdentityCheck a2_orthogonal_identity(int bound) {
    const QuiverWithDuality q = a2_flip(false);
    const ModuleSeries xi0 = ModuleSeries::vacuum(q, bound);
    const ModuleSeries l = module_act(q, qdilog(q, kSink, DilogBase::Q, 0, bound), xi0);
    const TorusSeries rt = dilog_product(q, {{kSource}, {kMiddle, DilogBase::Q2, -1}}, bound);
    return finish("a2-orthogonal", bound, l, module_act(q, rt, xi0));
}

IdentityCheck a2_symplectic_identity(int bound) {
    const QuiverWithDuality q = a2_flip(true);
    const ModuleSeries xi0 = ModuleSeries::vacuum(q, bound);
    ModuleSeries xi11;
    xi11.bound = bound;
    xi11.add(kMiddle, ScalarV(1));
    const ModuleSeries l = module_act(q, qdilog(q, kSink, DilogBase::Q, 0, bound), xi0);
    const ModuleSeries inner = module_add(module_act(q, qdilog(q, kMiddle, DilogBase::Q2, 1, bound), xi0),
                                          module_act(q, qdilog(q, kMiddle, DilogBase::Q2, -1, bound), xi11));
    const ModuleSeries r = module_act(q, qdilog(q, kSource, DilogBase::Q, 0, bound), inner);
    return finish("a2-symplectic", bound, l, r);
}

IdentityCheck dilog_identity(const std::string& name, int bound) {
    if (name == "pentagon") return pentagon_identity(bound);
    if (name == "a2-orthogonal") return a2_orthogonal_identity(bound);
    if (name == "a2-symplectic") return a2_symplectic_identity(bound);
    throw Error(ErrorKind::ConfigError, "unknown identity '" + name + "'");
}

}  // namespace oridt
