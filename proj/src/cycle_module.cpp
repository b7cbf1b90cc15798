#include "rostforge/cycle_module.hpp"

#include "rostforge/errors.hpp"
#include "rostforge/fieldext.hpp"
#include "rostforge/places.hpp"

namespace rostforge {

CycleModuleInterface milnor_cycle_module(TameSign sign) {
    CycleModuleInterface M;
    M.name = "milnor";
    M.zero = [](const ObjectRef& o) { return CMValue{MilnorClass::zero(o.field, o.twist)}; };
    M.restriction = [](const FieldMorphism& phi, const CMValue& x) {
        return CMValue{restrict_class(x.milnor(), phi)};
    };
    M.norm = [](const FieldMorphism& phi, const CMValue& x) {
        return CMValue{norm_class(x.milnor(), phi)};
    };
    M.symbol_action = [](const MilnorClass& c, const CMValue& x) {
        return CMValue{product(c, x.milnor())};
    };
    M.residue = [sign](const Valuation& v, const CMValue& x) {
        return CMValue{residue(x.milnor(), v, sign)};
    };
    M.add = [](const CMValue& a, const CMValue& b) { return CMValue{a.milnor() + b.milnor()}; };
    M.scale = [](const BigInt& c, const CMValue& x) { return CMValue{x.milnor().scaled(c)}; };
    M.equal = [](const CMValue& a, const CMValue& b) { return a.milnor() == b.milnor(); };
    return M;
}

std::vector<std::string> check_cycle_module_contract(
    const CycleModuleInterface& M, const std::vector<std::pair<ObjectRef, CMValue>>& samples) {
    std::vector<std::string> violations;
    auto complain = [&](const std::string& what) { violations.push_back(M.name + ": " + what); };

    for (const auto& [obj, x] : samples) {
        const FieldPtr& E = obj.field;
        if (!E->has_carrier()) continue;
        // R1a on the tower E -> E(t) -> E(t,u)
        try {
            FieldPtr Et = Field::rational_function(E, {"zz1"});
            FieldPtr Etu = Field::rational_function(Et, {"zz2"});
            FieldMorphism f1 = FieldMorphism::embedding(E, Et);
            FieldMorphism f2 = FieldMorphism::embedding(Et, Etu);
            FieldMorphism f21 = FieldMorphism::compose(f2, f1);
            CMValue two_step = M.restriction(f2, M.restriction(f1, x));
            CMValue one_step = M.restriction(f21, x);
            if (!M.equal(two_step, one_step)) complain("R1a fails on " + obj.to_string());
        } catch (const NotComputableError&) {
        }
        // R2a: phi_*(gamma_c x) = gamma_{phi_* c}(phi_* x) along E -> E(t)
        try {
            FieldPtr Et = Field::rational_function(E, {"zz1"});
            FieldMorphism f = FieldMorphism::embedding(E, Et);
            Element three = Element::from_integer(E, BigInt(3));
            if (!three.is_zero()) {
                MilnorClass c = MilnorClass::symbol(E, {three});
                CMValue lhs = M.restriction(f, M.symbol_action(c, x));
                CMValue rhs = M.symbol_action(restrict_class(c, f), M.restriction(f, x));
                if (!M.equal(lhs, rhs)) complain("R2a fails on " + obj.to_string());
            }
        } catch (const NotComputableError&) {
        }
        // R3e: d_v(gamma_u x) = -gamma_ubar d_v(x) at the place (t) of E(t)
        try {
            FieldPtr Et = Field::rational_function(E, {"zz1"});
            FieldMorphism f = FieldMorphism::embedding(E, Et);
            Valuation v = Valuation::point_of_line(Et, Polynomial::variable(E));
            CMValue xt = M.restriction(f, x);
            Element u = Element::generator(Et) + Element::one(Et);  // t + 1, a v-unit
            MilnorClass uc = MilnorClass::symbol(Et, {u});
            MilnorClass ubar = MilnorClass::symbol(E, {v.reduce_unit(u)});
            CMValue lhs = M.residue(v, M.symbol_action(uc, xt));
            CMValue rhs = M.scale(BigInt(-1), M.symbol_action(ubar, M.residue(v, xt)));
            if (!M.equal(lhs, rhs)) complain("R3e fails on " + obj.to_string());
        } catch (const NotComputableError&) {
        }
    }
    return violations;
}

}  // namespace rostforge
