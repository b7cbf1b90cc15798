#pragma once

#include <any>
#include <functional>
#include <string>
#include <vector>

#include "rostforge/milnor.hpp"
#include "rostforge/morphism.hpp"
#include "rostforge/valuation.hpp"

namespace rostforge {

struct ObjectRef {
    FieldPtr field;
    int twist = 0;
    bool equals(const ObjectRef& o) const { return twist == o.twist && same_field(field, o.field); }
    std::string key() const { return field->key() + "#" + std::to_string(twist); }
    std::string to_string() const { return "(" + field->to_string() + ", " + std::to_string(twist) + ")"; }
};

/// A value of a cycle module, type-erased; the built-in Milnor instance
/// stores a MilnorClass.
struct CMValue {
    std::any payload;
    const MilnorClass& milnor() const { return std::any_cast<const MilnorClass&>(payload); }
};

/// A cycle premodule given by its four structural maps plus the group
/// operations of the values. Supplied maps are contract-checked against
/// R1a, R2a and R3e by check_cycle_module_contract, not assumed.
struct CycleModuleInterface {
    std::string name;
    std::function<CMValue(const ObjectRef&)> zero;
    /// phi: E -> L applied covariantly to a value over E.
    std::function<CMValue(const FieldMorphism&, const CMValue&)> restriction;
    /// norm along finite phi: E -> L, taking a value over L to one over E.
    std::function<CMValue(const FieldMorphism&, const CMValue&)> norm;
    /// left multiplication by a Milnor class.
    std::function<CMValue(const MilnorClass&, const CMValue&)> symbol_action;
    std::function<CMValue(const Valuation&, const CMValue&)> residue;
    std::function<CMValue(const CMValue&, const CMValue&)> add;
    std::function<CMValue(const BigInt&, const CMValue&)> scale;
    std::function<bool(const CMValue&, const CMValue&)> equal;
};

/// The universal cycle module: Milnor K-theory itself.
CycleModuleInterface milnor_cycle_module(TameSign sign = TameSign::Classic);

/// Check R1a (composition of restrictions), R2a (projection past
/// restriction) and R3e (residue past unit multiplication) on the supplied
/// sample values. Returns human-readable violations; empty means pass.
std::vector<std::string> check_cycle_module_contract(const CycleModuleInterface& M,
                                                     const std::vector<std::pair<ObjectRef, CMValue>>& samples);

}  // namespace rostforge
