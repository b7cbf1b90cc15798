#pragma once

#include <string>
#include <vector>

#include "rostforge/element.hpp"
#include "rostforge/field.hpp"
#include "rostforge/morphism.hpp"
#include "rostforge/valuation.hpp"

namespace rostforge {

/// Which sign normalization the residue maps use. Classic pins
/// d({pi, u}) = ubar; Rost is the globally negated variant, kept for
/// cross-checking.
enum class TameSign { Classic, Rost };

/// A formal integer combination of Milnor symbols of a fixed degree over a
/// fixed field, held in canonical form.
///
/// Canonicalization applies, and only applies: removal of symbols with an
/// entry 1, the Steinberg and {u,-u} kills on entry pairs, entry sorting
/// with anticommutativity signs, {u,u} -> {u,-1}, 2-torsion reduction on
/// symbols containing -1, merging of identical symbols. Degree-0 classes
/// collapse to a single integer, degree-1 classes to a single unit
/// (the group K_1 = F^x has no further relations). No entry is ever
/// factored; factorization enters only through residues.
class MilnorClass {
public:
    MilnorClass() = default;
    static MilnorClass zero(const FieldPtr& f, int degree);
    static MilnorClass integer(const FieldPtr& f, const BigInt& n);   // degree 0
    static MilnorClass unit(const FieldPtr& f);                       // 1 in degree 0
    static MilnorClass symbol(const FieldPtr& f, const std::vector<Element>& entries);

    const FieldPtr& field() const { return field_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<std::pair<std::vector<Element>, BigInt>>& terms() const { return terms_; }
    /// The coefficient of a degree-0 class.
    BigInt degree0_value() const;

    friend MilnorClass operator+(const MilnorClass& a, const MilnorClass& b);
    friend MilnorClass operator-(const MilnorClass& a, const MilnorClass& b);
    MilnorClass operator-() const;
    MilnorClass scaled(const BigInt& c) const;

    friend bool operator==(const MilnorClass& a, const MilnorClass& b);
    friend bool operator!=(const MilnorClass& a, const MilnorClass& b) { return !(a == b); }

    std::string key() const;
    std::string to_string() const;

private:
    FieldPtr field_;
    int degree_ = 0;
    std::vector<std::pair<std::vector<Element>, BigInt>> terms_;  // sorted by symbol key

    void add_term(std::vector<Element> entries, BigInt coeff);
    void collapse_low_degree();
    void merge_slots();
    friend MilnorClass raw_combination(const FieldPtr&, int,
                                       std::vector<std::pair<std::vector<Element>, BigInt>>);
};

MilnorClass canonicalize(const FieldPtr& f, const std::vector<Element>& raw);
MilnorClass product(const MilnorClass& a, const MilnorClass& b);

/// Canonical class from a raw list of (symbol, coefficient) terms.
MilnorClass raw_combination(const FieldPtr& f, int degree,
                            std::vector<std::pair<std::vector<Element>, BigInt>> terms);

/// Residue (tame symbol) at v, degree -1, landing over the residue field.
/// Determined by d({pi, u2..un}) = {u2bar..unbar} and d(units) = 0.
MilnorClass residue(const MilnorClass& x, const Valuation& v, TameSign sign = TameSign::Classic);

/// Specialization s^pi_v(x) = d_v({-pi} * x); reduction mod v on classes
/// restricted from the valuation ring.
MilnorClass specialize(const MilnorClass& x, const Valuation& v, const Element& pi,
                       TameSign sign = TameSign::Classic);

/// Entrywise restriction along a field morphism.
MilnorClass restrict_class(const MilnorClass& x, const FieldMorphism& phi);

/// Norm (corestriction) along a finite morphism; degrees 0 and 1 only,
/// higher degrees throw NotComputableError.
MilnorClass norm_class(const MilnorClass& x, const FieldMorphism& phi);

/// Field norm of a single element along a finite morphism.
Element field_norm(const FieldMorphism& phi, const Element& y);

/// Sum over all places of P^1 of the norm to the constant field of the
/// residue; always 0 (Weil reciprocity). Input: degree-2 class over
/// F_q(t) with entries supported at enumerable places.
MilnorClass weil_reciprocity_defect(const MilnorClass& x);

/// Shape of K^M_n for the supported fields.
struct KGroupReport {
    enum class Shape { FreeZ, Cyclic, Zero, Split, TameTarget };
    Shape shape;
    BigInt cyclic_order;                    // Shape::Cyclic
    std::string base_summand;               // Shape::Split
    std::vector<std::string> point_labels;  // Shape::Split / TameTarget, truncated
    int bound = 0;
    bool truncated = false;
    std::string description;
};
KGroupReport kgroup_structure(const FieldPtr& f, int n, int bound = 4);

/// Brute-force relation closure for K^M_2(F_q): the subgroup of
/// F_q^x (x) F_q^x generated by Steinberg elements, computed via discrete
/// logarithms; reports whether every degree-2 symbol lies in it.
struct K2ClosureReport {
    uint64_t q = 0;
    bool all_zero = false;
    int passes = 0;
    long long residual_index = 0;  // index of the Steinberg subgroup
    long long symbols_checked = 0;
};
K2ClosureReport k2_relation_closure(uint64_t q, int depth_cap = 6);

}  // namespace rostforge
