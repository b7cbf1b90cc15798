#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rostforge/cycle_module.hpp"
#include "rostforge/milnor.hpp"
#include "rostforge/morphism.hpp"
#include "rostforge/valuation.hpp"

namespace rostforge {

/// One generator of the morphism category: restriction phi_*, norm phi^!,
/// symbol multiplication gamma_x, or residue d_v.
class Generator {
public:
    enum class Kind { Restriction, Norm, SymbolMult, Residue };

    static Generator restriction(FieldMorphism phi);
    static Generator norm(FieldMorphism phi);  // phi: E -> L finite; acts (L,n) -> (E,n)
    static Generator symbol_mult(MilnorClass x);
    static Generator residue_at(Valuation v);

    Kind kind() const { return kind_; }
    const FieldMorphism& phi() const { return *phi_; }
    const MilnorClass& sym() const { return *sym_; }
    const Valuation& val() const { return *val_; }

    FieldPtr source_field() const;
    FieldPtr target_field() const;
    int twist_delta() const;

    bool equals(const Generator& o) const;
    std::string key() const;
    std::string to_string() const;

private:
    Kind kind_ = Kind::Restriction;
    std::optional<FieldMorphism> phi_;
    std::optional<MilnorClass> sym_;
    std::optional<Valuation> val_;
};

using GenSeq = std::vector<Generator>;  // seq[0] outermost (applied last)

/// A formal integer combination of composable generator sequences between
/// two objects of the category; every sequence type-checks end to end.
class MorphismWord {
public:
    static MorphismWord zero(ObjectRef source, ObjectRef target);
    static MorphismWord identity(ObjectRef obj);
    static MorphismWord single(ObjectRef source, GenSeq seq, BigInt coeff = BigInt(1));

    const ObjectRef& source() const { return source_; }
    const ObjectRef& target() const { return target_; }
    const std::vector<std::pair<BigInt, GenSeq>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    MorphismWord scaled(const BigInt& c) const;
    friend MorphismWord operator+(const MorphismWord& a, const MorphismWord& b);
    /// w1 after w2 (composition w1 . w2), bilinear over terms.
    static MorphismWord compose(const MorphismWord& w1, const MorphismWord& w2);

    std::string to_string() const;

    /// Target object of a sequence starting at `source`; throws on a
    /// type-check failure.
    static ObjectRef typecheck(const ObjectRef& source, const GenSeq& seq);

private:
    ObjectRef source_, target_;
    std::vector<std::pair<BigInt, GenSeq>> terms_;
    void add_term(const BigInt& c, GenSeq seq);
};

enum class RewriteStatus { Normal, NotComputable, NonTerminating };

struct RewriteConfig {
    long long step_budget = 10000;  // overridden by ROSTFORGE_STEP_BUDGET
    TameSign sign = TameSign::Classic;
    static RewriteConfig from_env();
};

struct RewriteStep {
    MorphismWord word;
    std::string rule;  // tag of the rule applied
};

/// One oriented rewrite at the innermost matching position: gammas merge
/// (R0) and migrate toward the target (R2a/R2b/R2c), residues migrate
/// toward the source (R3a-R3e), restrictions and norms merge (R1a/R1b) and
/// norms move out through restrictions (R1c). Returns nullopt at a
/// fixpoint.
std::optional<RewriteStep> rewrite_step(const MorphismWord& w, const RewriteConfig& cfg = {});

/// Windows that structurally match a rule whose carrier data is not
/// implemented (unsupported tensor decomposition, place restriction, ...).
std::vector<std::string> stuck_positions(const MorphismWord& w);

/// A summand of the Rost normal form
/// phi^! . gamma_sigma . psi_* . d_{v_1} ... d_{v_r} . gamma_tau.
struct RostNormalForm {
    BigInt coeff;
    std::optional<FieldMorphism> phi;    // finite, E -> L
    std::optional<MilnorClass> sigma;    // over L
    std::optional<FieldMorphism> psi;    // kappa_v -> L
    std::vector<Valuation> vals;         // v_1 .. v_r, outermost first
    std::optional<MilnorClass> tau;      // lift of the K^M(v)-component
    int rank() const { return static_cast<int>(vals.size()); }
    std::string to_string() const;
};

struct NormalizeResult {
    MorphismWord word;
    RewriteStatus status = RewriteStatus::Normal;
    long long steps = 0;
    std::vector<std::string> trace;        // rule tags in application order
    std::vector<RostNormalForm> summands;  // parsed terms in normal shape
    std::vector<std::string> flags;        // stuck windows, if any
};

NormalizeResult normalize(const MorphismWord& w, const RewriteConfig& cfg = {});

/// Functorial application of a word to a cycle-module element over its
/// source object, innermost generator first.
CMValue evaluate(const MorphismWord& w, const CMValue& x, const CycleModuleInterface& M);

}  // namespace rostforge
