#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rostforge/bigint.hpp"
#include "rostforge/field.hpp"

namespace rostforge {

/// Classification of the rational rank of a motivic cohomology group.
struct RankValue {
    enum class Tag { Zero, Finite, CountablyInfinite, CardinalOfField, Unknown };
    Tag tag = Tag::Unknown;
    long long finite_rank = 0;          // Tag::Finite
    std::optional<Tag> lower_bound;     // Tag::Unknown, at most one

    static RankValue zero() { return {Tag::Zero, 0, {}}; }
    static RankValue finite(long long r) { return {Tag::Finite, r, {}}; }
    static RankValue countable() { return {Tag::CountablyInfinite, 0, {}}; }
    static RankValue card_of_field() { return {Tag::CardinalOfField, 0, {}}; }
    static RankValue unknown(std::optional<Tag> lower = {}) { return {Tag::Unknown, 0, lower}; }

    bool is_zero_rank() const { return tag == Tag::Zero || (tag == Tag::Finite && finite_rank == 0); }
    bool operator==(const RankValue& o) const {
        return tag == o.tag && finite_rank == o.finite_rank && lower_bound == o.lower_bound;
    }
    std::string to_string() const;
};

/// One applied rule with the result it cites and the hypothesis matched.
struct TraceStep {
    std::string rule_id;     // stable tag, e.g. "borel.number-field"
    std::string citation;    // named theorem backing the step
    std::string hypothesis;  // what was matched
};
using DerivationTrace = std::vector<TraceStep>;

struct RankAnswer {
    RankValue rank;
    DerivationTrace trace;
};

struct RankOptions {
    bool assume_conjectures = false;  // Beilinson-Parshin strengthening in char p
};

/// Rank of H^{n,i}(K) with rational coefficients, by first-match over the
/// ordered rule list; total, with Unknown as the fallback.
RankAnswer rank_HB(const FieldPtr& K, int n, int i, const RankOptions& opts = {});

/// Rank of H^{n,i}(O_K) for the ring of integers of a number field.
RankAnswer rank_HB_OK(const FieldPtr& K, int n, int i, const RankOptions& opts = {});

/// Generators of the free exterior algebra computing the stable real
/// homology behind the rank table: (degree, weight, multiplicity), degrees
/// odd, weight = (degree+1)/2.
struct GradedGenerator {
    int degree;
    int weight;
    int multiplicity;
    bool operator==(const GradedGenerator& o) const {
        return degree == o.degree && weight == o.weight && multiplicity == o.multiplicity;
    }
};
std::vector<GradedGenerator> borel_generators(unsigned r1, unsigned r2, int max_degree);

/// Rank of K_n(O_K) tensor Q: the number of exterior generators in degree
/// n; zero in even degrees.
long long k_rank(unsigned r1, unsigned r2, int n);

/// The pullback of a Chern class along complexification, kept symbolic.
struct PullbackExpr {
    int i = 0;
    bool zero = false;       // odd i
    int j = 0;               // i = 2j
    int sign = 1;            // (-1)^j
    BigInt factorial;        // (2j-1)!
    bool remainder = true;   // "+ decomposable remainder", never expanded
    bool paper_indexing = false;      // generator range starting at p_2
    bool classical_indexing = false;  // generator range starting at p_1
    std::string to_string() const;
};
PullbackExpr chern_pontryagin_pullback(int i);

/// The allowed-nonzero window of the vanishing conjecture for K:
/// {(0,0)} plus the band n in [1, delta(K)].
struct ConjectureWindow {
    std::optional<unsigned> delta;  // nullopt: infinite Kronecker dimension
    bool allows(int n, int i) const;
};
ConjectureWindow conjecture_window(const FieldPtr& K);

/// Cells in the given ranges where rank_HB answers nonzero outside the
/// window; empty means consistent.
std::vector<std::string> conjecture_consistency_report(const FieldPtr& K, int n_lo, int n_hi,
                                                       int i_lo, int i_hi,
                                                       const RankOptions& opts = {});

/// Signature (r1, r2) when K describes a number field: declared data, the
/// rationals, or a one-step extension of Q (computed by real root counting).
std::optional<std::pair<unsigned, unsigned>> number_field_signature(const FieldPtr& K);

}  // namespace rostforge
