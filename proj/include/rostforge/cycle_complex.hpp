#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rostforge/cycle_module.hpp"
#include "rostforge/snf.hpp"
#include "rostforge/valuation.hpp"

namespace rostforge {

/// Low-dimensional scheme models carrying truncated cycle complexes.
struct SchemeModel {
    enum class Kind { Point, AffineLine, ProjectiveLine, SpecOK };
    Kind kind = Kind::Point;
    FieldPtr field;       // Point: the field itself; lines: the function field F(t)
    int prime_bound = 8;  // SpecOK truncation
    unsigned r1 = 1, r2 = 0;

    static SchemeModel point(FieldPtr f);
    static SchemeModel affine_line(FieldPtr line);
    static SchemeModel projective_line(FieldPtr line);
    static SchemeModel spec_ok(int prime_bound, unsigned r1, unsigned r2);

    FieldPtr generic_field() const;
    /// Codimension-1 points within the truncation bound.
    std::vector<Valuation> codim1_points(int bound) const;
    std::string to_string() const;
};

/// Finitely supported assignment of coefficient-module values to the
/// codimension-p points of a scheme model.
struct CycleComplexLevel {
    SchemeModel model;
    int codim = 0;
    int twist = 0;
    std::optional<CMValue> generic_value;                   // codim 0
    std::vector<std::pair<Valuation, CMValue>> point_values;  // codim 1
    bool truncated = false;
};

CycleComplexLevel level0(SchemeModel X, int twist, CMValue value);

/// The divisor class map: residues of the generic-point value at each
/// codimension-1 point. Support is computed exactly for Milnor
/// coefficients (zero/pole factorization) and within `bound` otherwise.
CycleComplexLevel differential(const CycleComplexLevel& c, const CycleModuleInterface& M,
                               int bound = 6);

/// The differential out of codimension 1 on the implemented models: the
/// zero map into the (empty) codimension-2 level.
CycleComplexLevel differential_from_codim1(const CycleComplexLevel& c);

bool levels_equal(const CycleComplexLevel& a, const CycleComplexLevel& b,
                  const CycleModuleInterface& M);

/// Invariant-factor description of A^0 (kernel of the truncated divisor
/// map) or A^1 (its cokernel) with Milnor K_1 coefficients on a line over
/// a finite field.
struct ChowReport {
    std::string model;
    int twist = 1;
    int codim = 0;
    int bound = 0;
    std::vector<BigInt> invariant_factors;
    int free_rank = 0;
    bool stabilized = false;
    std::string to_string() const;
};

ChowReport chow_group(const SchemeModel& X, int codim, int bound);

}  // namespace rostforge
