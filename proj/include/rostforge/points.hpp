#pragma once

#include <vector>

#include "rostforge/field.hpp"
#include "rostforge/valuation.hpp"

namespace rostforge {

enum class LineKind { Affine, Projective };

/// Closed points of the affine or projective line over the base of `line`
/// (which must be of the form F(t)): all monic irreducible polynomials of
/// degree <= degree_bound, plus the infinite place for the projective line.
/// Exhaustive over finite base fields; over Q the enumeration is truncated
/// to integer polynomials of coefficient height <= height_bound.
std::vector<Valuation> closed_points(LineKind kind, const FieldPtr& line, int degree_bound,
                                     int height_bound = 10);

/// Kronecker dimension: trdeg + 1 in characteristic 0, trdeg in
/// characteristic p. Throws for declared fields of infinite
/// transcendence degree.
unsigned kronecker_dimension(const FieldPtr& f);

}  // namespace rostforge
