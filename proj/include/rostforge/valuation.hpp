#pragma once

#include <string>
#include <utility>

#include "rostforge/element.hpp"
#include "rostforge/field.hpp"

namespace rostforge {

/// A discrete rank-1 geometric valuation: a finite place of Q, a closed
/// point of the affine line over a base field, or the place at infinity
/// of the projective line.
class Valuation {
public:
    enum class Kind { FinitePlace, PointOfLine, InfinitePlace };

    static Valuation finite_place(const BigInt& p);
    static Valuation point_of_line(const FieldPtr& line, Polynomial pi);  // pi monic irreducible over base
    static Valuation infinite_place(const FieldPtr& line);

    Kind kind() const { return kind_; }
    /// The valued field (Q or F(t)).
    const FieldPtr& field() const { return field_; }
    const BigInt& prime() const { return prime_; }
    const Polynomial& pi() const { return pi_; }
    /// Residue degree over the base field.
    int degree() const;

    FieldPtr residue_field() const;
    Element uniformizer() const;
    long long valuation_of(const Element& x) const;
    /// x = pi^a * u with u a unit; returns (a, u).
    std::pair<long long, Element> split(const Element& x) const;
    /// Image of a unit in the residue field.
    Element reduce_unit(const Element& u) const;

    bool equals(const Valuation& o) const;
    std::string key() const;
    std::string to_string() const;

private:
    Valuation() = default;
    Kind kind_ = Kind::FinitePlace;
    FieldPtr field_;
    BigInt prime_;
    Polynomial pi_;
};

}  // namespace rostforge
