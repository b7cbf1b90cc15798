#pragma once

#include <optional>
#include <vector>

#include "rostforge/element.hpp"
#include "rostforge/field.hpp"

namespace rostforge {

enum class Irreducibility { Yes, No, Unknown };

/// Exhaustive trial-division irreducibility test over a finite field.
bool poly_is_irreducible_over_finite(const Polynomial& p);

/// Irreducibility over the polynomial's base field. Exact over finite
/// fields and for degree <= 3 over Q and over F_q(t); degree >= 4 over Q
/// combines the rational-root test with reduction modulo small primes and
/// may return Unknown.
Irreducibility check_irreducible(const Polynomial& p);

/// All elements of a finite field, in canonical (coordinate) order.
std::vector<Element> all_elements(const FieldPtr& f);

/// All roots of p lying in p's base field (exhaustive over finite fields;
/// rational-root search over Q; bounded polynomial-root search over F_q(t)).
std::vector<Element> poly_roots_in_base(const Polynomial& p);

/// Monic irreducible factors with multiplicities, for polynomials over
/// finite fields and over Q (small-height); throws NotComputableError
/// outside that range.
std::vector<std::pair<Polynomial, int>> factor_poly(const Polynomial& p);

/// Resultant of two polynomials over a common field.
Element resultant(const Polynomial& f, const Polynomial& g);

/// Prime factorization of |n| by trial division; throws
/// NotComputableError past the trial range.
std::vector<std::pair<BigInt, int>> factor_integer(BigInt n);

/// Whether a canonical tower embedding `from` -> `into` exists.
bool has_canonical_embedding(const FieldPtr& from, const FieldPtr& into);

/// Map x along the canonical tower embedding into `into`.
Element embed(const Element& x, const FieldPtr& into);

/// Square root in Q or in a quadratic extension of Q, if one exists.
std::optional<Element> try_sqrt(const Element& x);

/// x = root^k with prime k <= 11, for rational-valued entries (including
/// rational constants inside extensions); nullopt when x is not a perfect
/// power or has no rational representative.
std::optional<std::pair<Element, int>> try_perfect_power(const Element& x);

/// Solve A x = b over a field by Gaussian elimination; nullopt if singular.
std::optional<std::vector<Element>> linear_solve(std::vector<std::vector<Element>> A,
                                                 std::vector<Element> b);

/// Number of real roots of a squarefree rational polynomial (Sturm).
int count_real_roots(const Polynomial& p);

/// Signature (r1, r2) of Q[x]/(f): real roots and conjugate pairs.
std::pair<unsigned, unsigned> signature_of_extension(const Polynomial& f);

}  // namespace rostforge
