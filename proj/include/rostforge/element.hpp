#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rostforge/field.hpp"
#include "rostforge/rational.hpp"

namespace rostforge {

struct RatFuncRep;
struct AlgRep;

/// An exact element of a computable field, held in canonical form:
/// rationals reduced with positive denominator, finite-field elements as
/// reduced coordinate vectors mod the fixed modulus, rational functions
/// reduced with monic denominator, residue classes reduced mod the
/// defining polynomial.
class Element {
public:
    Element() = default;

    static Element zero(const FieldPtr& f);
    static Element one(const FieldPtr& f);
    static Element from_integer(const FieldPtr& f, const BigInt& n);
    static Element rational(const Rational& q);
    static Element finite(const FieldPtr& f, const std::vector<uint64_t>& coords);
    static Element rational_function(const FieldPtr& f, Polynomial num, Polynomial den);
    static Element algebraic(const FieldPtr& f, Polynomial rep);
    /// The distinguished generator: variable of a rational function field,
    /// residue class of x in a finite extension or non-prime finite field.
    static Element generator(const FieldPtr& f);

    const FieldPtr& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);
    friend Element operator/(const Element& a, const Element& b);
    Element operator-() const;
    Element inverse() const;
    Element pow(const BigInt& e) const;

    friend bool operator==(const Element& a, const Element& b);
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    // payload accessors (valid per field kind)
    const Rational& rat() const { return rat_; }
    const std::vector<uint64_t>& ff() const { return ff_; }
    const Polynomial& rf_num() const;
    const Polynomial& rf_den() const;
    const Polynomial& alg_rep() const;

    /// Canonical byte encoding; lexicographic order on keys is the fixed
    /// total order used throughout symbol canonicalization.
    std::string key() const;
    std::string to_string() const;

private:
    FieldPtr field_;
    Rational rat_;
    std::vector<uint64_t> ff_;
    std::shared_ptr<const RatFuncRep> rf_;
    std::shared_ptr<const AlgRep> alg_;
};

/// Dense univariate polynomial over a computable field.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(FieldPtr base) : base_(std::move(base)) {}
    Polynomial(FieldPtr base, std::vector<Element> coeffs);
    static Polynomial constant(const FieldPtr& base, const Element& c);
    static Polynomial variable(const FieldPtr& base);  // the monomial x
    static Polynomial from_int_coeffs(const FieldPtr& base, const std::vector<long long>& coeffs);

    const FieldPtr& base() const { return base_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    Element coeff(size_t i) const;  // zero beyond the degree
    const std::vector<Element>& coeffs() const { return coeffs_; }
    const Element& leading() const;
    bool is_monic() const;
    Polynomial monic() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const;
    Polynomial scale(const Element& c) const;

    static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r);
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator/(const Polynomial& a, const Polynomial& b);
    static Polynomial gcd(Polynomial a, Polynomial b);  // monic
    Polynomial derivative() const;
    Element eval(const Element& x) const;
    /// Evaluate with coefficients mapped through `lift` into x's field.
    Element eval_mapped(const Element& x, const std::function<Element(const Element&)>& lift) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::string key() const;
    std::string to_string(const std::string& var = "x") const;

private:
    FieldPtr base_;
    std::vector<Element> coeffs_;  // little-endian, no trailing zeros
    void normalize();
};

struct RatFuncRep {
    Polynomial num, den;
};
struct AlgRep {
    Polynomial rep;
};

/// Multiplicity of `factor` in `p` (factor nonconstant).
int poly_multiplicity(const Polynomial& p, const Polynomial& factor);

}  // namespace rostforge
