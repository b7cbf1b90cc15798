#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rostforge/bigint.hpp"

namespace rostforge {

class Field;
class Element;
class Polynomial;
using FieldPtr = std::shared_ptr<const Field>;

/// Structured description of a field as a tower over its prime field.
///
/// Rational function fields are canonicalized to one variable per level:
/// Q(t,u) is stored as (Q(t))(u). Declared fields (reals, complexes) carry
/// cardinality/transcendence attributes only and have no element carrier.
class Field : public std::enable_shared_from_this<Field> {
public:
    enum class Kind { Rationals, Finite, Number, RationalFunction, FiniteExtension, Declared };

    static FieldPtr rationals();
    static FieldPtr finite(uint64_t p, unsigned e = 1);
    static FieldPtr number_field(unsigned degree, unsigned r1, unsigned r2, std::string label = "");
    static FieldPtr rational_function(FieldPtr base, std::vector<std::string> vars);
    static FieldPtr finite_extension(FieldPtr base, Polynomial defining, std::string label = "");
    /// Declared field with no element carrier (e.g. the reals).
    static FieldPtr declared(std::string name, bool uncountable, bool infinite_trdeg);

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::Rationals; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_prime_finite() const { return kind_ == Kind::Finite && ext_e_ == 1; }

    /// Characteristic; 0 for characteristic-zero fields.
    uint64_t characteristic() const;
    /// Transcendence degree over the prime field; nullopt for declared
    /// fields flagged with infinite transcendence degree.
    std::optional<unsigned> transcendence_degree() const;

    // Finite fields
    uint64_t prime() const { return prime_; }
    unsigned exponent() const { return ext_e_; }
    uint64_t order() const;
    /// Coefficients of the fixed monic irreducible modulus (degree e, monic,
    /// lexicographically least), little-endian, length e+1.
    const std::vector<uint64_t>& modulus() const { return ff_modulus_; }

    // Number fields
    unsigned nf_degree() const { return nf_degree_; }
    unsigned nf_r1() const { return nf_r1_; }
    unsigned nf_r2() const { return nf_r2_; }

    // Towers
    const FieldPtr& base() const { return base_; }
    const std::string& variable() const { return var_; }
    const Polynomial& defining_poly() const;
    unsigned extension_degree() const { return ext_e_; }

    const std::string& label() const { return label_; }
    bool declared_uncountable() const { return declared_uncountable_; }
    bool declared_infinite_trdeg() const { return declared_inf_trdeg_; }

    bool equals(const Field& other) const;
    bool equals(const FieldPtr& other) const { return other && equals(*other); }

    /// Whether elements of this field have a concrete computable carrier.
    bool has_carrier() const;

    std::string to_string() const;
    std::string key() const;

private:
    Field() = default;

    Kind kind_ = Kind::Rationals;
    uint64_t prime_ = 0;                 // Finite
    std::vector<uint64_t> ff_modulus_;   // Finite, e >= 1
    unsigned nf_degree_ = 0, nf_r1_ = 0, nf_r2_ = 0;  // Number
    FieldPtr base_;                      // RationalFunction / FiniteExtension
    std::string var_;                    // RationalFunction
    std::shared_ptr<const Polynomial> defining_;  // FiniteExtension
    unsigned ext_e_ = 0;                 // Finite exponent or extension degree
    std::string label_;
    bool declared_uncountable_ = false, declared_inf_trdeg_ = false;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace rostforge
