#pragma once

#include <optional>
#include <vector>

#include "rostforge/morphism.hpp"
#include "rostforge/valuation.hpp"

namespace rostforge {

/// Whether v vanishes on the image of phi (phi maps into v-units only).
bool valuation_trivial_on_image(const Valuation& v, const FieldMorphism& phi);

/// Restriction data for a valuation v on L along phi: E -> L:
/// the place w of E with v|_E = e.w and the induced map kappa_w -> kappa_v.
struct RestrictedPlace {
    Valuation w;
    long long e;
    FieldMorphism residue_map;
};
std::optional<RestrictedPlace> restrict_valuation(const Valuation& v, const FieldMorphism& phi);

/// Extensions of a valuation v on E along a finite phi: E -> L: the places
/// w of L over v, each with the induced map kappa_v -> kappa_w.
struct ExtendedPlace {
    Valuation w;
    FieldMorphism residue_map;
};
std::optional<std::vector<ExtendedPlace>> extend_valuation(const Valuation& v,
                                                           const FieldMorphism& phi);

/// A point of Spec(E (x)_K L) for phi: K -> E finite and psi: K -> L:
/// residue field kappa with the finite map from L (norm side), the map
/// from E (restriction side), and the Artin length of the local factor.
struct TensorPoint {
    FieldPtr kappa;
    FieldMorphism norm_side;         // L -> kappa, finite
    FieldMorphism restriction_side;  // E -> kappa
    long long length;
};
std::optional<std::vector<TensorPoint>> tensor_points(const FieldMorphism& phi,
                                                      const FieldMorphism& psi);

/// Preimage of x under a canonical embedding, if x lies in the image.
std::optional<Element> try_unembed(const Element& x, const FieldPtr& from);

}  // namespace rostforge
