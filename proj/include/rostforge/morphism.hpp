#pragma once

#include <optional>
#include <string>

#include "rostforge/element.hpp"
#include "rostforge/field.hpp"

namespace rostforge {

/// A k-algebra morphism between computable fields.
///
/// Canonical tower embeddings carry no extra data. Non-canonical maps
/// (conjugations, variable substitutions t -> m(s)) are pinned down by the
/// image of the source field's distinguished generator.
class FieldMorphism {
public:
    static FieldMorphism identity(const FieldPtr& f);
    /// Canonical tower embedding; throws if none exists.
    static FieldMorphism embedding(const FieldPtr& from, const FieldPtr& into);
    /// Morphism determined by the image of the distinguished generator.
    /// `degree` is [to : from] when the morphism is finite and known.
    static FieldMorphism with_image(const FieldPtr& from, const FieldPtr& to, Element gen_image,
                                    std::optional<long long> degree = std::nullopt);

    const FieldPtr& from() const { return from_; }
    const FieldPtr& to() const { return to_; }
    const std::optional<Element>& image() const { return image_; }
    bool is_identity() const { return same_field(from_, to_) && !image_; }

    Element apply(const Element& x) const;
    /// [to : from] for finite morphisms, when determinable.
    std::optional<long long> finite_degree() const;

    /// second ∘ first
    static FieldMorphism compose(const FieldMorphism& second, const FieldMorphism& first);

    bool equals(const FieldMorphism& o) const;
    std::string key() const;
    std::string to_string() const;

private:
    FieldMorphism() = default;
    FieldPtr from_, to_;
    std::optional<Element> image_;
    std::optional<long long> degree_;
    void normalize_image();
};

}  // namespace rostforge
