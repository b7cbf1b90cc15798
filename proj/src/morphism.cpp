#include "rostforge/morphism.hpp"

#include <stdexcept>

#include "rostforge/errors.hpp"
#include "rostforge/fieldext.hpp"

namespace rostforge {

namespace {

bool field_has_generator(const FieldPtr& f) {
    switch (f->kind()) {
        case Field::Kind::RationalFunction:
        case Field::Kind::FiniteExtension: return true;
        case Field::Kind::Finite: return f->exponent() > 1;
        default: return false;
    }
}

}  // namespace

FieldMorphism FieldMorphism::identity(const FieldPtr& f) {
    FieldMorphism m;
    m.from_ = f;
    m.to_ = f;
    m.degree_ = 1;
    return m;
}

FieldMorphism FieldMorphism::embedding(const FieldPtr& from, const FieldPtr& into) {
    if (!has_canonical_embedding(from, into))
        throw NotComputableError("no canonical embedding " + from->to_string() + " -> " +
                                 into->to_string());
    FieldMorphism m;
    m.from_ = from;
    m.to_ = into;
    return m;
}

FieldMorphism FieldMorphism::with_image(const FieldPtr& from, const FieldPtr& to, Element gen_image,
                                        std::optional<long long> degree) {
    if (!field_has_generator(from))
        throw std::invalid_argument("with_image: source field has no distinguished generator");
    if (!same_field(gen_image.field(), to)) throw std::invalid_argument("with_image: image field mismatch");
    FieldMorphism m;
    m.from_ = from;
    m.to_ = to;
    m.image_ = std::move(gen_image);
    m.degree_ = degree;
    m.normalize_image();
    return m;
}

void FieldMorphism::normalize_image() {
    // a with_image morphism that agrees with the canonical embedding is the
    // canonical embedding; keeping one representation makes equality usable
    if (!image_) return;
    if (!has_canonical_embedding(from_, to_)) return;
    Element canonical_img = embed(Element::generator(from_), to_);
    if (canonical_img == *image_) image_.reset();
}

Element FieldMorphism::apply(const Element& x) const {
    if (!same_field(x.field(), from_)) throw std::invalid_argument("morphism apply: element field mismatch");
    if (!image_) return embed(x, to_);
    auto lift = [&](const Element& c) { return embed(c, to_); };
    switch (from_->kind()) {
        case Field::Kind::RationalFunction: {
            Element n = x.rf_num().eval_mapped(*image_, lift);
            Element d = x.rf_den().eval_mapped(*image_, lift);
            return n / d;
        }
        case Field::Kind::FiniteExtension:
            return x.alg_rep().eval_mapped(*image_, lift);
        case Field::Kind::Finite: {
            Element acc = Element::zero(to_);
            const auto& c = x.ff();
            for (size_t i = c.size(); i-- > 0;)
                acc = acc * *image_ + Element::from_integer(to_, BigInt(static_cast<long long>(c[i])));
            return acc;
        }
        default: throw std::logic_error("morphism apply: unsupported source kind");
    }
}

std::optional<long long> FieldMorphism::finite_degree() const {
    if (degree_) return degree_;
    if (same_field(from_, to_) && !image_) return 1;
    if (image_) {
        // substitution t -> m(s) between rational function fields
        if (from_->kind() == Field::Kind::RationalFunction &&
            to_->kind() == Field::Kind::RationalFunction &&
            image_->field()->kind() == Field::Kind::RationalFunction &&
            image_->rf_den().degree() == 0) {
            long long d = image_->rf_num().degree();
            if (d < 1) return std::nullopt;
            if (same_field(from_->base(), to_->base())) return d;
            FieldMorphism base_emb;
            if (!has_canonical_embedding(from_->base(), to_->base())) return std::nullopt;
            auto bd = embedding(from_->base(), to_->base()).finite_degree();
            if (!bd) return std::nullopt;
            return d * *bd;
        }
        return std::nullopt;
    }
    // canonical embeddings
    switch (to_->kind()) {
        case Field::Kind::FiniteExtension: {
            if (same_field(from_, to_->base())) return to_->extension_degree();
            if (!has_canonical_embedding(from_, to_->base())) return std::nullopt;
            auto bd = embedding(from_, to_->base()).finite_degree();
            if (!bd) return std::nullopt;
            return *bd * to_->extension_degree();
        }
        case Field::Kind::Finite:
            if (from_->kind() == Field::Kind::Finite && from_->prime() == to_->prime() &&
                to_->exponent() % from_->exponent() == 0)
                return to_->exponent() / from_->exponent();
            return std::nullopt;
        case Field::Kind::RationalFunction:
            if (from_->kind() == Field::Kind::RationalFunction &&
                from_->variable() == to_->variable() &&
                has_canonical_embedding(from_->base(), to_->base()))
                return embedding(from_->base(), to_->base()).finite_degree();
            return std::nullopt;  // constants into F(t) is not finite
        default: return std::nullopt;
    }
}

FieldMorphism FieldMorphism::compose(const FieldMorphism& second, const FieldMorphism& first) {
    if (!same_field(first.to_, second.from_))
        throw std::invalid_argument("morphism compose: middle field mismatch");
    std::optional<long long> deg;
    {
        auto d1 = first.finite_degree(), d2 = second.finite_degree();
        if (d1 && d2) deg = *d1 * *d2;
    }
    if (!field_has_generator(first.from_)) {
        // prime-field-like source: composite is canonical if a path exists
        FieldMorphism m;
        m.from_ = first.from_;
        m.to_ = second.to_;
        m.degree_ = deg;
        if (!has_canonical_embedding(m.from_, m.to_))
            throw NotComputableError("compose: no representable morphism " + m.from_->to_string() +
                                     " -> " + m.to_->to_string());
        return m;
    }
    Element g = first.image_ ? *first.image_ : embed(Element::generator(first.from_), first.to_);
    return with_image(first.from_, second.to_, second.apply(g), deg);
}

bool FieldMorphism::equals(const FieldMorphism& o) const {
    if (!same_field(from_, o.from_) || !same_field(to_, o.to_)) return false;
    if (image_.has_value() != o.image_.has_value()) return false;
    if (image_ && !(*image_ == *o.image_)) return false;
    return true;
}

std::string FieldMorphism::key() const {
    std::string s = "M[" + from_->key() + ">" + to_->key();
    if (image_) s += ";" + image_->key();
    return s + "]";
}

std::string FieldMorphism::to_string() const {
    std::string s = from_->to_string() + " -> " + to_->to_string();
    if (image_) s += " (gen -> " + image_->to_string() + ")";
    return s;
}

}  // namespace rostforge
