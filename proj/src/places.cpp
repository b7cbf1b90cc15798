#include "rostforge/places.hpp"

#include <numeric>
#include <stdexcept>

#include "rostforge/errors.hpp"
#include "rostforge/fieldext.hpp"

namespace rostforge {

namespace {

// reduction mod the maximal ideal for v-integral elements
Element reduce_integral(const Valuation& v, const Element& x) {
    if (x.is_zero()) return Element::zero(v.residue_field());
    long long a = v.valuation_of(x);
    if (a < 0) throw std::domain_error("reduce_integral: element has a pole at v");
    if (a > 0) return Element::zero(v.residue_field());
    return v.reduce_unit(x);
}

bool is_same_var_tower(const FieldMorphism& phi) {
    return !phi.image() && phi.from()->kind() == Field::Kind::RationalFunction &&
           phi.to()->kind() == Field::Kind::RationalFunction &&
           phi.from()->variable() == phi.to()->variable() &&
           has_canonical_embedding(phi.from()->base(), phi.to()->base());
}

bool is_substitution(const FieldMorphism& phi) {
    return phi.image() && phi.from()->kind() == Field::Kind::RationalFunction &&
           phi.to()->kind() == Field::Kind::RationalFunction &&
           same_field(phi.from()->base(), phi.to()->base()) &&
           phi.image()->rf_den().degree() == 0 && phi.image()->rf_num().degree() >= 1 &&
           phi.image()->rf_num().is_monic();
}

// the element of F(t) given by a polynomial over the base
Element poly_elem(const FieldPtr& line, const Polynomial& p) {
    return Element::rational_function(
        line, p, Polynomial::constant(line->base(), Element::one(line->base())));
}

// express x in the F_p power basis of theta (both in a finite field),
// returning the coefficient vector; theta must generate the field over F_p
std::optional<std::vector<uint64_t>> express_in_power_basis(const Element& x, const Element& theta) {
    const FieldPtr& f = x.field();
    unsigned d = f->exponent();
    FieldPtr fp = Field::finite(f->prime());
    std::vector<std::vector<Element>> A(d, std::vector<Element>(d, Element::zero(fp)));
    std::vector<Element> b(d, Element::zero(fp));
    Element p = Element::one(f);
    for (unsigned j = 0; j < d; ++j) {
        auto coords = p.ff();
        for (unsigned i = 0; i < d; ++i)
            A[i][j] = Element::finite(fp, {i < coords.size() ? coords[i] : 0});
        p = p * theta;
    }
    auto xc = x.ff();
    for (unsigned i = 0; i < d; ++i) b[i] = Element::finite(fp, {i < xc.size() ? xc[i] : 0});
    auto sol = linear_solve(A, b);
    if (!sol) return std::nullopt;
    std::vector<uint64_t> out;
    for (const auto& c : *sol) out.push_back(c.ff().empty() ? 0 : c.ff()[0]);
    return out;
}

// the map kappa_w -> target determined by theta_w |-> image_of_theta,
// where kappa_w is a finite field generated over its prime field by theta_w
std::optional<FieldMorphism> finite_residue_map(const FieldPtr& kappa_w, const Element& theta_w,
                                                const Element& image_of_theta,
                                                std::optional<long long> degree) {
    if (kappa_w->exponent() == 1)
        return FieldMorphism::embedding(kappa_w, image_of_theta.field());
    Element gen = Element::generator(kappa_w);
    auto coords = express_in_power_basis(gen, theta_w);
    if (!coords) return std::nullopt;
    const FieldPtr& target = image_of_theta.field();
    Element img = Element::zero(target);
    for (size_t i = coords->size(); i-- > 0;)
        img = img * image_of_theta +
              Element::from_integer(target, BigInt(static_cast<long long>((*coords)[i])));
    return FieldMorphism::with_image(kappa_w, target, img, degree);
}

// root of pi in the canonical residue field of Valuation::point_of_line(pi)
Element residue_root(const Valuation& v) {
    FieldPtr kappa = v.residue_field();
    const Polynomial& pi = v.pi();
    if (pi.degree() == 1) return -pi.coeff(0);
    auto lift = [&](const Element& c) { return embed(c, kappa); };
    std::optional<Element> best;
    for (const auto& x : all_elements(kappa))
        if (pi.eval_mapped(x, lift).is_zero() && (!best || x.key() < best->key())) best = x;
    if (!best) throw std::logic_error("residue_root: no root in residue field");
    return *best;
}

}  // namespace

bool valuation_trivial_on_image(const Valuation& v, const FieldMorphism& phi) {
    if (!same_field(v.field(), phi.to())) return false;
    if (v.field()->kind() != Field::Kind::RationalFunction) return false;
    // canonical embedding landing in the constants
    return !phi.image() && has_canonical_embedding(phi.from(), v.field()->base());
}

std::optional<RestrictedPlace> restrict_valuation(const Valuation& v, const FieldMorphism& phi) {
    if (!same_field(v.field(), phi.to())) return std::nullopt;
    if (phi.is_identity())
        return RestrictedPlace{v, 1, FieldMorphism::identity(v.residue_field())};
    bool tower = is_same_var_tower(phi);
    bool subst = is_substitution(phi);
    if (!tower && !subst) return std::nullopt;
    const FieldPtr& E = phi.from();
    const FieldPtr& F = E->base();

    if (v.kind() == Valuation::Kind::InfinitePlace) {
        Valuation w = Valuation::infinite_place(E);
        long long e = subst ? phi.image()->rf_num().degree() : 1;
        FieldPtr kw = w.residue_field(), kv = v.residue_field();
        if (same_field(kw, kv)) return RestrictedPlace{w, e, FieldMorphism::identity(kv)};
        if (!has_canonical_embedding(kw, kv)) return std::nullopt;
        return RestrictedPlace{w, e, FieldMorphism::embedding(kw, kv)};
    }

    // point of the line: search the monic irreducible pi0 over F under v
    if (!F->is_finite() && !F->is_rationals()) return std::nullopt;
    int bound = v.degree();
    if (tower) {
        auto d = FieldMorphism::embedding(F, v.field()->base()).finite_degree();
        if (!d) return std::nullopt;
        bound *= static_cast<int>(*d);
    } else {
        bound *= phi.image()->rf_num().degree();
    }
    if (F->is_rationals()) {
        // only degree-1 points over quadratic extensions are searched here
        if (v.degree() != 1 || v.field()->base()->kind() != Field::Kind::FiniteExtension)
            return std::nullopt;
        const FieldPtr& K = v.field()->base();
        if (K->extension_degree() != 2 || !tower) return std::nullopt;
        Element alpha = residue_root(v);  // in K
        Element a0 = alpha.alg_rep().coeff(0), a1 = alpha.alg_rep().coeff(1);
        FieldPtr Q = Field::rationals();
        Polynomial pi0(Q);
        if (a1.is_zero()) {
            pi0 = Polynomial(Q, {-a0, Element::one(Q)});
        } else {
            Element c1 = K->defining_poly().coeff(1), c0 = K->defining_poly().coeff(0);
            Element tr = a0 + a0 - a1 * c1;
            Element nm = a0 * a0 - a0 * a1 * c1 + a1 * a1 * c0;
            pi0 = Polynomial(Q, {nm, -tr, Element::one(Q)});
        }
        Valuation w = Valuation::point_of_line(E, pi0);
        long long e = v.valuation_of(phi.apply(poly_elem(E, pi0)));
        FieldPtr kw = w.residue_field(), kv = v.residue_field();
        FieldMorphism rmap = kw->is_rationals()
                                 ? FieldMorphism::embedding(kw, kv)
                                 : FieldMorphism::with_image(kw, kv, alpha, 1);
        return RestrictedPlace{w, e, rmap};
    }
    // finite base: enumerate candidates by ascending degree
    for (int d = 1; d <= bound; ++d) {
        std::vector<Element> elems = all_elements(F);
        std::vector<size_t> idx(d, 0);
        for (;;) {
            std::vector<Element> coeffs;
            for (int i = 0; i < d; ++i) coeffs.push_back(elems[idx[i]]);
            coeffs.push_back(Element::one(F));
            Polynomial cand(F, std::move(coeffs));
            if (poly_is_irreducible_over_finite(cand)) {
                long long e = v.valuation_of(phi.apply(poly_elem(E, cand)));
                if (e > 0) {
                    Valuation w = Valuation::point_of_line(E, cand);
                    FieldPtr kw = w.residue_field(), kv = v.residue_field();
                    // induced map: theta_w = tbar |-> image of t reduced at v
                    Element image_t = reduce_integral(v, phi.apply(Element::generator(E)));
                    if (d == 1) {
                        if (!has_canonical_embedding(kw, kv)) return std::nullopt;
                        return RestrictedPlace{w, e, FieldMorphism::embedding(kw, kv)};
                    }
                    if (F->exponent() != 1) return std::nullopt;
                    Element theta_w = residue_root(w);
                    auto ddeg = FieldMorphism::embedding(kw, kv).finite_degree();
                    auto rmap = finite_residue_map(kw, theta_w, image_t, ddeg);
                    if (!rmap) return std::nullopt;
                    return RestrictedPlace{w, e, *rmap};
                }
            }
            int i = 0;
            while (i < d && ++idx[i] == elems.size()) idx[i++] = 0;
            if (i == d) break;
        }
    }
    return std::nullopt;
}

std::optional<std::vector<ExtendedPlace>> extend_valuation(const Valuation& v,
                                                           const FieldMorphism& phi) {
    if (!same_field(v.field(), phi.from())) return std::nullopt;
    if (phi.is_identity()) return std::vector<ExtendedPlace>{{v, FieldMorphism::identity(v.residue_field())}};
    bool tower = is_same_var_tower(phi);
    bool subst = is_substitution(phi);
    if (!tower && !subst) return std::nullopt;
    const FieldPtr& L = phi.to();

    if (v.kind() == Valuation::Kind::InfinitePlace) {
        Valuation w = Valuation::infinite_place(L);
        FieldPtr kv = v.residue_field(), kw = w.residue_field();
        if (same_field(kv, kw))
            return std::vector<ExtendedPlace>{{w, FieldMorphism::identity(kv)}};
        if (!has_canonical_embedding(kv, kw)) return std::nullopt;
        return std::vector<ExtendedPlace>{{w, FieldMorphism::embedding(kv, kw)}};
    }
    if (v.kind() != Valuation::Kind::PointOfLine) return std::nullopt;
    const FieldPtr& KL = L->base();
    if (!KL->is_finite()) return std::nullopt;
    if (v.field()->base()->exponent() != 1 && v.degree() > 1) return std::nullopt;

    // factor the image of pi0 over the base of L
    Element img = phi.apply(poly_elem(v.field(), v.pi()));
    if (img.rf_den().degree() != 0) return std::nullopt;
    Polynomial img_poly = img.rf_num();
    std::vector<ExtendedPlace> out;
    for (const auto& [fac, mult] : factor_poly(img_poly)) {
        if (tower && mult != 1) return std::nullopt;  // inseparable tower step
        Valuation w = Valuation::point_of_line(L, fac);
        FieldPtr kv = v.residue_field(), kw = w.residue_field();
        // induced map kappa_v -> kappa_w: tbar |-> reduction of phi(t) at w
        Element image_t = reduce_integral(w, phi.apply(Element::generator(v.field())));
        if (v.degree() == 1) {
            if (!has_canonical_embedding(kv, kw)) return std::nullopt;
            out.push_back({w, FieldMorphism::embedding(kv, kw)});
        } else {
            Element theta_v = residue_root(v);
            auto ddeg = FieldMorphism::embedding(kv, kw).finite_degree();
            auto rmap = finite_residue_map(kv, theta_v, image_t, ddeg);
            if (!rmap) return std::nullopt;
            out.push_back({w, *rmap});
        }
    }
    return out;
}

std::optional<std::vector<TensorPoint>> tensor_points(const FieldMorphism& phi,
                                                      const FieldMorphism& psi) {
    if (!same_field(phi.from(), psi.from())) return std::nullopt;
    const FieldPtr& K = phi.from();
    const FieldPtr& E = phi.to();
    const FieldPtr& L = psi.to();
    if (phi.is_identity())
        return std::vector<TensorPoint>{{L, FieldMorphism::identity(L), psi, 1}};
    if (psi.is_identity())
        return std::vector<TensorPoint>{{E, phi, FieldMorphism::identity(E), 1}};
    if (phi.image() || psi.image()) return std::nullopt;

    // finite fields: gcd many points, each the compositum
    if (K->is_finite() && E->is_finite() && L->is_finite()) {
        unsigned a = E->exponent() / K->exponent(), b = L->exponent() / K->exponent();
        unsigned g = std::gcd(a, b);
        unsigned lcm_e = E->exponent() / std::gcd(E->exponent(), L->exponent()) * L->exponent();
        FieldPtr kappa = Field::finite(K->prime(), lcm_e);
        std::vector<TensorPoint> out;
        FieldMorphism norm_side = same_field(L, kappa) ? FieldMorphism::identity(L)
                                                       : FieldMorphism::embedding(L, kappa);
        if (E->exponent() == 1) {
            // E = F_p has no generator to twist; only the canonical point
            if (g != 1) return std::nullopt;
            out.push_back({kappa, norm_side,
                           same_field(E, kappa) ? FieldMorphism::identity(E)
                                                : FieldMorphism::embedding(E, kappa),
                           1});
            return out;
        }
        Element theta = embed(Element::generator(E), kappa);
        uint64_t qK = K->order();
        Element img = theta;
        for (unsigned j = 0; j < g; ++j) {
            out.push_back({kappa, norm_side, FieldMorphism::with_image(E, kappa, img,
                                                                       static_cast<long long>(lcm_e / E->exponent())),
                           1});
            img = img.pow(BigInt(static_cast<long long>(qK)));  // next K-embedding
        }
        return out;
    }

    // quadratic extensions of a characteristic-0 base with a carrier
    if (E->kind() == Field::Kind::FiniteExtension && same_field(E->base(), K) &&
        E->extension_degree() == 2 && L->kind() == Field::Kind::FiniteExtension &&
        K->has_carrier()) {
        const Polynomial& f = E->defining_poly();
        Element b = embed(f.coeff(1), L), c = embed(f.coeff(0), L);
        Element four = Element::from_integer(L, BigInt(4));
        Element two = Element::from_integer(L, BigInt(2));
        Element disc = b * b - four * c;
        if (auto sd = try_sqrt(disc)) {
            Element r1 = (-b + *sd) / two, r2 = (-b - *sd) / two;
            std::vector<TensorPoint> out;
            for (const Element& r : {r1, r2})
                out.push_back({L, FieldMorphism::identity(L), FieldMorphism::with_image(E, L, r, 1), 1});
            return out;
        }
        // f stays irreducible over L: a single point, the compositum
        std::vector<Element> lifted;
        for (int i = 0; i <= f.degree(); ++i) lifted.push_back(embed(f.coeff(static_cast<size_t>(i)), L));
        FieldPtr kappa = Field::finite_extension(L, Polynomial(L, std::move(lifted)));
        return std::vector<TensorPoint>{
            {kappa, FieldMorphism::embedding(L, kappa),
             FieldMorphism::with_image(E, kappa, Element::generator(kappa), 2), 1}};
    }
    return std::nullopt;
}

std::optional<Element> try_unembed(const Element& x, const FieldPtr& from) {
    const FieldPtr& f = x.field();
    if (same_field(f, from)) return x;
    switch (f->kind()) {
        case Field::Kind::RationalFunction: {
            if (from->kind() == Field::Kind::RationalFunction && from->variable() == f->variable() &&
                has_canonical_embedding(from->base(), f->base())) {
                auto unlift = [&](const Polynomial& p) -> std::optional<Polynomial> {
                    std::vector<Element> cs;
                    for (const auto& c : p.coeffs()) {
                        auto u = try_unembed(c, from->base());
                        if (!u) return std::nullopt;
                        cs.push_back(*u);
                    }
                    return Polynomial(from->base(), std::move(cs));
                };
                auto n = unlift(x.rf_num()), d = unlift(x.rf_den());
                if (n && d && !d->is_zero()) return Element::rational_function(from, *n, *d);
                // fall through to the constants route
            }
            if (x.rf_num().degree() != 0 || x.rf_den().degree() != 0) return std::nullopt;
            Element c = x.rf_num().coeff(0) / x.rf_den().coeff(0);
            return try_unembed(c, from);
        }
        case Field::Kind::FiniteExtension: {
            if (x.alg_rep().degree() > 0) return std::nullopt;
            return try_unembed(x.alg_rep().coeff(0), from);
        }
        case Field::Kind::Finite: {
            if (from->kind() != Field::Kind::Finite) return std::nullopt;
            for (const auto& cand : all_elements(from))
                if (embed(cand, f) == x) return cand;
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

}  // namespace rostforge
