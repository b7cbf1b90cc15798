#include "rostforge/valuation.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "rostforge/errors.hpp"
#include "rostforge/fieldext.hpp"

namespace rostforge {

Valuation Valuation::finite_place(const BigInt& p) {
    if (p < BigInt(2)) throw std::invalid_argument("finite place: not a prime");
    // primality by trial division; places used here are small
    for (BigInt d(2); d * d <= p; d += BigInt(1))
        if ((p % d).is_zero()) throw std::invalid_argument("finite place: not a prime");
    Valuation v;
    v.kind_ = Kind::FinitePlace;
    v.field_ = Field::rationals();
    v.prime_ = p;
    return v;
}

Valuation Valuation::point_of_line(const FieldPtr& line, Polynomial pi) {
    if (line->kind() != Field::Kind::RationalFunction)
        throw std::invalid_argument("point of line: field is not F(t)");
    if (!same_field(pi.base(), line->base()))
        throw std::invalid_argument("point of line: polynomial over wrong base");
    if (pi.degree() < 1) throw std::invalid_argument("point of line: constant polynomial");
    if (!pi.is_monic()) pi = pi.monic();
    if (check_irreducible(pi) == Irreducibility::No)
        throw std::invalid_argument("point of line: reducible polynomial");
    Valuation v;
    v.kind_ = Kind::PointOfLine;
    v.field_ = line;
    v.pi_ = std::move(pi);
    return v;
}

Valuation Valuation::infinite_place(const FieldPtr& line) {
    if (line->kind() != Field::Kind::RationalFunction)
        throw std::invalid_argument("infinite place: field is not F(t)");
    Valuation v;
    v.kind_ = Kind::InfinitePlace;
    v.field_ = line;
    return v;
}

int Valuation::degree() const {
    return kind_ == Kind::PointOfLine ? pi_.degree() : 1;
}

FieldPtr Valuation::residue_field() const {
    switch (kind_) {
        case Kind::FinitePlace: return Field::finite(static_cast<uint64_t>(prime_.to_int64()));
        case Kind::InfinitePlace: return field_->base();
        case Kind::PointOfLine: {
            const FieldPtr& base = field_->base();
            if (pi_.degree() == 1) return base;
            if (base->is_finite())
                return Field::finite(base->prime(), base->exponent() * pi_.degree());
            return Field::finite_extension(base, pi_);
        }
    }
    throw std::logic_error("residue_field: bad kind");
}

Element Valuation::uniformizer() const {
    switch (kind_) {
        case Kind::FinitePlace: return Element::rational(Rational(prime_));
        case Kind::PointOfLine:
            return Element::rational_function(field_, pi_,
                                              Polynomial::constant(field_->base(), Element::one(field_->base())));
        case Kind::InfinitePlace: {
            const FieldPtr& base = field_->base();
            return Element::rational_function(field_, Polynomial::constant(base, Element::one(base)),
                                              Polynomial::variable(base));
        }
    }
    throw std::logic_error("uniformizer: bad kind");
}

long long Valuation::valuation_of(const Element& x) const {
    if (!same_field(x.field(), field_)) throw std::invalid_argument("valuation_of: wrong field");
    if (x.is_zero()) throw std::domain_error("valuation_of: zero element");
    switch (kind_) {
        case Kind::FinitePlace: {
            auto vp = [&](BigInt n) {
                long long c = 0;
                n = n.abs();
                while ((n % prime_).is_zero()) {
                    n = n / prime_;
                    ++c;
                }
                return c;
            };
            return vp(x.rat().num()) - vp(x.rat().den());
        }
        case Kind::PointOfLine:
            return poly_multiplicity(x.rf_num(), pi_) - poly_multiplicity(x.rf_den(), pi_);
        case Kind::InfinitePlace:
            return static_cast<long long>(x.rf_den().degree()) - x.rf_num().degree();
    }
    throw std::logic_error("valuation_of: bad kind");
}

std::pair<long long, Element> Valuation::split(const Element& x) const {
    long long a = valuation_of(x);
    Element u = x * uniformizer().pow(BigInt(-a));
    return {a, u};
}

namespace {

// root of pi inside the canonical finite field F_{q^d}, cached
Element point_root_in_canonical_field(const Polynomial& pi, const FieldPtr& kappa) {
    static std::map<std::string, Element> cache;
    static std::mutex mtx;
    std::string key = pi.key() + "@" + kappa->key();
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto lift = [&](const Element& c) { return embed(c, kappa); };
    std::optional<Element> best;
    for (const auto& x : all_elements(kappa)) {
        if (pi.eval_mapped(x, lift).is_zero() && (!best || x.key() < best->key())) best = x;
    }
    if (!best) throw std::logic_error("point root: modulus has no root in residue field");
    cache[key] = *best;
    return *best;
}

}  // namespace

Element Valuation::reduce_unit(const Element& u) const {
    if (valuation_of(u) != 0) throw std::domain_error("reduce_unit: not a unit at this place");
    switch (kind_) {
        case Kind::FinitePlace: {
            FieldPtr fp = residue_field();
            Element n = Element::from_integer(fp, u.rat().num());
            Element d = Element::from_integer(fp, u.rat().den());
            return n / d;
        }
        case Kind::InfinitePlace: {
            // value at infinity of f/g with deg f = deg g (denominator monic)
            return u.rf_num().leading();
        }
        case Kind::PointOfLine: {
            FieldPtr kappa = residue_field();
            const FieldPtr& base = field_->base();
            Polynomial fn = u.rf_num() % pi_;
            Polynomial fd = u.rf_den() % pi_;
            if (pi_.degree() == 1) {
                Element theta = -pi_.coeff(0);  // root of t - a
                return fn.eval(theta) / fd.eval(theta);
            }
            if (base->is_finite()) {
                Element theta = point_root_in_canonical_field(pi_, kappa);
                auto lift = [&](const Element& c) { return embed(c, kappa); };
                return fn.eval_mapped(theta, lift) / fd.eval_mapped(theta, lift);
            }
            return Element::algebraic(kappa, fn) / Element::algebraic(kappa, fd);
        }
    }
    throw std::logic_error("reduce_unit: bad kind");
}

bool Valuation::equals(const Valuation& o) const {
    if (kind_ != o.kind_ || !same_field(field_, o.field_)) return false;
    switch (kind_) {
        case Kind::FinitePlace: return prime_ == o.prime_;
        case Kind::PointOfLine: return pi_ == o.pi_;
        case Kind::InfinitePlace: return true;
    }
    return false;
}

std::string Valuation::key() const {
    switch (kind_) {
        case Kind::FinitePlace: return "vp" + prime_.to_string();
        case Kind::PointOfLine: return "vt[" + field_->key() + ";" + pi_.key() + "]";
        case Kind::InfinitePlace: return "vinf[" + field_->key() + "]";
    }
    return "?";
}

std::string Valuation::to_string() const {
    switch (kind_) {
        case Kind::FinitePlace: return "(" + prime_.to_string() + ")";
        case Kind::PointOfLine: return "(" + pi_.to_string(field_->variable()) + ")";
        case Kind::InfinitePlace: return "inf";
    }
    return "?";
}

}  // namespace rostforge
