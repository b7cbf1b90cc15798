#include "rostforge/element.hpp"

#include <algorithm>
#include <stdexcept>

#include "rostforge/errors.hpp"
#include "rostforge/fieldext.hpp"

namespace rostforge {

namespace {

uint64_t mod_inverse(uint64_t a, uint64_t p) {
    // extended Euclid; p prime, a != 0 mod p
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a % p);
    while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw std::domain_error("mod_inverse: not invertible");
    return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(p) : t);
}

// F_p[x] helpers on raw coordinate vectors (little-endian, possibly unnormalized)
void ff_trim(std::vector<uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

std::vector<uint64_t> ff_add(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b, uint64_t p) {
    std::vector<uint64_t> r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = s % p;
    }
    ff_trim(r);
    return r;
}

std::vector<uint64_t> ff_neg(const std::vector<uint64_t>& a, uint64_t p) {
    std::vector<uint64_t> r = a;
    for (auto& c : r) c = c ? p - c : 0;
    ff_trim(r);
    return r;
}

std::vector<uint64_t> ff_mul(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    ff_trim(r);
    return r;
}

// remainder of a by monic m
std::vector<uint64_t> ff_mod(std::vector<uint64_t> a, const std::vector<uint64_t>& m, uint64_t p) {
    ff_trim(a);
    size_t dm = m.size() - 1;
    while (a.size() > dm) {
        uint64_t c = a.back();
        if (c == 0) {
            a.pop_back();
            continue;
        }
        size_t shift = a.size() - 1 - dm;
        for (size_t i = 0; i <= dm; ++i) {
            uint64_t sub = (c * m[i]) % p;
            a[i + shift] = (a[i + shift] + p - sub) % p;
        }
        ff_trim(a);
    }
    return a;
}

// inverse of a mod monic irreducible m (extended Euclid in F_p[x])
std::vector<uint64_t> ff_poly_inverse(std::vector<uint64_t> a, std::vector<uint64_t> m, uint64_t p) {
    std::vector<uint64_t> r0 = m, r1 = a, s0 = {}, s1 = {1};
    ff_trim(r1);
    if (r1.empty()) throw std::domain_error("finite field: inverse of zero");
    while (!r1.empty()) {
        // q, r of r0 / r1
        std::vector<uint64_t> q, rem = r0;
        ff_trim(rem);
        size_t d1 = r1.size() - 1;
        uint64_t lc_inv = mod_inverse(r1.back(), p);
        if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
            uint64_t c = (rem.back() * lc_inv) % p;
            size_t shift = rem.size() - 1 - d1;
            q[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i) {
                uint64_t sub = (c * r1[i]) % p;
                rem[i + shift] = (rem[i + shift] + p - sub) % p;
            }
            ff_trim(rem);
        }
        std::vector<uint64_t> s2 = ff_add(s0, ff_neg(ff_mul(q, s1, p), p), p);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    // r0 is a nonzero constant gcd
    uint64_t inv = mod_inverse(r0[0], p);
    for (auto& c : s0) c = (c * inv) % p;
    ff_trim(s0);
    return ff_mod(std::move(s0), m, p);
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(FieldPtr base, std::vector<Element> coeffs)
    : base_(std::move(base)), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
        if (!same_field(c.field(), base_)) throw std::invalid_argument("polynomial: coefficient field mismatch");
    normalize();
}

void Polynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const FieldPtr& base, const Element& c) {
    return Polynomial(base, std::vector<Element>{c});
}

Polynomial Polynomial::variable(const FieldPtr& base) {
    return Polynomial(base, {Element::zero(base), Element::one(base)});
}

Polynomial Polynomial::from_int_coeffs(const FieldPtr& base, const std::vector<long long>& coeffs) {
    std::vector<Element> cs;
    cs.reserve(coeffs.size());
    for (long long c : coeffs) cs.push_back(Element::from_integer(base, BigInt(c)));
    return Polynomial(base, std::move(cs));
}

Element Polynomial::coeff(size_t i) const {
    if (i >= coeffs_.size()) return Element::zero(base_);
    return coeffs_[i];
}

const Element& Polynomial::leading() const {
    if (coeffs_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return coeffs_.back();
}

bool Polynomial::is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }

Polynomial Polynomial::monic() const {
    if (is_zero()) throw std::domain_error("monic: zero polynomial");
    return scale(leading().inverse());
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Element> r(std::max(a.coeffs_.size(), b.coeffs_.size()), Element::zero(a.base_));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.coeffs_.size()) r[i] = r[i] + a.coeffs_[i];
        if (i < b.coeffs_.size()) r[i] = r[i] + b.coeffs_[i];
    }
    return Polynomial(a.base_, std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial Polynomial::operator-() const {
    std::vector<Element> r;
    r.reserve(coeffs_.size());
    for (const auto& c : coeffs_) r.push_back(-c);
    return Polynomial(base_, std::move(r));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial(a.base_);
    std::vector<Element> r(a.coeffs_.size() + b.coeffs_.size() - 1, Element::zero(a.base_));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] = r[i + j] + a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(a.base_, std::move(r));
}

Polynomial Polynomial::scale(const Element& c) const {
    std::vector<Element> r;
    r.reserve(coeffs_.size());
    for (const auto& x : coeffs_) r.push_back(x * c);
    return Polynomial(base_, std::move(r));
}

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    q = Polynomial(a.base_);
    r = a;
    if (a.degree() < b.degree()) return;
    std::vector<Element> qc(a.degree() - b.degree() + 1, Element::zero(a.base_));
    Element lb_inv = b.leading().inverse();
    std::vector<Element> rc = r.coeffs_;
    while (static_cast<int>(rc.size()) - 1 >= b.degree() && !rc.empty()) {
        Element c = rc.back() * lb_inv;
        size_t shift = rc.size() - 1 - b.degree();
        qc[shift] = c;
        for (size_t i = 0; i < b.coeffs_.size(); ++i) rc[i + shift] = rc[i + shift] - c * b.coeffs_[i];
        while (!rc.empty() && rc.back().is_zero()) rc.pop_back();
    }
    q = Polynomial(a.base_, std::move(qc));
    r = Polynomial(a.base_, std::move(rc));
}

Polynomial operator%(const Polynomial& a, const Polynomial& b) {
    Polynomial q, r;
    Polynomial::divmod(a, b, q, r);
    return r;
}

Polynomial operator/(const Polynomial& a, const Polynomial& b) {
    Polynomial q, r;
    Polynomial::divmod(a, b, q, r);
    return q;
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a % b;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.monic();
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial(base_);
    std::vector<Element> r;
    r.reserve(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i)
        r.push_back(coeffs_[i] * Element::from_integer(base_, BigInt(static_cast<long long>(i))));
    return Polynomial(base_, std::move(r));
}

Element Polynomial::eval(const Element& x) const {
    Element acc = Element::zero(base_);
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

Element Polynomial::eval_mapped(const Element& x, const std::function<Element(const Element&)>& lift) const {
    Element acc = Element::zero(x.field());
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + lift(coeffs_[i]);
    return acc;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
}

std::string Polynomial::key() const {
    std::string s = "P" + std::to_string(coeffs_.size());
    for (const auto& c : coeffs_) {
        std::string k = c.key();
        s += ":" + std::to_string(k.size()) + "#" + k;
    }
    return s;
}

std::string Polynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i].is_zero()) continue;
        std::string term;
        std::string c = coeffs_[i].to_string();
        if (i == 0) {
            term = c;
        } else {
            std::string x = i == 1 ? var : var + "^" + std::to_string(i);
            term = c == "1" ? x : (c == "-1" ? "-" + x : c + "*" + x);
        }
        if (s.empty())
            s = term;
        else if (!term.empty() && term[0] == '-')
            s += " - " + term.substr(1);
        else
            s += " + " + term;
    }
    return s;
}

int poly_multiplicity(const Polynomial& p, const Polynomial& factor) {
    if (p.is_zero()) throw std::domain_error("poly_multiplicity: zero polynomial");
    int m = 0;
    Polynomial cur = p;
    for (;;) {
        Polynomial q, r;
        Polynomial::divmod(cur, factor, q, r);
        if (!r.is_zero()) return m;
        cur = q;
        ++m;
    }
}

// ---------------------------------------------------------------------------
// Element

Element Element::zero(const FieldPtr& f) {
    Element e;
    e.field_ = f;
    switch (f->kind()) {
        case Field::Kind::Rationals: e.rat_ = Rational(0); break;
        case Field::Kind::Finite: break;  // empty coords
        case Field::Kind::RationalFunction:
            e.rf_ = std::make_shared<const RatFuncRep>(RatFuncRep{
                Polynomial(f->base()), Polynomial::constant(f->base(), Element::one(f->base()))});
            break;
        case Field::Kind::FiniteExtension:
            e.alg_ = std::make_shared<const AlgRep>(AlgRep{Polynomial(f->base())});
            break;
        default: throw NotComputableError("no element carrier for field " + f->to_string());
    }
    return e;
}

Element Element::one(const FieldPtr& f) { return from_integer(f, BigInt(1)); }

Element Element::from_integer(const FieldPtr& f, const BigInt& n) {
    switch (f->kind()) {
        case Field::Kind::Rationals: return rational(Rational(n));
        case Field::Kind::Finite: {
            BigInt m = n % BigInt(static_cast<long long>(f->prime()));
            long long v = m.to_int64();
            if (v < 0) v += static_cast<long long>(f->prime());
            return finite(f, {static_cast<uint64_t>(v)});
        }
        case Field::Kind::RationalFunction: {
            Element c = from_integer(f->base(), n);
            return rational_function(f, Polynomial::constant(f->base(), c),
                                     Polynomial::constant(f->base(), Element::one(f->base())));
        }
        case Field::Kind::FiniteExtension: {
            Element c = from_integer(f->base(), n);
            return algebraic(f, Polynomial::constant(f->base(), c));
        }
        default: throw NotComputableError("no element carrier for field " + f->to_string());
    }
}

Element Element::rational(const Rational& q) {
    Element e;
    e.field_ = Field::rationals();
    e.rat_ = q;
    return e;
}

Element Element::finite(const FieldPtr& f, const std::vector<uint64_t>& coords) {
    if (f->kind() != Field::Kind::Finite) throw std::invalid_argument("finite: wrong field kind");
    Element e;
    e.field_ = f;
    std::vector<uint64_t> c = coords;
    for (auto& x : c) x %= f->prime();
    if (c.size() >= f->exponent() + 1u || (f->exponent() == 1 && c.size() > 1))
        c = ff_mod(std::move(c), f->modulus(), f->prime());
    ff_trim(c);
    e.ff_ = std::move(c);
    return e;
}

Element Element::rational_function(const FieldPtr& f, Polynomial num, Polynomial den) {
    if (f->kind() != Field::Kind::RationalFunction)
        throw std::invalid_argument("rational_function: wrong field kind");
    if (den.is_zero()) throw std::domain_error("rational function: zero denominator");
    if (num.is_zero()) return zero(f);
    Polynomial g = Polynomial::gcd(num, den);
    if (g.degree() > 0) {
        num = num / g;
        den = den / g;
    }
    Element lc_inv = den.leading().inverse();
    num = num.scale(lc_inv);
    den = den.scale(lc_inv);
    Element e;
    e.field_ = f;
    e.rf_ = std::make_shared<const RatFuncRep>(RatFuncRep{std::move(num), std::move(den)});
    return e;
}

Element Element::algebraic(const FieldPtr& f, Polynomial rep) {
    if (f->kind() != Field::Kind::FiniteExtension) throw std::invalid_argument("algebraic: wrong field kind");
    if (rep.degree() >= f->defining_poly().degree()) rep = rep % f->defining_poly();
    Element e;
    e.field_ = f;
    e.alg_ = std::make_shared<const AlgRep>(AlgRep{std::move(rep)});
    return e;
}

Element Element::generator(const FieldPtr& f) {
    switch (f->kind()) {
        case Field::Kind::RationalFunction:
            return rational_function(f, Polynomial::variable(f->base()),
                                     Polynomial::constant(f->base(), Element::one(f->base())));
        case Field::Kind::FiniteExtension:
            return algebraic(f, Polynomial::variable(f->base()));
        case Field::Kind::Finite:
            if (f->exponent() == 1) throw std::logic_error("generator: prime field has none");
            return finite(f, {0, 1});
        default: throw std::logic_error("generator: field has no distinguished generator");
    }
}

bool Element::is_zero() const {
    if (!field_) throw std::logic_error("uninitialized element");
    switch (field_->kind()) {
        case Field::Kind::Rationals: return rat_.is_zero();
        case Field::Kind::Finite: return ff_.empty();
        case Field::Kind::RationalFunction: return rf_->num.is_zero();
        case Field::Kind::FiniteExtension: return alg_->rep.is_zero();
        default: return false;
    }
}

bool Element::is_one() const {
    switch (field_->kind()) {
        case Field::Kind::Rationals: return rat_.is_one();
        case Field::Kind::Finite: return ff_.size() == 1 && ff_[0] == 1;
        case Field::Kind::RationalFunction:
            return rf_->num.degree() == 0 && rf_->den.degree() == 0 && rf_->num.coeff(0).is_one();
        case Field::Kind::FiniteExtension:
            return alg_->rep.degree() == 0 && alg_->rep.coeff(0).is_one();
        default: return false;
    }
}

const Polynomial& Element::rf_num() const { return rf_->num; }
const Polynomial& Element::rf_den() const { return rf_->den; }
const Polynomial& Element::alg_rep() const { return alg_->rep; }

Element operator+(const Element& a, const Element& b) {
    if (!same_field(a.field_, b.field_)) throw std::invalid_argument("element +: field mismatch");
    const FieldPtr& f = a.field_;
    switch (f->kind()) {
        case Field::Kind::Rationals: return Element::rational(a.rat_ + b.rat_);
        case Field::Kind::Finite: return Element::finite(f, ff_add(a.ff_, b.ff_, f->prime()));
        case Field::Kind::RationalFunction:
            return Element::rational_function(f, a.rf_->num * b.rf_->den + b.rf_->num * a.rf_->den,
                                              a.rf_->den * b.rf_->den);
        case Field::Kind::FiniteExtension:
            return Element::algebraic(f, a.alg_->rep + b.alg_->rep);
        default: throw NotComputableError("element arithmetic unavailable over " + f->to_string());
    }
}

Element operator-(const Element& a, const Element& b) { return a + (-b); }

Element Element::operator-() const {
    switch (field_->kind()) {
        case Field::Kind::Rationals: return rational(-rat_);
        case Field::Kind::Finite: return finite(field_, ff_neg(ff_, field_->prime()));
        case Field::Kind::RationalFunction:
            return rational_function(field_, -rf_->num, rf_->den);
        case Field::Kind::FiniteExtension: return algebraic(field_, -alg_->rep);
        default: throw NotComputableError("element arithmetic unavailable over " + field_->to_string());
    }
}

Element operator*(const Element& a, const Element& b) {
    if (!same_field(a.field_, b.field_)) throw std::invalid_argument("element *: field mismatch");
    const FieldPtr& f = a.field_;
    switch (f->kind()) {
        case Field::Kind::Rationals: return Element::rational(a.rat_ * b.rat_);
        case Field::Kind::Finite: {
            auto prod = ff_mul(a.ff_, b.ff_, f->prime());
            return Element::finite(f, ff_mod(std::move(prod), f->modulus(), f->prime()));
        }
        case Field::Kind::RationalFunction:
            return Element::rational_function(f, a.rf_->num * b.rf_->num, a.rf_->den * b.rf_->den);
        case Field::Kind::FiniteExtension:
            return Element::algebraic(f, a.alg_->rep * b.alg_->rep);
        default: throw NotComputableError("element arithmetic unavailable over " + f->to_string());
    }
}

Element Element::inverse() const {
    if (is_zero()) throw std::domain_error("element: inverse of zero");
    switch (field_->kind()) {
        case Field::Kind::Rationals: return rational(rat_.inverse());
        case Field::Kind::Finite:
            return finite(field_, ff_poly_inverse(ff_, field_->modulus(), field_->prime()));
        case Field::Kind::RationalFunction:
            return rational_function(field_, rf_->den, rf_->num);
        case Field::Kind::FiniteExtension: {
            // extended Euclid in base[x] against the defining polynomial
            const Polynomial& m = field_->defining_poly();
            Polynomial r0 = m, r1 = alg_->rep;
            Polynomial s0(field_->base()), s1 = Polynomial::constant(field_->base(), Element::one(field_->base()));
            while (!r1.is_zero()) {
                Polynomial q, rem;
                Polynomial::divmod(r0, r1, q, rem);
                Polynomial s2 = s0 - q * s1;
                r0 = r1;
                r1 = rem;
                s0 = s1;
                s1 = s2;
            }
            if (r0.degree() != 0)
                throw std::domain_error("finite extension: element not invertible (reducible modulus?)");
            return algebraic(field_, s0.scale(r0.coeff(0).inverse()));
        }
        default: throw NotComputableError("element arithmetic unavailable over " + field_->to_string());
    }
}

Element operator/(const Element& a, const Element& b) { return a * b.inverse(); }

Element Element::pow(const BigInt& e) const {
    if (e.is_negative()) return inverse().pow(-e);
    Element r = one(field_), b = *this;
    BigInt n = e;
    const BigInt two(2);
    while (!n.is_zero()) {
        if (!(n % two).is_zero()) r = r * b;
        b = b * b;
        n = n / two;
    }
    return r;
}

bool operator==(const Element& a, const Element& b) {
    if (!same_field(a.field_, b.field_)) return false;
    switch (a.field_->kind()) {
        case Field::Kind::Rationals: return a.rat_ == b.rat_;
        case Field::Kind::Finite: return a.ff_ == b.ff_;
        case Field::Kind::RationalFunction:
            return a.rf_->num == b.rf_->num && a.rf_->den == b.rf_->den;
        case Field::Kind::FiniteExtension: return a.alg_->rep == b.alg_->rep;
        default: return false;
    }
}

std::string Element::key() const {
    switch (field_->kind()) {
        case Field::Kind::Rationals: return "q" + rat_.to_string();
        case Field::Kind::Finite: {
            std::string s = "f";
            for (auto c : ff_) s += "," + std::to_string(c);
            return s;
        }
        case Field::Kind::RationalFunction: return "r[" + rf_->num.key() + "/" + rf_->den.key() + "]";
        case Field::Kind::FiniteExtension: return "a[" + alg_->rep.key() + "]";
        default: return "?";
    }
}

std::string Element::to_string() const {
    switch (field_->kind()) {
        case Field::Kind::Rationals: return rat_.to_string();
        case Field::Kind::Finite: {
            if (ff_.empty()) return "0";
            if (field_->exponent() == 1) return std::to_string(ff_[0]);
            Polynomial rep = Polynomial::from_int_coeffs(
                Field::rationals(), std::vector<long long>(ff_.begin(), ff_.end()));
            return rep.to_string("g");
        }
        case Field::Kind::RationalFunction: {
            const std::string& v = field_->variable();
            std::string n = rf_->num.to_string(v);
            if (rf_->den.degree() == 0 && rf_->den.coeff(0).is_one()) return n;
            bool paren_n = rf_->num.degree() > 0;
            bool paren_d = rf_->den.degree() > 0;
            return (paren_n ? "(" + n + ")" : n) + "/" +
                   (paren_d ? "(" + rf_->den.to_string(v) + ")" : rf_->den.to_string(v));
        }
        case Field::Kind::FiniteExtension: return alg_->rep.to_string("x");
        default: return "?";
    }
}

}  // namespace rostforge
