#include "rostforge/field.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "rostforge/element.hpp"
#include "rostforge/fieldext.hpp"

namespace rostforge {

namespace {

// Lexicographically least monic irreducible of degree e over F_p,
// scanning constant-first coefficient tuples. Trial division suffices
// at the field sizes this kernel handles.
std::vector<uint64_t> find_ff_modulus(uint64_t p, unsigned e) {
    if (e == 1) return {0, 1};  // x
    FieldPtr fp = Field::finite(p, 1);
    std::vector<uint64_t> c(e, 0);
    for (;;) {
        std::vector<Element> coeffs;
        for (unsigned i = 0; i < e; ++i) coeffs.push_back(Element::finite(fp, {c[i]}));
        coeffs.push_back(Element::one(fp));
        Polynomial cand(fp, coeffs);
        if (poly_is_irreducible_over_finite(cand)) {
            std::vector<uint64_t> m = c;
            m.push_back(1);
            return m;
        }
        unsigned i = 0;
        while (i < e && ++c[i] == p) c[i++] = 0;
        if (i == e) throw std::logic_error("no irreducible modulus found");
    }
}

}  // namespace

FieldPtr Field::rationals() {
    static FieldPtr q = [] {
        auto f = std::shared_ptr<Field>(new Field());
        f->kind_ = Kind::Rationals;
        return FieldPtr(f);
    }();
    return q;
}

FieldPtr Field::finite(uint64_t p, unsigned e) {
    if (p < 2 || p >= (1ull << 31)) throw std::invalid_argument("finite field: prime out of range");
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("finite field: characteristic not prime");
    if (e < 1 || e > 12) throw std::invalid_argument("finite field: exponent out of range");

    static std::map<std::pair<uint64_t, unsigned>, FieldPtr> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({p, e});
        if (it != cache.end()) return it->second;
    }
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::Finite;
    f->prime_ = p;
    f->ext_e_ = e;
    // modulus search constructs the degree-1 field; do it unlocked
    f->ff_modulus_ = find_ff_modulus(p, e);
    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.emplace(std::make_pair(p, e), f);
    return it->second;
}

FieldPtr Field::number_field(unsigned degree, unsigned r1, unsigned r2, std::string label) {
    if (degree < 1) throw std::invalid_argument("number field: degree must be positive");
    if (r1 + 2 * r2 != degree)
        throw std::invalid_argument("number field: signature violates r1 + 2*r2 = degree");
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::Number;
    f->nf_degree_ = degree;
    f->nf_r1_ = r1;
    f->nf_r2_ = r2;
    f->label_ = std::move(label);
    return f;
}

FieldPtr Field::rational_function(FieldPtr base, std::vector<std::string> vars) {
    if (!base) throw std::invalid_argument("rational function field: null base");
    if (vars.empty()) throw std::invalid_argument("rational function field: no variables");
    FieldPtr cur = std::move(base);
    for (auto& v : vars) {
        if (v.empty()) throw std::invalid_argument("rational function field: empty variable name");
        auto f = std::shared_ptr<Field>(new Field());
        f->kind_ = Kind::RationalFunction;
        f->base_ = cur;
        f->var_ = v;
        cur = f;
    }
    return cur;
}

FieldPtr Field::finite_extension(FieldPtr base, Polynomial defining, std::string label) {
    if (!base) throw std::invalid_argument("finite extension: null base");
    if (!same_field(defining.base(), base))
        throw std::invalid_argument("finite extension: defining polynomial over wrong base");
    if (defining.degree() < 1) throw std::invalid_argument("finite extension: constant defining polynomial");
    if (!defining.is_monic()) defining = defining.monic();
    switch (check_irreducible(defining)) {
        case Irreducibility::No:
            throw std::invalid_argument("finite extension: defining polynomial is reducible");
        case Irreducibility::Yes:
        case Irreducibility::Unknown:
            break;  // accepted; Unknown only arises past the exact test range
    }
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::FiniteExtension;
    f->base_ = std::move(base);
    f->defining_ = std::make_shared<const Polynomial>(std::move(defining));
    f->ext_e_ = static_cast<unsigned>(f->defining_->degree());
    f->label_ = std::move(label);
    return f;
}

FieldPtr Field::declared(std::string name, bool uncountable, bool infinite_trdeg) {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::Declared;
    f->label_ = std::move(name);
    f->declared_uncountable_ = uncountable;
    f->declared_inf_trdeg_ = infinite_trdeg;
    return f;
}

uint64_t Field::characteristic() const {
    switch (kind_) {
        case Kind::Finite: return prime_;
        case Kind::RationalFunction:
        case Kind::FiniteExtension: return base_->characteristic();
        default: return 0;
    }
}

std::optional<unsigned> Field::transcendence_degree() const {
    switch (kind_) {
        case Kind::Rationals:
        case Kind::Finite:
        case Kind::Number: return 0u;
        case Kind::RationalFunction: {
            auto b = base_->transcendence_degree();
            if (!b) return std::nullopt;
            return *b + 1;
        }
        case Kind::FiniteExtension: return base_->transcendence_degree();
        case Kind::Declared:
            if (declared_inf_trdeg_) return std::nullopt;
            return 0u;
    }
    return 0u;
}

uint64_t Field::order() const {
    if (kind_ != Kind::Finite) throw std::logic_error("order: not a finite field");
    uint64_t q = 1;
    for (unsigned i = 0; i < ext_e_; ++i) q *= prime_;
    return q;
}

const Polynomial& Field::defining_poly() const {
    if (!defining_) throw std::logic_error("defining_poly: not a finite extension");
    return *defining_;
}

bool Field::equals(const Field& other) const {
    if (this == &other) return true;
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::Rationals: return true;
        case Kind::Finite: return prime_ == other.prime_ && ext_e_ == other.ext_e_;
        case Kind::Number:
            return nf_degree_ == other.nf_degree_ && nf_r1_ == other.nf_r1_ &&
                   nf_r2_ == other.nf_r2_ && label_ == other.label_;
        case Kind::RationalFunction:
            return var_ == other.var_ && base_->equals(*other.base_);
        case Kind::FiniteExtension:
            return base_->equals(*other.base_) && *defining_ == *other.defining_;
        case Kind::Declared:
            return label_ == other.label_ && declared_uncountable_ == other.declared_uncountable_ &&
                   declared_inf_trdeg_ == other.declared_inf_trdeg_;
    }
    return false;
}

bool Field::has_carrier() const {
    switch (kind_) {
        case Kind::Rationals:
        case Kind::Finite: return true;
        case Kind::RationalFunction:
        case Kind::FiniteExtension: return base_->has_carrier();
        default: return false;
    }
}

std::string Field::to_string() const {
    switch (kind_) {
        case Kind::Rationals: return "Q";
        case Kind::Finite:
            return ext_e_ == 1 ? "F" + std::to_string(prime_)
                               : "F" + std::to_string(prime_) + "^" + std::to_string(ext_e_);
        case Kind::Number:
            if (!label_.empty()) return label_;
            return "NF(" + std::to_string(nf_degree_) + "," + std::to_string(nf_r1_) + "," +
                   std::to_string(nf_r2_) + ")";
        case Kind::RationalFunction: return base_->to_string() + "(" + var_ + ")";
        case Kind::FiniteExtension:
            if (!label_.empty()) return label_;
            return base_->to_string() + "[" + defining_->to_string("x") + "]";
        case Kind::Declared: return label_;
    }
    return "?";
}

std::string Field::key() const {
    switch (kind_) {
        case Kind::Rationals: return "Q";
        case Kind::Finite: return "F" + std::to_string(prime_) + "e" + std::to_string(ext_e_);
        case Kind::Number:
            return "N" + std::to_string(nf_degree_) + "," + std::to_string(nf_r1_) + "," +
                   std::to_string(nf_r2_) + "," + label_;
        case Kind::RationalFunction: return "R(" + base_->key() + ";" + var_ + ")";
        case Kind::FiniteExtension: return "E(" + base_->key() + ";" + defining_->key() + ")";
        case Kind::Declared:
            return "D(" + label_ + (declared_uncountable_ ? ",u" : "") +
                   (declared_inf_trdeg_ ? ",i" : "") + ")";
    }
    return "?";
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->equals(*b);
}

}  // namespace rostforge
