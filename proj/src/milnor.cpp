#include "rostforge/milnor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "rostforge/errors.hpp"
#include "rostforge/fieldext.hpp"
#include "rostforge/points.hpp"

namespace rostforge {

namespace {

std::string symbol_key(const std::vector<Element>& entries) {
    std::string s;
    for (const auto& e : entries) {
        std::string k = e.key();
        s += std::to_string(k.size()) + "#" + k + ";";
    }
    return s;
}

// Orientation of an entry: {.., u, ..} = -{.., 1/u, ..}, so each entry is
// normalized to a preferred representative: lower denominator degree for
// rational functions, then the shorter (then lexicographically smaller)
// key. Keeps polynomials and integers over their reciprocals.
bool prefers_inverse(const Element& u, const Element& inv) {
    if (u.field()->kind() == Field::Kind::RationalFunction) {
        int du = u.rf_den().degree(), di = inv.rf_den().degree();
        if (du != di) return di < du;
    }
    std::string ku = u.key(), ki = inv.key();
    if (ku.size() != ki.size()) return ki.size() < ku.size();
    return ki < ku;
}

// Zero test for an entry pair, closed under inverse orientation:
// {u,-u} and {u,1-u} kill, and {u,-1} = {u,u} kills whenever {u,u} does.
bool pair_kills(const Element& x, const Element& y, const Element& minus_one) {
    const Element cx[2] = {x, x.inverse()};
    const Element cy[2] = {y, y.inverse()};
    for (const auto& a : cx)
        for (const auto& b : cy) {
            Element s = a + b;
            if (s.is_zero() || s.is_one()) return true;
        }
    for (const auto* p : {&x, &y}) {
        if (!(*p == minus_one)) continue;
        const Element& other = (p == &x) ? y : x;
        for (const auto& o : {other, other.inverse()}) {
            Element d = o + o;
            if (d.is_zero() || d.is_one()) return true;
        }
    }
    return false;
}

// Canonical form of a single symbol. Returns false when the symbol is the
// zero class; may flip or reduce the coefficient.
bool canonicalize_symbol(const FieldPtr& f, std::vector<Element>& e, BigInt& coeff) {
    const Element minus_one = e.empty() ? Element() : -Element::one(f);
    for (const auto& x : e)
        if (x.is_zero()) throw std::invalid_argument("milnor symbol: zero entry");
    // K^M_n(F_q) = 0 for n >= 2: over finite fields the symbol calculus is
    // complete, so higher symbols normalize to zero outright
    if (e.size() >= 2 && f->is_finite()) return false;
    for (;;) {
        for (auto& x : e) {
            Element inv = x.inverse();
            if (prefers_inverse(x, inv)) {
                x = inv;
                coeff = -coeff;
            }
        }
        for (const auto& x : e)
            if (x.is_one()) return false;
        for (size_t i = 0; i < e.size(); ++i)
            for (size_t j = i + 1; j < e.size(); ++j)
                if (pair_kills(e[i], e[j], minus_one)) return false;
        // perfect powers split off in degrees >= 2: {.., r^k, ..} =
        // k{.., r, ..}; powers enter through the K_1 collapse and hide
        // torsion otherwise (degree 1 keeps the collapsed form)
        bool rewrote = false;
        if (e.size() >= 2)
            for (auto& x : e) {
                if (x == minus_one) continue;
                if (auto pp = try_perfect_power(x)) {
                    x = pp->first;
                    coeff = coeff * BigInt(pp->second);
                    rewrote = true;
                    break;
                }
                if (auto s = try_sqrt(x)) {
                    if (!(*s == x) && !s->is_one()) {
                        x = *s;
                        coeff = coeff * BigInt(2);
                        rewrote = true;
                        break;
                    }
                }
            }
        if (rewrote) continue;
        // power pairs: {u, u^k} = k{u,-1} and {u, -u^k} = (k+1){u,-1};
        // powers of entries enter through the K_1 collapse
        for (size_t i = 0; i < e.size() && !rewrote; ++i)
            for (size_t j = 0; j < e.size() && !rewrote; ++j) {
                if (i == j || e[i] == minus_one || e[j] == minus_one) continue;
                const Element& base = e[i];
                Element p = base;
                for (int k = 1; k <= 12 && !rewrote; ++k) {
                    if (e[j] == -p) {
                        e[j] = minus_one;
                        coeff = coeff * BigInt(k + 1);
                        rewrote = true;
                    } else if (e[j] == p && (k >= 2 || j > i)) {
                        // k = 1 is the plain {u,u} torsion rewrite
                        e[j] = minus_one;
                        coeff = coeff * BigInt(k);
                        rewrote = true;
                    }
                    p = p * base;
                }
            }
        if (rewrote) continue;
        // insertion sort by canonical key, each adjacent swap flips the sign
        for (size_t i = 1; i < e.size(); ++i)
            for (size_t j = i; j > 0 && e[j].key() < e[j - 1].key(); --j) {
                std::swap(e[j], e[j - 1]);
                coeff = -coeff;
            }
        break;
    }
    // symbols containing -1 are 2-torsion
    if (!e.empty()) {
        bool has_minus_one = std::any_of(e.begin(), e.end(),
                                         [&](const Element& x) { return x == minus_one; });
        if (has_minus_one) {
            BigInt two(2), m = coeff % two;
            if (m.is_zero()) return false;
            coeff = BigInt(1);
        }
    }
    return true;
}

}  // namespace

MilnorClass raw_combination(const FieldPtr& f, int degree,
                            std::vector<std::pair<std::vector<Element>, BigInt>> terms) {
    MilnorClass c;
    c.field_ = f;
    c.degree_ = degree;
    for (auto& [entries, coeff] : terms) c.add_term(std::move(entries), std::move(coeff));
    c.collapse_low_degree();
    return c;
}

MilnorClass MilnorClass::zero(const FieldPtr& f, int degree) {
    MilnorClass c;
    c.field_ = f;
    c.degree_ = degree;
    return c;
}

MilnorClass MilnorClass::integer(const FieldPtr& f, const BigInt& n) {
    return raw_combination(f, 0, {{{}, n}});
}

MilnorClass MilnorClass::unit(const FieldPtr& f) { return integer(f, BigInt(1)); }

MilnorClass MilnorClass::symbol(const FieldPtr& f, const std::vector<Element>& entries) {
    for (const auto& e : entries)
        if (!same_field(e.field(), f)) throw std::invalid_argument("milnor symbol: entry field mismatch");
    return raw_combination(f, static_cast<int>(entries.size()), {{entries, BigInt(1)}});
}

void MilnorClass::add_term(std::vector<Element> entries, BigInt coeff) {
    if (coeff.is_zero()) return;
    if (static_cast<int>(entries.size()) != degree_)
        throw std::invalid_argument("milnor class: degree mismatch in term");
    if (!canonicalize_symbol(field_, entries, coeff)) return;
    if (coeff.is_zero()) return;
    std::string k = symbol_key(entries);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const auto& t, const std::string& key) { return symbol_key(t.first) < key; });
    if (it != terms_.end() && symbol_key(it->first) == k) {
        it->second += coeff;
        bool torsion = std::any_of(it->first.begin(), it->first.end(),
                                   [&](const Element& x) { return x == -Element::one(field_); });
        if (torsion && !(it->second % BigInt(2)).is_zero()) it->second = BigInt(1);
        else if (torsion) it->second = BigInt(0);
        if (it->second.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, {std::move(entries), std::move(coeff)});
    }
}

void MilnorClass::collapse_low_degree() {
    if (degree_ == 0) {
        BigInt total(0);
        for (const auto& [e, c] : terms_) total += c;
        terms_.clear();
        if (!total.is_zero()) terms_.push_back({{}, total});
        return;
    }
    if (degree_ == 1) {
        // K_1 = F^x exactly; fold the combination into one unit
        if (terms_.empty()) return;
        Element u = Element::one(field_);
        for (const auto& [e, c] : terms_) u = u * e[0].pow(c);
        terms_.clear();
        if (!u.is_one()) terms_.push_back({{u}, BigInt(1)});
        return;
    }
    merge_slots();
}

// Multiplicative normalization in degrees >= 2: fold terms whose symbols
// share all entries but one, c{R,x} + c'{R,y} = {R, x^c y^c'}. Only ever
// multiplies entries, never factors them.
void MilnorClass::merge_slots() {
    const BigInt one_c(1);
    for (;;) {
        bool changed = false;
        // merge a pair of terms sharing all but one entry as multisets
        for (size_t i = 0; i < terms_.size() && !changed; ++i)
            for (size_t j = i + 1; j < terms_.size() && !changed; ++j) {
                const auto& [ea, ca] = terms_[i];
                const auto& [eb, cb] = terms_[j];
                // find the common (n-1)-sub-multiset, if any
                std::vector<Element> rest;
                size_t ia = ea.size(), ib = eb.size();
                {
                    std::vector<bool> used(eb.size(), false);
                    std::vector<size_t> match(ea.size(), SIZE_MAX);
                    for (size_t x = 0; x < ea.size(); ++x)
                        for (size_t y = 0; y < eb.size(); ++y)
                            if (!used[y] && ea[x] == eb[y]) {
                                used[y] = true;
                                match[x] = y;
                                break;
                            }
                    size_t unmatched_a = 0;
                    for (size_t x = 0; x < ea.size(); ++x)
                        if (match[x] == SIZE_MAX) {
                            ++unmatched_a;
                            ia = x;
                        }
                    size_t unmatched_b = 0;
                    for (size_t y = 0; y < eb.size(); ++y)
                        if (!used[y]) {
                            ++unmatched_b;
                            ib = y;
                        }
                    if (unmatched_a != 1 || unmatched_b != 1) continue;
                    for (size_t x = 0; x < ea.size(); ++x)
                        if (x != ia) rest.push_back(ea[x]);
                }
                // c{e} = c*(-1)^idx {x, rest}; exponents are the adjusted signs
                BigInt sa = (ia % 2 == 0) ? ca : -ca;
                BigInt sb = (ib % 2 == 0) ? cb : -cb;
                Element z = ea[ia].pow(sa) * eb[ib].pow(sb);
                BigInt cc = ca;  // consumed below
                (void)cc;
                auto keep = terms_;
                keep.erase(keep.begin() + static_cast<long>(j));
                keep.erase(keep.begin() + static_cast<long>(i));
                terms_ = std::move(keep);
                if (!z.is_zero()) {
                    std::vector<Element> merged{z};
                    merged.insert(merged.end(), rest.begin(), rest.end());
                    add_term(std::move(merged), one_c);
                }
                changed = true;
            }
        if (!changed) break;
    }
}

BigInt MilnorClass::degree0_value() const {
    if (degree_ != 0) throw std::logic_error("degree0_value: class has positive degree");
    return terms_.empty() ? BigInt(0) : terms_[0].second;
}

MilnorClass operator+(const MilnorClass& a, const MilnorClass& b) {
    if (!same_field(a.field_, b.field_) || a.degree_ != b.degree_)
        throw std::invalid_argument("milnor +: field or degree mismatch");
    MilnorClass r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    r.collapse_low_degree();
    return r;
}

MilnorClass operator-(const MilnorClass& a, const MilnorClass& b) { return a + (-b); }

MilnorClass MilnorClass::operator-() const { return scaled(BigInt(-1)); }

MilnorClass MilnorClass::scaled(const BigInt& c) const {
    MilnorClass r = zero(field_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.add_term(e, k * c);
    r.collapse_low_degree();
    return r;
}

bool operator==(const MilnorClass& a, const MilnorClass& b) {
    if (!same_field(a.field_, b.field_) || a.degree_ != b.degree_) return false;
    if (a.terms_ == b.terms_) return true;
    // distinct presentations may still merge against each other: subtracting
    // runs the slot-merge normalization across both term lists
    return (a - b).is_zero();
}

std::string MilnorClass::key() const {
    std::string s = "K" + std::to_string(degree_) + "@" + field_->key() + "|";
    for (const auto& [e, c] : terms_) s += c.to_string() + "*" + symbol_key(e) + "|";
    return s;
}

std::string MilnorClass::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        std::string sym;
        if (e.empty()) {
            sym = c.to_string();
        } else {
            sym = "{";
            for (size_t i = 0; i < e.size(); ++i) sym += (i ? ", " : "") + e[i].to_string();
            sym += "}";
            if (!c.is_one()) sym = c.to_string() + "*" + sym;
        }
        if (s.empty())
            s = sym;
        else if (!sym.empty() && sym[0] == '-')
            s += " - " + sym.substr(1);
        else
            s += " + " + sym;
    }
    return s;
}

MilnorClass canonicalize(const FieldPtr& f, const std::vector<Element>& raw) {
    return MilnorClass::symbol(f, raw);
}

MilnorClass product(const MilnorClass& a, const MilnorClass& b) {
    if (!same_field(a.field(), b.field())) throw std::invalid_argument("milnor product: field mismatch");
    std::vector<std::pair<std::vector<Element>, BigInt>> terms;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            std::vector<Element> e = ea;
            e.insert(e.end(), eb.begin(), eb.end());
            terms.push_back({std::move(e), ca * cb});
        }
    return raw_combination(a.field(), a.degree() + b.degree(), std::move(terms));
}

MilnorClass residue(const MilnorClass& x, const Valuation& v, TameSign sign) {
    if (!same_field(x.field(), v.field()))
        throw std::invalid_argument("residue: valuation is not on the class's field");
    FieldPtr kappa = v.residue_field();
    std::vector<std::pair<std::vector<Element>, BigInt>> out_terms;
    struct Slot {
        bool is_pi;
        Element unit;  // valid when !is_pi
    };
    for (const auto& [entries, coeff] : x.terms()) {
        // expand each entry as pi^a * u and multiply out
        std::vector<std::pair<BigInt, std::vector<Slot>>> partials{{coeff, {}}};
        for (const auto& entry : entries) {
            auto [a, u] = v.split(entry);
            std::vector<std::pair<BigInt, std::vector<Slot>>> next;
            for (auto& [c, slots] : partials) {
                if (a != 0) {
                    auto s = slots;
                    s.push_back({true, Element()});
                    next.push_back({c * BigInt(a), std::move(s)});
                }
                if (!u.is_one()) {
                    auto s = slots;
                    s.push_back({false, u});
                    next.push_back({c, std::move(s)});
                }
                // u == 1 contributes a symbol with an entry 1: drops
            }
            partials = std::move(next);
        }
        for (auto& [c, slots] : partials) {
            int pis = 0;
            for (const auto& s : slots) pis += s.is_pi ? 1 : 0;
            if (pis == 0) continue;  // all units: no residue
            // move every pi to the front (anticommutativity), then reduce
            // {pi,pi} = {pi,-1} until a single pi leads
            BigInt c2 = c;
            std::vector<Slot> seq = slots;
            for (;;) {
                int moved = 0;
                for (size_t i = 0; i < seq.size(); ++i) {
                    if (!seq[i].is_pi) continue;
                    size_t target = static_cast<size_t>(moved);
                    for (size_t j = i; j > target; --j) {
                        std::swap(seq[j], seq[j - 1]);
                        c2 = -c2;
                    }
                    ++moved;
                }
                bool merged = false;
                for (size_t i = 0; i + 1 < seq.size(); ++i)
                    if (seq[i].is_pi && seq[i + 1].is_pi) {
                        seq[i + 1] = {false, -Element::one(x.field())};  // {pi,pi} = {pi,-1}
                        merged = true;
                        break;
                    }
                if (!merged) break;
            }
            // now exactly one pi, in front
            std::vector<Element> reduced;
            reduced.reserve(seq.size() - 1);
            for (size_t i = 1; i < seq.size(); ++i) reduced.push_back(v.reduce_unit(seq[i].unit));
            out_terms.push_back({std::move(reduced), c2});
        }
    }
    MilnorClass out = raw_combination(kappa, x.degree() - 1, std::move(out_terms));
    if (sign == TameSign::Rost) out = -out;
    return out;
}

MilnorClass specialize(const MilnorClass& x, const Valuation& v, const Element& pi, TameSign sign) {
    if (v.valuation_of(pi) != 1) throw std::invalid_argument("specialize: element is not a uniformizer");
    MilnorClass minus_pi = MilnorClass::symbol(x.field(), {-pi});
    return residue(product(minus_pi, x), v, sign);
}

MilnorClass restrict_class(const MilnorClass& x, const FieldMorphism& phi) {
    if (!same_field(x.field(), phi.from()))
        throw std::invalid_argument("restrict_class: morphism source mismatch");
    std::vector<std::pair<std::vector<Element>, BigInt>> out_terms;
    for (const auto& [entries, coeff] : x.terms()) {
        std::vector<Element> mapped;
        mapped.reserve(entries.size());
        for (const auto& e : entries) mapped.push_back(phi.apply(e));
        out_terms.push_back({std::move(mapped), coeff});
    }
    return raw_combination(phi.to(), x.degree(), std::move(out_terms));
}

Element field_norm(const FieldMorphism& phi, const Element& y) {
    if (!same_field(y.field(), phi.to())) throw std::invalid_argument("field_norm: element field mismatch");
    const FieldPtr& E = phi.from();
    const FieldPtr& L = phi.to();
    if (phi.is_identity()) return y;
    auto deg = phi.finite_degree();
    if (!deg) throw NotComputableError("field_norm: morphism is not finite on the implemented carrier");
    if (*deg == 1) {
        // isomorphism: the norm is the inverse map; solve in the power basis
        if (L->kind() == Field::Kind::FiniteExtension && same_field(E, L)) {
            unsigned d = L->extension_degree();
            Element g = phi.image() ? *phi.image() : Element::generator(L);
            std::vector<std::vector<Element>> A(d, std::vector<Element>(d));
            std::vector<Element> b(d);
            Element p = Element::one(L);
            for (unsigned j = 0; j < d; ++j) {
                for (unsigned i = 0; i < d; ++i) A[i][j] = p.alg_rep().coeff(i);
                p = p * g;
            }
            for (unsigned i = 0; i < d; ++i) b[i] = y.alg_rep().coeff(i);
            auto sol = linear_solve(A, b);
            if (!sol) throw std::logic_error("field_norm: degree-1 morphism is not invertible");
            return Element::algebraic(E, Polynomial(E->base(), *sol));
        }
        if (same_field(E, L)) return y;
        throw NotComputableError("field_norm: unsupported degree-1 morphism");
    }
    // finite fields: norm is the (q_L-1)/(q_E-1) power map
    if (E->is_finite() && L->is_finite()) {
        uint64_t qe = E->order(), ql = L->order();
        Element n = y.pow(BigInt(static_cast<long long>((ql - 1) / (qe - 1))));
        if (y.is_zero()) n = Element::zero(L);
        for (const auto& cand : all_elements(E))
            if (embed(cand, L) == n) return cand;
        throw std::logic_error("field_norm: power norm left the subfield");
    }
    // one-step extension by a defining polynomial
    if (L->kind() == Field::Kind::FiniteExtension && !phi.image()) {
        if (same_field(E, L->base())) {
            return resultant(L->defining_poly(), y.alg_rep());
        }
        if (has_canonical_embedding(E, L->base())) {
            Element inner = resultant(L->defining_poly(), y.alg_rep());
            return field_norm(FieldMorphism::embedding(E, L->base()), inner);
        }
    }
    // variable substitution t -> m(s): resultant against m(X) - t
    if (E->kind() == Field::Kind::RationalFunction && L->kind() == Field::Kind::RationalFunction &&
        phi.image() && phi.image()->rf_den().degree() == 0 && same_field(E->base(), L->base())) {
        const Polynomial& m = phi.image()->rf_num();  // in s, coefficients in the common base
        // P(X) = m(X) - t over E = F(t)
        std::vector<Element> pc;
        for (int i = 0; i <= m.degree(); ++i) {
            Element ci = embed(m.coeff(static_cast<size_t>(i)), E);
            if (i == 0) ci = ci - Element::generator(E);
            pc.push_back(ci);
        }
        Polynomial P(E, std::move(pc));
        if (!P.leading().is_one()) P = P.monic();
        auto lift_num = [&](const Polynomial& h) {
            std::vector<Element> hc;
            for (int i = 0; i <= h.degree(); ++i) hc.push_back(embed(h.coeff(static_cast<size_t>(i)), E));
            return Polynomial(E, std::move(hc));
        };
        Element nn = resultant(P, lift_num(y.rf_num()));
        Element nd = resultant(P, lift_num(y.rf_den()));
        return nn / nd;
    }
    // scalar extension F(t) -> K(t) with K/F a one-step extension of a prime field
    if (E->kind() == Field::Kind::RationalFunction && L->kind() == Field::Kind::RationalFunction &&
        !phi.image() && E->variable() == L->variable() && L->base()->is_finite() &&
        E->base()->is_finite() && E->base()->exponent() == 1) {
        const FieldPtr& K = L->base();
        const FieldPtr& F = E->base();
        // view y as a polynomial in the generator of K with F(t) coefficients
        auto to_xpoly = [&](const Polynomial& h) {
            std::vector<std::vector<Element>> xc(K->exponent(), std::vector<Element>());
            for (int i = 0; i <= h.degree(); ++i) {
                auto coords = h.coeff(static_cast<size_t>(i)).ff();
                for (unsigned j = 0; j < K->exponent(); ++j) {
                    Element cj = Element::from_integer(F, BigInt(static_cast<long long>(
                                                              j < coords.size() ? coords[j] : 0)));
                    if (xc[j].size() <= static_cast<size_t>(i))
                        xc[j].resize(static_cast<size_t>(i) + 1, Element::zero(F));
                    xc[j][static_cast<size_t>(i)] = cj;
                }
            }
            std::vector<Element> xpoly_coeffs;
            for (unsigned j = 0; j < K->exponent(); ++j) {
                Polynomial pj(F, xc[j]);
                xpoly_coeffs.push_back(Element::rational_function(
                    E, pj, Polynomial::constant(F, Element::one(F))));
            }
            return Polynomial(E, std::move(xpoly_coeffs));
        };
        // modulus of K lifted to E[x]
        std::vector<Element> gc;
        for (auto c : K->modulus())
            gc.push_back(Element::from_integer(E, BigInt(static_cast<long long>(c))));
        Polynomial g(E, std::move(gc));
        Element nn = resultant(g, to_xpoly(y.rf_num()));
        Element nd = resultant(g, to_xpoly(y.rf_den()));
        return nn / nd;
    }
    throw NotComputableError("field_norm: unsupported extension " + E->to_string() + " -> " +
                             L->to_string());
}

MilnorClass norm_class(const MilnorClass& x, const FieldMorphism& phi) {
    if (!same_field(x.field(), phi.to())) throw std::invalid_argument("norm_class: morphism target mismatch");
    auto deg = phi.finite_degree();
    if (!deg) throw NotComputableError("norm_class: morphism is not finite on the implemented carrier");
    if (x.is_zero()) return MilnorClass::zero(phi.from(), x.degree());
    if (x.degree() == 0) return MilnorClass::integer(phi.from(), x.degree0_value() * BigInt(*deg));
    if (x.degree() == 1) {
        MilnorClass out = MilnorClass::zero(phi.from(), 1);
        for (const auto& [entries, coeff] : x.terms()) {
            Element n = field_norm(phi, entries[0]);
            out = out + MilnorClass::symbol(phi.from(), {n}).scaled(coeff);
        }
        return out;
    }
    throw NotComputableError("norm_class: norms of degree >= 2 classes are kept symbolic");
}

MilnorClass weil_reciprocity_defect(const MilnorClass& x) {
    const FieldPtr& Ft = x.field();
    if (Ft->kind() != Field::Kind::RationalFunction || !Ft->base()->is_finite())
        throw std::invalid_argument("weil_reciprocity_defect: class must live over F_q(t)");
    if (x.degree() != 2) throw std::invalid_argument("weil_reciprocity_defect: degree-2 classes only");
    const FieldPtr& F = Ft->base();
    std::map<std::string, Valuation> support;
    for (const auto& [entries, coeff] : x.terms())
        for (const auto& e : entries)
            for (const Polynomial* part : {&e.rf_num(), &e.rf_den()})
                if (part->degree() > 0)
                    for (const auto& [fac, mult] : factor_poly(*part)) {
                        Valuation v = Valuation::point_of_line(Ft, fac);
                        support.emplace(v.key(), v);
                    }
    Valuation inf = Valuation::infinite_place(Ft);
    support.emplace(inf.key(), inf);
    MilnorClass total = MilnorClass::zero(F, 1);
    for (const auto& [k, v] : support) {
        MilnorClass r = residue(x, v);
        if (r.is_zero()) continue;
        FieldMorphism emb = FieldMorphism::embedding(F, v.residue_field());
        total = total + norm_class(r, emb);
    }
    return total;
}

KGroupReport kgroup_structure(const FieldPtr& f, int n, int bound) {
    KGroupReport rep;
    rep.bound = bound;
    if (n < 0) {
        rep.shape = KGroupReport::Shape::Zero;
        rep.description = "K^M_n vanishes in negative degrees";
        return rep;
    }
    if (n == 0) {
        rep.shape = KGroupReport::Shape::FreeZ;
        rep.description = "K^M_0 = Z";
        return rep;
    }
    if (f->is_finite()) {
        if (n == 1) {
            rep.shape = KGroupReport::Shape::Cyclic;
            rep.cyclic_order = BigInt(static_cast<long long>(f->order() - 1));
            rep.description = "K^M_1 = F_q^x, cyclic of order q-1";
        } else {
            rep.shape = KGroupReport::Shape::Zero;
            rep.description = "K^M_n(F_q) = 0 for n >= 2 (Steinberg closure kills all symbols)";
        }
        return rep;
    }
    if (f->is_rationals()) {
        if (n == 1) {
            rep.shape = KGroupReport::Shape::Split;
            rep.base_summand = "Z/2 (sign)";
            rep.description = "Q^x = {+-1} + free abelian on the primes";
            return rep;
        }
        if (n == 2) {
            rep.shape = KGroupReport::Shape::TameTarget;
            rep.description = "tame symbols map K^M_2(Q) onto the sum of F_p^x over primes p";
            for (long long p : {2ll, 3ll, 5ll, 7ll, 11ll, 13ll}) {
                if (static_cast<int>(rep.point_labels.size()) >= bound) {
                    rep.truncated = true;
                    break;
                }
                rep.point_labels.push_back("F" + std::to_string(p) + "^x");
            }
            return rep;
        }
        throw NotComputableError("kgroup_structure: K^M_" + std::to_string(n) +
                                 "(Q) is outside the implemented table");
    }
    if (f->kind() == Field::Kind::RationalFunction &&
        (f->base()->is_finite() || f->base()->is_rationals())) {
        // split exact sequence for F(t): K_n(F) + sum over closed points of K_{n-1}(kappa_x)
        rep.shape = KGroupReport::Shape::Split;
        KGroupReport base_rep = kgroup_structure(f->base(), n, bound);
        rep.base_summand = "K^M_" + std::to_string(n) + "(" + f->base()->to_string() + "): " +
                           base_rep.description;
        auto pts = closed_points(LineKind::Affine, f, bound);
        for (const auto& v : pts) {
            if (static_cast<int>(rep.point_labels.size()) >= 24) {
                rep.truncated = true;
                break;
            }
            rep.point_labels.push_back(v.to_string() + " -> K^M_" + std::to_string(n - 1) + "(" +
                                       v.residue_field()->to_string() + ")");
        }
        rep.truncated = true;  // the point list of A^1 is always a truncation
        rep.description = "K^M_n(F(t)) = K^M_n(F) + sum_x K^M_{n-1}(kappa_x), divisor part over closed points";
        return rep;
    }
    throw NotComputableError("kgroup_structure: unsupported field " + f->to_string());
}

K2ClosureReport k2_relation_closure(uint64_t q, int depth_cap) {
    K2ClosureReport rep;
    rep.q = q;
    // factor q to find (p, e)
    uint64_t p = 0, qq = q;
    for (uint64_t d = 2; d * d <= qq; ++d)
        if (qq % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q;
    unsigned e = 0;
    while (qq > 1) {
        qq /= p;
        ++e;
    }
    FieldPtr F = Field::finite(p, e);
    long long M = static_cast<long long>(q) - 1;
    if (M <= 1) {
        rep.all_zero = true;
        rep.residual_index = 1;
        rep.symbols_checked = 1;
        rep.passes = 0;
        return rep;
    }
    // discrete logarithms w.r.t. the least generator
    std::vector<Element> elems = all_elements(F);
    std::vector<Element> units;
    for (const auto& x : elems)
        if (!x.is_zero()) units.push_back(x);
    std::sort(units.begin(), units.end(), [](const Element& a, const Element& b) { return a.key() < b.key(); });
    Element gen;
    std::map<std::string, long long> dlog;
    for (const auto& g : units) {
        dlog.clear();
        Element cur = Element::one(F);
        bool ok = true;
        for (long long i = 0; i < M; ++i) {
            if (dlog.count(cur.key())) {
                ok = false;
                break;
            }
            dlog[cur.key()] = i;
            cur = cur * g;
        }
        if (ok && dlog.size() == static_cast<size_t>(M)) {
            gen = g;
            break;
        }
    }
    if (dlog.size() != static_cast<size_t>(M)) throw std::logic_error("k2 closure: no generator found");
    // iterative closure of the Steinberg subgroup d*Z/M, capped
    long long d = M;
    int pass = 0;
    for (; pass < depth_cap; ++pass) {
        long long before = d;
        for (const auto& u : units) {
            Element w = Element::one(F) - u;
            if (w.is_zero()) continue;  // u = 1
            long long s = (dlog.at(u.key()) * dlog.at(w.key())) % M;
            d = static_cast<long long>(BigInt::gcd(BigInt(d), BigInt(s)).to_int64());
        }
        if (d == before) break;
    }
    rep.passes = pass + 1;
    if (pass >= depth_cap) {
        rep.all_zero = false;
        rep.residual_index = d;
        return rep;  // closure did not stabilize within the cap
    }
    rep.residual_index = d;
    bool all = true;
    long long checked = 0;
    for (const auto& a : units)
        for (const auto& b : units) {
            ++checked;
            long long val = (dlog.at(a.key()) * dlog.at(b.key())) % M;
            if (val % rep.residual_index != 0) all = false;
        }
    rep.symbols_checked = checked;
    rep.all_zero = all && rep.residual_index == 1;
    if (M == 1) rep.all_zero = true;
    return rep;
}

}  // namespace rostforge
