#include "rostforge/cycle_complex.hpp"

#include <map>
#include <stdexcept>

#include "rostforge/errors.hpp"
#include "rostforge/fieldext.hpp"
#include "rostforge/points.hpp"

namespace rostforge {

SchemeModel SchemeModel::point(FieldPtr f) {
    SchemeModel m;
    m.kind = Kind::Point;
    m.field = std::move(f);
    return m;
}

SchemeModel SchemeModel::affine_line(FieldPtr line) {
    if (line->kind() != Field::Kind::RationalFunction)
        throw std::invalid_argument("affine_line: field is not F(t)");
    SchemeModel m;
    m.kind = Kind::AffineLine;
    m.field = std::move(line);
    return m;
}

SchemeModel SchemeModel::projective_line(FieldPtr line) {
    SchemeModel m = affine_line(std::move(line));
    m.kind = Kind::ProjectiveLine;
    return m;
}

SchemeModel SchemeModel::spec_ok(int prime_bound, unsigned r1, unsigned r2) {
    SchemeModel m;
    m.kind = Kind::SpecOK;
    m.field = Field::rationals();
    m.prime_bound = prime_bound;
    m.r1 = r1;
    m.r2 = r2;
    return m;
}

FieldPtr SchemeModel::generic_field() const { return field; }

std::vector<Valuation> SchemeModel::codim1_points(int bound) const {
    switch (kind) {
        case Kind::Point: return {};
        case Kind::AffineLine: return closed_points(LineKind::Affine, field, bound);
        case Kind::ProjectiveLine: return closed_points(LineKind::Projective, field, bound);
        case Kind::SpecOK: {
            std::vector<Valuation> out;
            for (long long p = 2; p <= std::max(bound, prime_bound); ++p) {
                bool prime = p >= 2;
                for (long long d = 2; d * d <= p; ++d)
                    if (p % d == 0) prime = false;
                if (prime) out.push_back(Valuation::finite_place(BigInt(p)));
            }
            return out;
        }
    }
    return {};
}

std::string SchemeModel::to_string() const {
    switch (kind) {
        case Kind::Point: return "Spec(" + field->to_string() + ")";
        case Kind::AffineLine: return "A^1 over " + field->base()->to_string();
        case Kind::ProjectiveLine: return "P^1 over " + field->base()->to_string();
        case Kind::SpecOK: return "Spec(O_K), primes <= " + std::to_string(prime_bound);
    }
    return "?";
}

CycleComplexLevel level0(SchemeModel X, int twist, CMValue value) {
    CycleComplexLevel l;
    l.model = std::move(X);
    l.codim = 0;
    l.twist = twist;
    l.generic_value = std::move(value);
    return l;
}

namespace {

// exact support of a Milnor class on a line over a finite field / on Spec Z
std::optional<std::vector<Valuation>> exact_support(const MilnorClass& x, const SchemeModel& X) {
    std::map<std::string, Valuation> found;
    const FieldPtr& F = x.field();
    if (X.kind == SchemeModel::Kind::Point) return std::vector<Valuation>{};
    try {
        for (const auto& [entries, c] : x.terms())
            for (const auto& e : entries) {
                if (X.kind == SchemeModel::Kind::SpecOK) {
                    for (const BigInt* part : {&e.rat().num(), &e.rat().den()})
                        for (const auto& [p, m] : factor_integer(*part))
                            found.emplace(p.to_string(), Valuation::finite_place(p));
                } else {
                    for (const Polynomial* part : {&e.rf_num(), &e.rf_den()})
                        if (part->degree() > 0)
                            for (const auto& [fac, m] : factor_poly(*part)) {
                                Valuation v = Valuation::point_of_line(F, fac);
                                found.emplace(v.key(), v);
                            }
                }
            }
    } catch (const NotComputableError&) {
        return std::nullopt;
    }
    std::vector<Valuation> out;
    for (auto& [k, v] : found) out.push_back(v);
    if (X.kind == SchemeModel::Kind::ProjectiveLine) out.push_back(Valuation::infinite_place(F));
    return out;
}

}  // namespace

CycleComplexLevel differential(const CycleComplexLevel& c, const CycleModuleInterface& M, int bound) {
    if (c.codim != 0) throw std::invalid_argument("differential: only the codim-0 level is nontrivial");
    if (!c.generic_value) throw std::invalid_argument("differential: missing generic value");
    CycleComplexLevel out;
    out.model = c.model;
    out.codim = 1;
    out.twist = c.twist;

    std::vector<Valuation> pts;
    bool exact = false;
    if (M.name == "milnor") {
        auto sup = exact_support(c.generic_value->milnor(), c.model);
        if (sup) {
            pts = std::move(*sup);
            exact = true;
        }
    }
    if (!exact) {
        pts = c.model.codim1_points(bound);
        out.truncated = true;
    }
    for (const auto& v : pts) {
        CMValue r = M.residue(v, *c.generic_value);
        CMValue z = M.zero(ObjectRef{v.residue_field(), c.twist - 1});
        if (!M.equal(r, z)) out.point_values.push_back({v, std::move(r)});
    }
    return out;
}

CycleComplexLevel differential_from_codim1(const CycleComplexLevel& c) {
    if (c.codim != 1) throw std::invalid_argument("differential_from_codim1: wrong level");
    CycleComplexLevel out;
    out.model = c.model;
    out.codim = 2;
    out.twist = c.twist;
    // the implemented models have no codimension-2 points
    return out;
}

bool levels_equal(const CycleComplexLevel& a, const CycleComplexLevel& b,
                  const CycleModuleInterface& M) {
    if (a.codim != b.codim || a.twist != b.twist) return false;
    if (a.codim == 0) {
        if (a.generic_value.has_value() != b.generic_value.has_value()) return false;
        return !a.generic_value || M.equal(*a.generic_value, *b.generic_value);
    }
    std::map<std::string, const CMValue*> am, bm;
    for (const auto& [v, x] : a.point_values) am[v.key()] = &x;
    for (const auto& [v, x] : b.point_values) bm[v.key()] = &x;
    if (am.size() != bm.size()) return false;
    for (const auto& [k, x] : am) {
        auto it = bm.find(k);
        if (it == bm.end() || !M.equal(*x, *it->second)) return false;
    }
    return true;
}

std::string ChowReport::to_string() const {
    std::string s = "A^" + std::to_string(codim) + "(" + model + "; K^M_" + std::to_string(twist) +
                    ") @B=" + std::to_string(bound) + ": factors (";
    for (size_t i = 0; i < invariant_factors.size(); ++i)
        s += (i ? ", " : "") + invariant_factors[i].to_string();
    s += "), free rank " + std::to_string(free_rank);
    if (stabilized) s += ", stabilized";
    return s;
}

namespace {

ChowReport chow_at_bound(const SchemeModel& X, int codim, int bound) {
    const FieldPtr& line = X.field;
    const FieldPtr& F = line->base();
    if (!F->is_finite()) throw NotComputableError("chow_group: line must sit over a finite field");
    auto pts = X.codim1_points(bound);
    // multiplicative generators of the truncated K_1 carrier: a generator of
    // F^x and the monic irreducibles of degree <= bound
    std::vector<Polynomial> irreds;
    for (const auto& v : pts)
        if (v.kind() == Valuation::Kind::PointOfLine) irreds.push_back(v.pi());
    size_t gens = 1 + irreds.size();
    IntMatrix D(pts.size(), std::vector<BigInt>(gens, BigInt(0)));
    for (size_t r = 0; r < pts.size(); ++r) {
        const Valuation& v = pts[r];
        for (size_t j = 0; j < irreds.size(); ++j) {
            Element f = Element::rational_function(
                line, irreds[j], Polynomial::constant(F, Element::one(F)));
            D[r][1 + j] = BigInt(v.valuation_of(f));
        }
        // the constant generator has divisor zero everywhere
    }
    ChowReport rep;
    rep.model = X.to_string();
    rep.codim = codim;
    rep.bound = bound;
    if (codim == 1) {
        CokernelShape shape = cokernel_shape(D);
        rep.invariant_factors = shape.invariant_factors;
        rep.free_rank = shape.free_rank;
        return rep;
    }
    // A^0: kernel of the divisor map modulo the order of the constants
    IntMatrix rel(gens, std::vector<BigInt>(1, BigInt(0)));
    rel[0][0] = BigInt(static_cast<long long>(F->order() - 1));
    CokernelShape shape = subquotient_shape(D, rel);
    rep.invariant_factors = shape.invariant_factors;
    rep.free_rank = shape.free_rank;
    return rep;
}

}  // namespace

ChowReport chow_group(const SchemeModel& X, int codim, int bound) {
    if (X.kind != SchemeModel::Kind::AffineLine && X.kind != SchemeModel::Kind::ProjectiveLine)
        throw NotComputableError("chow_group: implemented for A^1 and P^1 only");
    if (codim != 0 && codim != 1) throw std::invalid_argument("chow_group: codim must be 0 or 1");
    if (bound < 1) throw std::invalid_argument("chow_group: bound must be >= 1");
    ChowReport rep = chow_at_bound(X, codim, bound);
    if (bound >= 2) {
        ChowReport prev = chow_at_bound(X, codim, bound - 1);
        rep.stabilized = prev.invariant_factors == rep.invariant_factors &&
                         prev.free_rank == rep.free_rank;
    }
    return rep;
}

}  // namespace rostforge
