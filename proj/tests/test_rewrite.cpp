#include "doctest.h"

#include <random>

#include "rostforge/errors.hpp"
#include "rostforge/fieldext.hpp"
#include "rostforge/places.hpp"
#include "rostforge/rewrite.hpp"

using namespace rostforge;

namespace {

FieldPtr Q() { return Field::rationals(); }
FieldPtr Qi() {
    static FieldPtr f =
        Field::finite_extension(Q(), Polynomial::from_int_coeffs(Q(), {1, 0, 1}), "Q(i)");
    return f;
}
FieldPtr F5() { return Field::finite(5); }
FieldPtr F5t() {
    static FieldPtr f = Field::rational_function(F5(), {"t"});
    return f;
}
Element qel(long long n) { return Element::rational(Rational(BigInt(n))); }
Element fel(const FieldPtr& f, long long n) { return Element::from_integer(f, BigInt(n)); }

MilnorClass sym1(const FieldPtr& f, const Element& a) { return MilnorClass::symbol(f, {a}); }

CMValue mv(MilnorClass c) { return CMValue{std::move(c)}; }

}  // namespace

TEST_CASE("word composition and bilinearity") {
    ObjectRef q0{Q(), 0};
    MorphismWord gx = MorphismWord::single(q0, {Generator::symbol_mult(sym1(Q(), qel(2)))});
    MorphismWord composed = MorphismWord::compose(gx, MorphismWord::identity(q0));
    CHECK(composed.terms().size() == 1);
    CHECK(composed.terms()[0].second.size() == 1);

    ObjectRef q1{Q(), 1};
    CHECK_THROWS_AS(MorphismWord::compose(gx, MorphismWord::identity(q1)), std::invalid_argument);

    // (gamma_x + gamma_y) . phi_* distributes over the terms
    FieldMorphism phi = FieldMorphism::embedding(Q(), Qi());
    ObjectRef qi0{Qi(), 0};
    MorphismWord rst = MorphismWord::single(q0, {Generator::restriction(phi)});
    MorphismWord gxi = MorphismWord::single(qi0, {Generator::symbol_mult(sym1(Qi(), fel(Qi(), 2)))});
    MorphismWord gyi = MorphismWord::single(qi0, {Generator::symbol_mult(sym1(Qi(), fel(Qi(), 3)))});
    MorphismWord both = MorphismWord::compose(gxi + gyi, rst);
    CHECK(both.terms().size() == 2);
    for (const auto& [c, seq] : both.terms()) CHECK(seq.size() == 2);
}

TEST_CASE("rewrite_step: R0 merges adjacent gammas") {
    ObjectRef q0{Q(), 0};
    GenSeq seq{Generator::symbol_mult(sym1(Q(), qel(2))), Generator::symbol_mult(sym1(Q(), qel(3)))};
    MorphismWord w = MorphismWord::single(q0, seq);
    auto step = rewrite_step(w);
    REQUIRE(step.has_value());
    CHECK(step->rule == "R0");
    REQUIRE(step->word.terms().size() == 1);
    const GenSeq& out = step->word.terms()[0].second;
    REQUIRE(out.size() == 1);
    CHECK(out[0].sym() == product(sym1(Q(), qel(2)), sym1(Q(), qel(3))));
}

TEST_CASE("rewrite_step: R3e moves the residue past a unit") {
    ObjectRef src{F5t(), 0};
    Element t = Element::generator(F5t());
    Element u = t + fel(F5t(), 2);
    Valuation v = Valuation::point_of_line(F5t(), Polynomial::variable(F5()));
    GenSeq seq{Generator::residue_at(v), Generator::symbol_mult(sym1(F5t(), u))};
    MorphismWord w = MorphismWord::single(src, seq);
    auto step = rewrite_step(w);
    REQUIRE(step.has_value());
    CHECK(step->rule == "R3e");
    REQUIRE(step->word.terms().size() == 1);
    const auto& [c, out] = step->word.terms()[0];
    CHECK(c.to_int64() == -1);
    REQUIRE(out.size() == 2);
    CHECK(out[0].kind() == Generator::Kind::SymbolMult);
    CHECK(out[0].sym() == sym1(F5(), fel(F5(), 2)));
    CHECK(out[1].kind() == Generator::Kind::Residue);

    // a unit reducing to 1 kills the residue outright
    GenSeq seq1{Generator::residue_at(v), Generator::symbol_mult(sym1(F5t(), t + fel(F5t(), 1)))};
    auto step1 = rewrite_step(MorphismWord::single(src, seq1));
    REQUIRE(step1.has_value());
    CHECK(step1->word.is_zero());
}

TEST_CASE("rewrite_step: R3c kills residues of constants") {
    ObjectRef src{F5(), 0};
    Valuation v = Valuation::point_of_line(F5t(), Polynomial::variable(F5()));
    FieldMorphism c = FieldMorphism::embedding(F5(), F5t());
    MorphismWord w =
        MorphismWord::single(src, {Generator::residue_at(v), Generator::restriction(c)});
    auto step = rewrite_step(w);
    REQUIRE(step.has_value());
    CHECK(step->rule == "R3c");
    CHECK(step->word.is_zero());
}

TEST_CASE("normalize: R1c expands psi_* . phi^! for Q(i) over Q") {
    // two points over Spec(Q(i) (x)_Q Q(i)), both of length 1
    ObjectRef src{Qi(), 1};
    FieldMorphism phi = FieldMorphism::embedding(Q(), Qi());
    MorphismWord w =
        MorphismWord::single(src, {Generator::restriction(phi), Generator::norm(phi)});
    NormalizeResult res = normalize(w);
    CHECK(res.status == RewriteStatus::Normal);
    CHECK(res.word.terms().size() == 2);  // identity + conjugation
    auto M = milnor_cycle_module();
    Element i = Element::generator(Qi());
    CMValue x = mv(sym1(Qi(), fel(Qi(), 3) + i));  // {3+i}
    CMValue lhs = evaluate(w, x, M);
    CMValue rhs = evaluate(res.word, x, M);
    CHECK(M.equal(lhs, rhs));
    CHECK(lhs.milnor() == sym1(Qi(), fel(Qi(), 10)));  // {(3+i)(3-i)} = {10}
}

TEST_CASE("normalize: unramified R3a turns d.phi_* into phibar_*.d") {
    FieldPtr F25 = Field::finite(5, 2);
    FieldPtr F25t = Field::rational_function(F25, {"t"});
    FieldMorphism phi = FieldMorphism::embedding(F5t(), F25t);
    Valuation v = Valuation::point_of_line(F25t, Polynomial::variable(F25));
    ObjectRef src{F5t(), 1};
    MorphismWord w =
        MorphismWord::single(src, {Generator::residue_at(v), Generator::restriction(phi)});
    NormalizeResult res = normalize(w);
    CHECK(res.status == RewriteStatus::Normal);
    REQUIRE(res.word.terms().size() == 1);
    const auto& [c, seq] = res.word.terms()[0];
    CHECK(c.to_int64() == 1);  // e = 1
    REQUIRE(seq.size() == 2);
    CHECK(seq[0].kind() == Generator::Kind::Restriction);
    CHECK(seq[1].kind() == Generator::Kind::Residue);
    CHECK(seq[1].val().field()->equals(F5t()));
}

TEST_CASE("normalize: already-normal words are fixpoints") {
    ObjectRef src{Q(), 0};
    MorphismWord w = MorphismWord::single(src, {Generator::symbol_mult(sym1(Q(), qel(7)))});
    NormalizeResult res = normalize(w);
    CHECK(res.steps == 0);
    CHECK(res.status == RewriteStatus::Normal);
    REQUIRE(res.summands.size() == 1);
    CHECK(res.summands[0].sigma.has_value());
    CHECK(res.summands[0].rank() == 0);
}

TEST_CASE("normalize: R2c collapses norm-gamma-restriction with the same map") {
    ObjectRef src{Q(), 0};
    FieldMorphism phi = FieldMorphism::embedding(Q(), Qi());
    Element i = Element::generator(Qi());
    // phi^! . gamma_{{i}} . phi_* = gamma_{{N(i)}} = gamma_{{1}} = 0
    MorphismWord w = MorphismWord::single(
        src, {Generator::norm(phi), Generator::symbol_mult(sym1(Qi(), i)),
              Generator::restriction(phi)});
    NormalizeResult res = normalize(w);
    CHECK(res.status == RewriteStatus::Normal);
    CHECK(res.word.is_zero());

    // the degree formula phi^! . phi_* = 2 holds on evaluation; the word
    // itself is already in normal shape (sigma = 1) and stays put
    MorphismWord d = MorphismWord::single(src, {Generator::norm(phi), Generator::restriction(phi)});
    NormalizeResult dres = normalize(d);
    CHECK(dres.status == RewriteStatus::Normal);
    REQUIRE(dres.summands.size() == 1);
    CHECK(dres.summands[0].phi.has_value());
    CHECK(dres.summands[0].psi.has_value());
    auto M = milnor_cycle_module();
    CMValue out = evaluate(dres.word, CMValue{MilnorClass::integer(Q(), BigInt(5))}, M);
    CHECK(out.milnor().degree0_value().to_int64() == 10);
}

TEST_CASE("evaluate: named instances") {
    auto M = milnor_cycle_module();
    ObjectRef q1{Q(), 1};
    MorphismWord g2 = MorphismWord::single(q1, {Generator::symbol_mult(sym1(Q(), qel(2)))});
    CMValue out = evaluate(g2, mv(sym1(Q(), qel(3))), M);
    CHECK(out.milnor() == MilnorClass::symbol(Q(), {qel(2), qel(3)}));

    // d_(t) . gamma_{{t}} on 1 in K_0(F5(t)) gives 1 in K_0(F5)
    ObjectRef f0{F5t(), 0};
    Valuation v = Valuation::point_of_line(F5t(), Polynomial::variable(F5()));
    MorphismWord w = MorphismWord::single(
        f0, {Generator::residue_at(v),
             Generator::symbol_mult(sym1(F5t(), Element::generator(F5t())))});
    CMValue r = evaluate(w, mv(MilnorClass::unit(F5t())), M);
    CHECK(r.milnor().degree0_value().to_int64() == 1);

    // phi^! . phi_* is multiplication by the degree on K_0
    ObjectRef q0{Q(), 0};
    FieldMorphism phi = FieldMorphism::embedding(Q(), Qi());
    MorphismWord d = MorphismWord::single(q0, {Generator::norm(phi), Generator::restriction(phi)});
    CMValue n = evaluate(d, mv(MilnorClass::integer(Q(), BigInt(3))), M);
    CHECK(n.milnor().degree0_value().to_int64() == 6);
}

TEST_CASE("grading: normalize preserves objects and summand bookkeeping") {
    ObjectRef src{F5t(), 2};
    Valuation v = Valuation::point_of_line(F5t(), Polynomial::variable(F5()));
    Element t = Element::generator(F5t());
    MorphismWord w = MorphismWord::single(
        src, {Generator::residue_at(v),
              Generator::symbol_mult(MilnorClass::symbol(F5t(), {t + fel(F5t(), 2)}))});
    NormalizeResult res = normalize(w);
    CHECK(res.word.source().equals(src));
    CHECK(res.word.target().equals(w.target()));
    for (const auto& nf : res.summands) {
        int net = 0;
        if (nf.sigma) net += nf.sigma->degree();
        if (nf.tau) net += nf.tau->degree();
        net -= nf.rank();
        CHECK(net == w.target().twist - w.source().twist);
    }
}

TEST_CASE("soundness: evaluate . normalize = evaluate on random words") {
    std::mt19937 rng(424242);
    auto M = milnor_cycle_module();
    std::vector<FieldPtr> pool{F5(), F5t(), Q(), Qi()};

    auto random_unit = [&](const FieldPtr& f) -> Element {
        for (;;) {
            long long c = 1 + static_cast<long long>(rng() % 6);
            Element e = fel(f, c);
            if (f->equals(F5t()) && rng() % 2)
                e = e * Element::generator(F5t()) + fel(f, static_cast<long long>(rng() % 5));
            if (f->equals(Qi()) && rng() % 2) e = e + Element::generator(Qi());
            if (!e.is_zero() && !e.is_one()) return e;
        }
    };
    auto random_class = [&](const FieldPtr& f, int deg) -> MilnorClass {
        if (deg <= 0) return MilnorClass::integer(f, BigInt(1 + static_cast<long long>(rng() % 3)));
        std::vector<Element> es;
        for (int k = 0; k < deg; ++k) es.push_back(random_unit(f));
        return MilnorClass::symbol(f, es);
    };

    int built = 0, nontrivial = 0;
    while (built < 60) {
        FieldPtr cur = pool[rng() % pool.size()];
        int degree = static_cast<int>(rng() % 3);
        FieldPtr src_field = cur;
        int src_degree = degree;
        GenSeq rev;  // innermost first
        int len = 1 + static_cast<int>(rng() % 5);
        for (int s = 0; s < len; ++s) {
            switch (rng() % 4) {
                case 0: {
                    int d = 1 + static_cast<int>(rng() % 2);
                    if (degree + d > 3) break;
                    rev.push_back(Generator::symbol_mult(random_class(cur, d)));
                    degree += d;
                    break;
                }
                case 1: {
                    if (cur->equals(F5())) {
                        rev.push_back(Generator::restriction(FieldMorphism::embedding(F5(), F5t())));
                        cur = F5t();
                    } else if (cur->equals(Q())) {
                        rev.push_back(Generator::restriction(FieldMorphism::embedding(Q(), Qi())));
                        cur = Qi();
                    }
                    break;
                }
                case 2: {  // norms stay within the degree <= 1 carrier
                    if (degree > 1) break;
                    if (cur->equals(Qi())) {
                        rev.push_back(Generator::norm(FieldMorphism::embedding(Q(), Qi())));
                        cur = Q();
                    } else if (cur->equals(F5t()) && rng() % 2) {
                        Element t = Element::generator(F5t());
                        rev.push_back(
                            Generator::norm(FieldMorphism::with_image(F5t(), F5t(), t * t, 2)));
                    }
                    break;
                }
                case 3: {
                    if (cur->equals(F5t())) {
                        std::vector<Polynomial> pis{Polynomial::variable(F5()),
                                                    Polynomial::from_int_coeffs(F5(), {4, 1}),
                                                    Polynomial::from_int_coeffs(F5(), {1, 1, 1})};
                        size_t pick = rng() % (pis.size() + 1);
                        Valuation v = pick == pis.size()
                                          ? Valuation::infinite_place(F5t())
                                          : Valuation::point_of_line(F5t(), pis[pick]);
                        rev.push_back(Generator::residue_at(v));
                        cur = v.residue_field();
                        --degree;
                    } else if (cur->equals(Q())) {
                        Valuation v = Valuation::finite_place(BigInt(rng() % 2 ? 3 : 5));
                        rev.push_back(Generator::residue_at(v));
                        cur = v.residue_field();
                        --degree;
                    }
                    break;
                }
            }
        }
        if (rev.empty()) continue;
        ++built;
        GenSeq seq(rev.rbegin(), rev.rend());
        ObjectRef src{src_field, src_degree};
        MorphismWord w = MorphismWord::single(src, seq);
        CMValue x = mv(random_class(src_field, src_degree));
        NormalizeResult res = normalize(w);
        CHECK(res.status != RewriteStatus::NonTerminating);
        CMValue lhs = evaluate(w, x, M);
        CMValue rhs = evaluate(res.word, x, M);
        bool same = M.equal(lhs, rhs);
        if (!same) {
            MESSAGE("word: " << w.to_string());
            MESSAGE("normalized: " << res.word.to_string());
            MESSAGE("input: " << x.milnor().to_string());
            MESSAGE("lhs: " << lhs.milnor().to_string() << "  rhs: " << rhs.milnor().to_string());
        }
        CHECK(same);
        if (res.steps > 0) ++nontrivial;
    }
    CHECK(nontrivial > 10);
}

TEST_CASE("R2c instance check on degree 0/1 carriers") {
    auto M = milnor_cycle_module();
    FieldMorphism phi = FieldMorphism::embedding(Q(), Qi());
    ObjectRef q0{Q(), 0};
    Element i = Element::generator(Qi());
    for (const Element& y : {fel(Qi(), 2) + i, fel(Qi(), 3), i + i}) {
        MorphismWord lhs = MorphismWord::single(
            q0, {Generator::norm(phi), Generator::symbol_mult(sym1(Qi(), y)),
                 Generator::restriction(phi)});
        MorphismWord rhs =
            MorphismWord::single(q0, {Generator::symbol_mult(norm_class(sym1(Qi(), y), phi))});
        CMValue x = mv(MilnorClass::integer(Q(), BigInt(2)));
        CHECK(M.equal(evaluate(lhs, x, M), evaluate(rhs, x, M)));
    }
}

TEST_CASE("milnor cycle module passes the premodule contract") {
    auto M = milnor_cycle_module();
    std::vector<std::pair<ObjectRef, CMValue>> samples;
    samples.push_back({{Q(), 1}, mv(sym1(Q(), qel(5)))});
    samples.push_back({{F5(), 1}, mv(sym1(F5(), fel(F5(), 2)))});
    samples.push_back({{Q(), 0}, mv(MilnorClass::integer(Q(), BigInt(3)))});
    auto violations = check_cycle_module_contract(M, samples);
    for (const auto& v : violations) MESSAGE(v);
    CHECK(violations.empty());
}

TEST_CASE("stuck windows are flagged, words stay sound") {
    // d_p . nrm[Q(i)/Q] has no implemented place extensions over Q(i)
    auto M = milnor_cycle_module();
    FieldMorphism phi = FieldMorphism::embedding(Q(), Qi());
    Valuation v5 = Valuation::finite_place(BigInt(5));
    ObjectRef src{Qi(), 1};
    MorphismWord w = MorphismWord::single(src, {Generator::residue_at(v5), Generator::norm(phi)});
    NormalizeResult res = normalize(w);
    CHECK(res.status == RewriteStatus::NotComputable);
    CHECK(res.flags.size() == 1);
    Element i = Element::generator(Qi());
    CMValue x = mv(sym1(Qi(), fel(Qi(), 2) + i));
    CHECK(M.equal(evaluate(w, x, M), evaluate(res.word, x, M)));
}
