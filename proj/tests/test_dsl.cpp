#include "doctest.h"

#include "rostforge/dsl.hpp"
#include "rostforge/fieldext.hpp"
#include "rostforge/rewrite.hpp"

using namespace rostforge;

TEST_CASE("field tower expressions") {
    CHECK(parse_field("Q")->is_rationals());
    CHECK(parse_field("F5")->equals(Field::finite(5)));
    CHECK(parse_field("F2^3")->equals(Field::finite(2, 3)));
    CHECK(parse_field("Q(t)")->equals(Field::rational_function(Field::rationals(), {"t"})));
    CHECK(parse_field("Q(t,u)")->equals(Field::rational_function(Field::rationals(), {"t", "u"})));
    CHECK(parse_field(" F5 ( t ) ")->equals(Field::rational_function(Field::finite(5), {"t"})));
    FieldPtr qi = parse_field("Q[x^2+1]");
    CHECK(qi->kind() == Field::Kind::FiniteExtension);
    CHECK(qi->extension_degree() == 2);
    FieldPtr nf = parse_field("NF(3,1,1)");
    CHECK(nf->nf_degree() == 3);
    CHECK(nf->nf_r2() == 1);
    CHECK(parse_field("R")->declared_uncountable());
    // towers over towers
    FieldPtr big = parse_field("F5(t)[x^2-t]");
    CHECK(big->kind() == Field::Kind::FiniteExtension);
    CHECK(big->base()->variable() == "t");
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_field("Q("), ParseError);
    CHECK_THROWS_AS(parse_field("NF(2,1,1)"), ParseError);  // signature violation
    CHECK_THROWS_AS(parse_field("Q[x^2-1]"), ParseError);   // reducible
    CHECK_THROWS_AS(parse_field("5"), ParseError);
    try {
        parse_field("Q(t,)");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position() > 0);
        CHECK(e.caret_message().find('^') != std::string::npos);
    }
}

TEST_CASE("element expressions") {
    FieldPtr Qt = parse_field("Q(t)");
    Element t = Element::generator(Qt);
    CHECK(parse_element("t^2 - 3/2", Qt) ==
          t * t - embed(Element::rational(Rational(BigInt(3), BigInt(2))), Qt));
    CHECK(parse_element("(t+1)*(t-1)", Qt) == t * t - Element::one(Qt));
    CHECK(parse_element("1/t", Qt) == Element::one(Qt) / t);
    FieldPtr qi = parse_field("Q[x^2+1]");
    Element i = Element::generator(qi);
    CHECK(parse_element("x^2", qi) == -Element::one(qi));
    CHECK(parse_element("(1+x)^2", qi) == i + i);
    CHECK_THROWS_AS(parse_element("y + 1", Qt), ParseError);
}

TEST_CASE("class literals") {
    FieldPtr F5t = parse_field("F5(t)");
    MilnorClass c = parse_class("{t, t-1}", F5t);
    CHECK(c.degree() == 2);
    FieldPtr Q = Field::rationals();
    MilnorClass z = parse_class("2*{2,3} - {2,3}", Q);
    CHECK(z == parse_class("{2,3}", Q));
    CHECK(parse_class("{7}", Q).degree() == 1);
    CHECK(parse_class("{2} + {3}", Q) == parse_class("{6}", Q));
}

TEST_CASE("valuation literals") {
    FieldPtr F5t = parse_field("F5(t)");
    Valuation v = parse_valuation("(t)", F5t);
    CHECK(v.kind() == Valuation::Kind::PointOfLine);
    CHECK(parse_valuation("(t^2+t+1)", F5t).degree() == 2);
    CHECK(parse_valuation("inf", F5t).kind() == Valuation::Kind::InfinitePlace);
    CHECK(parse_valuation("5", Field::rationals()).kind() == Valuation::Kind::FinitePlace);
    CHECK_THROWS_AS(parse_valuation("6", Field::rationals()), std::invalid_argument);
}

TEST_CASE("morphism word literals") {
    FieldPtr F5t = parse_field("F5(t)");
    ObjectRef src{F5t, 1};
    MorphismWord w = parse_morphism_word("res[(t)] . sym[{t}]", src);
    REQUIRE(w.terms().size() == 1);
    const GenSeq& seq = w.terms()[0].second;
    REQUIRE(seq.size() == 2);
    CHECK(seq[0].kind() == Generator::Kind::Residue);
    CHECK(seq[1].kind() == Generator::Kind::SymbolMult);
    CHECK(w.target().field->equals(Field::finite(5)));
    CHECK(w.target().twist == 1);  // +1 from the symbol, -1 from the residue

    // the ring operator works too
    MorphismWord w2 = parse_morphism_word("sym[{2}] \xe2\x88\x98 rst[Q->Q[x^2+1]]", ObjectRef{Field::rationals(), 0});
    CHECK(w2.terms()[0].second.size() == 2);

    MorphismWord w3 = parse_morphism_word("nrm[Q[x^2+1]/Q]", ObjectRef{parse_field("Q[x^2+1]"), 0});
    CHECK(w3.target().field->is_rationals());

    CHECK_THROWS_AS(parse_morphism_word("res[(t)]", ObjectRef{Field::rationals(), 0}), ParseError);
}
