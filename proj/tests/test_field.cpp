#include "doctest.h"

#include <set>

#include "rostforge/element.hpp"
#include "rostforge/errors.hpp"
#include "rostforge/field.hpp"
#include "rostforge/fieldext.hpp"
#include "rostforge/morphism.hpp"
#include "rostforge/points.hpp"
#include "rostforge/valuation.hpp"

using namespace rostforge;

namespace {

FieldPtr Q() { return Field::rationals(); }
FieldPtr Ft(uint64_t p, const char* var = "t") { return Field::rational_function(Field::finite(p), {var}); }

Element qel(long long n, long long d = 1) { return Element::rational(Rational(BigInt(n), BigInt(d))); }

// Moebius/Gauss necklace count of monic irreducibles of degree d over F_q;
// independent oracle for the closed-point enumeration.
long long necklace_count(long long q, int d) {
    auto moebius = [](int n) {
        int result = 1;
        for (int p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                result = -result;
            }
        if (n > 1) result = -result;
        return result;
    };
    long long total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        long long qe = 1;
        for (int i = 0; i < d / e; ++i) qe *= q;
        total += moebius(e) * qe;
    }
    return total / d;
}

}  // namespace

TEST_CASE("number field signature invariant is enforced") {
    CHECK_NOTHROW(Field::number_field(3, 1, 1));
    CHECK_THROWS_AS(Field::number_field(3, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(Field::number_field(2, 1, 1), std::invalid_argument);
}

TEST_CASE("kronecker dimension") {
    CHECK(kronecker_dimension(Q()) == 1);
    CHECK(kronecker_dimension(Field::finite(7)) == 0);
    CHECK(kronecker_dimension(Field::rational_function(Q(), {"t", "u"})) == 3);
    CHECK(kronecker_dimension(Ft(5)) == 1);
    CHECK_THROWS(kronecker_dimension(Field::declared("R", true, true)));
}

TEST_CASE("multi-variable function fields canonicalize to nested towers") {
    FieldPtr a = Field::rational_function(Q(), {"t", "u"});
    FieldPtr b = Field::rational_function(Field::rational_function(Q(), {"t"}), {"u"});
    CHECK(a->equals(b));
    CHECK(a->variable() == "u");
    CHECK(a->base()->variable() == "t");
}

TEST_CASE("rational element arithmetic and canonical form") {
    Element a = qel(6, -8);
    CHECK(a == qel(-3, 4));
    CHECK((a + qel(3, 4)).is_zero());
    CHECK((qel(2) * qel(3, 2)) == qel(3));
    CHECK_THROWS(qel(1, 1).inverse() == qel(0).inverse());
}

TEST_CASE("finite field arithmetic") {
    FieldPtr f9 = Field::finite(3, 2);
    CHECK(f9->order() == 9);
    auto elems = all_elements(f9);
    CHECK(elems.size() == 9);
    // every nonzero element has an inverse
    for (const auto& x : elems) {
        if (x.is_zero()) continue;
        CHECK((x * x.inverse()).is_one());
    }
    // Frobenius fixes exactly the prime field
    int fixed = 0;
    for (const auto& x : elems)
        if (x.pow(BigInt(3)) == x) ++fixed;
    CHECK(fixed == 3);
}

TEST_CASE("rational function canonical form has monic denominator") {
    FieldPtr F5t = Ft(5);
    FieldPtr F5 = F5t->base();
    Element t = Element::generator(F5t);
    Element two = Element::from_integer(F5t, BigInt(2));
    Element x = (t * t - two) / (two * t);
    CHECK(x.rf_den().is_monic());
    Element y = x * (two * t) / (t * t - two);
    CHECK(y.is_one());
}

TEST_CASE("finite extension arithmetic in Q(i)") {
    FieldPtr Qi = Field::finite_extension(Q(), Polynomial::from_int_coeffs(Q(), {1, 0, 1}), "Q(i)");
    Element i = Element::generator(Qi);
    CHECK((i * i) == Element::from_integer(Qi, BigInt(-1)));
    Element z = Element::one(Qi) + i;  // 1 + i
    CHECK((z * z) == i + i);           // (1+i)^2 = 2i
    CHECK((z * z.inverse()).is_one());
}

TEST_CASE("reducible defining polynomials are rejected") {
    CHECK_THROWS_AS(Field::finite_extension(Q(), Polynomial::from_int_coeffs(Q(), {-1, 0, 1})),
                    std::invalid_argument);  // x^2 - 1
    FieldPtr F5 = Field::finite(5);
    CHECK_THROWS_AS(Field::finite_extension(Ft(5), Polynomial::constant(Ft(5), Element::one(Ft(5)))),
                    std::invalid_argument);
}

TEST_CASE("irreducibility checks") {
    CHECK(check_irreducible(Polynomial::from_int_coeffs(Q(), {1, 0, 1})) == Irreducibility::Yes);
    CHECK(check_irreducible(Polynomial::from_int_coeffs(Q(), {-2, 0, 0, 1})) == Irreducibility::Yes);
    CHECK(check_irreducible(Polynomial::from_int_coeffs(Q(), {-1, 0, 1})) == Irreducibility::No);
    // x^4 + 1: irreducible over Q but reducible mod every prime; lands Unknown
    CHECK(check_irreducible(Polynomial::from_int_coeffs(Q(), {1, 0, 0, 0, 1})) != Irreducibility::No);
    // x^4 + x + 1 is irreducible mod 2
    CHECK(check_irreducible(Polynomial::from_int_coeffs(Q(), {1, 1, 0, 0, 1})) == Irreducibility::Yes);
}

TEST_CASE("residue fields of the three valuation shapes") {
    // v = (t^2 + 1) on Q(t): residue field Q[x]/(x^2+1) of degree 2
    FieldPtr Qt = Field::rational_function(Q(), {"t"});
    Valuation v = Valuation::point_of_line(Qt, Polynomial::from_int_coeffs(Q(), {1, 0, 1}));
    FieldPtr k = v.residue_field();
    CHECK(k->kind() == Field::Kind::FiniteExtension);
    CHECK(k->extension_degree() == 2);
    CHECK(v.degree() == 2);

    // infinite place on F_5(t) has residue field F_5
    Valuation w = Valuation::infinite_place(Ft(5));
    CHECK(w.residue_field()->equals(Field::finite(5)));

    // (3) on Q has residue field F_3
    Valuation u = Valuation::finite_place(BigInt(3));
    CHECK(u.residue_field()->equals(Field::finite(3)));
}

TEST_CASE("valuation axioms hold on samples") {
    FieldPtr F5t = Ft(5);
    FieldPtr F5 = F5t->base();
    Element t = Element::generator(F5t);
    Element one = Element::one(F5t);
    Valuation v = Valuation::point_of_line(F5t, Polynomial::variable(F5));
    Element x = t * t * (t + one);
    Element y = (t + one) / t;
    CHECK(v.valuation_of(x) == 2);
    CHECK(v.valuation_of(y) == -1);
    CHECK(v.valuation_of(x * y) == v.valuation_of(x) + v.valuation_of(y));
    long long m = std::min(v.valuation_of(x), v.valuation_of(y));
    CHECK(v.valuation_of(x + y) >= m);
    CHECK(v.valuation_of(v.uniformizer()) == 1);

    Valuation inf = Valuation::infinite_place(F5t);
    CHECK(inf.valuation_of(t) == -1);
    CHECK(inf.valuation_of(one / (t * t)) == 2);
    CHECK(inf.valuation_of(inf.uniformizer()) == 1);

    Valuation p3 = Valuation::finite_place(BigInt(3));
    CHECK(p3.valuation_of(qel(18)) == 2);
    CHECK(p3.valuation_of(qel(2, 9)) == -2);
}

TEST_CASE("closed points of the line over F_2") {
    FieldPtr F2t = Ft(2);
    auto pts = closed_points(LineKind::Affine, F2t, 2);
    // t, t+1, t^2+t+1
    CHECK(pts.size() == 3);
    std::set<std::string> names;
    for (const auto& v : pts) names.insert(v.to_string());
    CHECK(names.count("(t)") == 1);
    CHECK(names.count("(t + 1)") == 1);
    CHECK(names.count("(t^2 + t + 1)") == 1);

    auto proj = closed_points(LineKind::Projective, F2t, 1);
    CHECK(proj.size() == 3);  // t, t+1, infinity
    CHECK(proj.back().kind() == Valuation::Kind::InfinitePlace);
}

TEST_CASE("closed point counts match the necklace formula") {
    for (long long q : {2, 3}) {
        FieldPtr line = Ft(static_cast<uint64_t>(q));
        for (int B = 1; B <= 6; ++B) {
            auto pts = closed_points(LineKind::Affine, line, B);
            long long expected = 0;
            for (int d = 1; d <= B; ++d) expected += necklace_count(q, d);
            CHECK(static_cast<long long>(pts.size()) == expected);
        }
    }
    // degree counts for F_3, B = 2: 3 linear + 3 quadratic
    auto pts = closed_points(LineKind::Affine, Ft(3), 2);
    CHECK(pts.size() == 6);
}

TEST_CASE("residue field degree equals point degree for enumerated points") {
    for (uint64_t q : {2ull, 3ull, 5ull}) {
        FieldPtr line = Ft(q);
        for (const auto& v : closed_points(LineKind::Affine, line, 3)) {
            FieldPtr k = v.residue_field();
            CHECK(k->order() == [&] {
                uint64_t o = 1;
                for (int i = 0; i < v.degree(); ++i) o *= q;
                return o;
            }());
        }
    }
}

TEST_CASE("unit reduction at places") {
    FieldPtr F5t = Ft(5);
    FieldPtr F5 = F5t->base();
    Element t = Element::generator(F5t);
    Valuation v = Valuation::point_of_line(F5t, Polynomial::variable(F5));
    // (t - 2) reduces to -2 = 3 at t = 0
    Element u = t - Element::from_integer(F5t, BigInt(2));
    CHECK(v.reduce_unit(u) == Element::from_integer(F5, BigInt(3)));
    // at infinity, (2t+1)/(t+3) reduces to 2
    Valuation inf = Valuation::infinite_place(F5t);
    Element two = Element::from_integer(F5t, BigInt(2));
    Element r = (two * t + Element::one(F5t)) / (t + Element::from_integer(F5t, BigInt(3)));
    CHECK(inf.reduce_unit(r) == Element::from_integer(F5, BigInt(2)));
}

TEST_CASE("canonical embeddings") {
    FieldPtr F5t = Ft(5);
    FieldPtr F5 = F5t->base();
    FieldPtr F25 = Field::finite(5, 2);
    FieldPtr F25t = Field::rational_function(F25, {"t"});

    CHECK(has_canonical_embedding(F5, F25));
    CHECK(has_canonical_embedding(F5t, F25t));
    CHECK(has_canonical_embedding(F5, F5t));
    CHECK_FALSE(has_canonical_embedding(F25, F5));

    Element two5 = Element::from_integer(F5, BigInt(2));
    Element two25 = embed(two5, F25);
    CHECK((two25 + two25 + Element::one(F25)).is_zero());  // 2+2+1 = 0 mod 5

    // embedding respects arithmetic on a sample
    Element a = Element::from_integer(F5, BigInt(3)), b = Element::from_integer(F5, BigInt(4));
    CHECK(embed(a * b, F25) == embed(a, F25) * embed(b, F25));
}

TEST_CASE("field morphisms with generator images") {
    FieldPtr Qi = Field::finite_extension(Q(), Polynomial::from_int_coeffs(Q(), {1, 0, 1}), "Q(i)");
    Element i = Element::generator(Qi);
    FieldMorphism conj = FieldMorphism::with_image(Qi, Qi, -i, 1);
    CHECK_FALSE(conj.is_identity());
    Element z = Element::one(Qi) + i;
    CHECK(conj.apply(z) == Element::one(Qi) - i);
    CHECK(conj.apply(conj.apply(z)) == z);
    // with_image agreeing with the canonical embedding normalizes to it
    FieldMorphism ident = FieldMorphism::with_image(Qi, Qi, i, 1);
    CHECK(ident.is_identity());

    // substitution t -> s^2
    FieldPtr F5 = Field::finite(5);
    FieldPtr F5t = Field::rational_function(F5, {"t"});
    FieldPtr F5s = Field::rational_function(F5, {"s"});
    Element s = Element::generator(F5s);
    FieldMorphism sq = FieldMorphism::with_image(F5t, F5s, s * s);
    CHECK(sq.finite_degree() == 2);
    Element t = Element::generator(F5t);
    CHECK(sq.apply(t + Element::one(F5t)) == s * s + Element::one(F5s));
}

TEST_CASE("resultants and norms") {
    // res(x^2+1, x-2) = 5 (value of x^2+1 at 2, monic linear)
    Polynomial f = Polynomial::from_int_coeffs(Q(), {1, 0, 1});
    Polynomial g = Polynomial::from_int_coeffs(Q(), {-2, 1});
    CHECK(resultant(g, f) == qel(5));
    CHECK(resultant(f, g) == qel(5));  // degrees 2*1: sign (+1)^2
}

TEST_CASE("sturm signature of defining polynomials") {
    CHECK(signature_of_extension(Polynomial::from_int_coeffs(Q(), {1, 0, 1})) ==
          std::pair<unsigned, unsigned>{0, 1});  // x^2+1
    CHECK(signature_of_extension(Polynomial::from_int_coeffs(Q(), {-2, 0, 1})) ==
          std::pair<unsigned, unsigned>{2, 0});  // x^2-2
    CHECK(signature_of_extension(Polynomial::from_int_coeffs(Q(), {-2, 0, 0, 1})) ==
          std::pair<unsigned, unsigned>{1, 1});  // x^3-2
}

TEST_CASE("square roots in quadratic fields") {
    FieldPtr Qi = Field::finite_extension(Q(), Polynomial::from_int_coeffs(Q(), {1, 0, 1}), "Q(i)");
    Element i = Element::generator(Qi);
    Element two_i = i + i;
    auto s = try_sqrt(two_i);  // (1+i)^2 = 2i
    REQUIRE(s.has_value());
    CHECK((*s) * (*s) == two_i);
    CHECK_FALSE(try_sqrt(Element::from_integer(Qi, BigInt(2)) + i).has_value());
    CHECK(try_sqrt(qel(49, 4)).has_value());
    CHECK_FALSE(try_sqrt(qel(2)).has_value());
}
