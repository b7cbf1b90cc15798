#include "doctest.h"

#include "rostforge/element.hpp"
#include "rostforge/rank.hpp"

using namespace rostforge;

namespace {

FieldPtr Q() { return Field::rationals(); }
FieldPtr Qi() {
    static FieldPtr f = Field::finite_extension(
        Q(), Polynomial::from_int_coeffs(Q(), {1, 0, 1}), "Q(i)");
    return f;
}
FieldPtr Qt() {
    static FieldPtr f = Field::rational_function(Q(), {"t"});
    return f;
}

bool cites(const RankAnswer& a, const std::string& rule) {
    for (const auto& s : a.trace)
        if (s.rule_id == rule) return true;
    return false;
}

}  // namespace

TEST_CASE("rank_HB: named cells") {
    // (Q, 1, 3): odd weight row with signature (1,0)
    RankAnswer a = rank_HB(Q(), 1, 3);
    CHECK(a.rank == RankValue::finite(1));
    CHECK(cites(a, "borel.number-field"));

    // finite fields vanish off (0,0)
    a = rank_HB(Field::finite(7), 2, 2);
    CHECK(a.rank == RankValue::zero());
    CHECK(cites(a, "quillen.finite-field"));

    // Q(t): the divisor row
    a = rank_HB(Qt(), 2, 3);
    CHECK(a.rank == RankValue::countable());
    CHECK(cites(a, "rat-curve.divisor-part"));

    // declared reals
    FieldPtr R = Field::declared("R", true, true);
    a = rank_HB(R, 3, 5);
    CHECK(a.rank == RankValue::card_of_field());
    CHECK(cites(a, "uncountable.card"));

    // the weight window
    a = rank_HB(Q(), -1, 2);
    CHECK(a.rank == RankValue::zero());
    a = rank_HB(Q(), 3, 1);
    CHECK(a.rank == RankValue::zero());
    CHECK(rank_HB(Q(), 0, 0).rank == RankValue::finite(1));
}

TEST_CASE("rank_HB: signatures flow from declared and computed data") {
    FieldPtr nf = Field::number_field(3, 1, 1);
    CHECK(rank_HB(nf, 1, 2).rank == RankValue::finite(1));   // r2
    CHECK(rank_HB(nf, 1, 3).rank == RankValue::finite(2));   // r1 + r2
    CHECK(rank_HB(Qi(), 1, 2).rank == RankValue::finite(1)); // Sturm: (0,1)
    CHECK(rank_HB(Qi(), 1, 3).rank == RankValue::finite(1));
    CHECK(rank_HB(Qi(), 1, 1).rank == RankValue::countable());
}

TEST_CASE("rank_HB: traces are nonempty and answers total") {
    for (int n = -2; n <= 4; ++n)
        for (int i = -2; i <= 5; ++i) {
            RankAnswer a = rank_HB(Qt(), n, i);
            CHECK(!a.trace.empty());
            if (a.rank.tag != RankValue::Tag::Unknown) CHECK(a.trace.size() >= 1);
        }
}

TEST_CASE("rank_HB: higher transcendence degree gives lower bounds only") {
    FieldPtr Qtu = Field::rational_function(Q(), {"t", "u"});
    RankAnswer a = rank_HB(Qtu, 2, 4);
    CHECK(a.rank.tag == RankValue::Tag::Unknown);
    CHECK(a.rank.lower_bound == RankValue::Tag::CountablyInfinite);
    a = rank_HB(Qtu, 3, 3);
    CHECK(a.rank.tag == RankValue::Tag::Unknown);
    CHECK(a.rank.lower_bound == RankValue::Tag::CountablyInfinite);
    // outside the band: plain unknown
    a = rank_HB(Qtu, 4, 9);
    CHECK(a.rank.tag == RankValue::Tag::Unknown);
    CHECK(!a.rank.lower_bound.has_value());
}

TEST_CASE("rank_HB: char p function fields of a curve") {
    FieldPtr F5t = Field::rational_function(Field::finite(5), {"t"});
    CHECK(rank_HB(F5t, 1, 1).rank == RankValue::countable());
    CHECK(rank_HB(F5t, 2, 2).rank == RankValue::zero());
    CHECK(rank_HB(F5t, 1, 3).rank == RankValue::zero());
    CHECK(cites(rank_HB(F5t, 2, 2), "harder.curves"));
}

TEST_CASE("rank_HB_OK: ring-of-integers table") {
    // Z: unit rank 0
    RankAnswer a = rank_HB_OK(Q(), 1, 1);
    CHECK(a.rank == RankValue::finite(0));
    CHECK(cites(a, "dirichlet.units"));
    // O_{Q(i)}: n=1 even weight gives r2 = 1
    CHECK(rank_HB_OK(Qi(), 1, 2).rank == RankValue::finite(1));
    // (2,1): Pic is finite
    a = rank_HB_OK(Qi(), 2, 1);
    CHECK(a.rank == RankValue::finite(0));
    CHECK(cites(a, "pic.finite"));
    // (3,2) vanishes by comparison with the field
    a = rank_HB_OK(Field::number_field(2, 2, 0), 3, 2);
    CHECK(a.rank == RankValue::finite(0));
    CHECK(cites(a, "localization.ok-vs-k"));
    // Dirichlet for a real quadratic field: rank 1
    CHECK(rank_HB_OK(Field::number_field(2, 2, 0), 1, 1).rank == RankValue::finite(1));
}

TEST_CASE("borel generators") {
    auto gens = borel_generators(1, 0, 9);
    REQUIRE(gens.size() == 2);
    CHECK(gens[0] == GradedGenerator{5, 3, 1});
    CHECK(gens[1] == GradedGenerator{9, 5, 1});

    gens = borel_generators(0, 1, 7);
    REQUIRE(gens.size() == 3);
    CHECK(gens[0] == GradedGenerator{3, 2, 1});
    CHECK(gens[1] == GradedGenerator{5, 3, 1});
    CHECK(gens[2] == GradedGenerator{7, 4, 1});

    CHECK(borel_generators(0, 0, 100).empty());
    // weights are (degree+1)/2 and degrees odd
    for (const auto& g : borel_generators(3, 2, 25)) {
        CHECK(g.degree % 2 == 1);
        CHECK(g.weight == (g.degree + 1) / 2);
    }
}

TEST_CASE("k_rank instances") {
    CHECK(k_rank(1, 0, 5) == 1);
    CHECK(k_rank(1, 0, 3) == 0);
    CHECK(k_rank(1, 1, 5) == 2);
    CHECK(k_rank(1, 0, 4) == 0);
    for (int n = 2; n <= 20; ++n) {
        long long expected = (n % 4 == 1) ? 1 : 0;  // ranks of K_n(Z)
        CHECK(k_rank(1, 0, n) == expected);
    }
}

TEST_CASE("weight correspondence between the two tables") {
    for (unsigned r1 = 0; r1 <= 4; ++r1)
        for (unsigned r2 = 0; r2 <= 4; ++r2) {
            if (r1 + 2 * r2 == 0) continue;
            FieldPtr K = Field::number_field(r1 + 2 * r2, r1, r2);
            for (int i = 2; i <= 50; ++i) {
                RankAnswer a = rank_HB(K, 1, i);
                REQUIRE(a.rank.tag == RankValue::Tag::Finite);
                CHECK(a.rank.finite_rank == k_rank(r1, r2, 2 * i - 1));
            }
        }
}

TEST_CASE("chern pullback expressions") {
    PullbackExpr e = chern_pontryagin_pullback(3);
    CHECK(e.zero);
    CHECK(e.to_string() == "0");

    e = chern_pontryagin_pullback(4);
    CHECK_FALSE(e.zero);
    CHECK(e.j == 2);
    CHECK(e.sign == 1);
    CHECK(e.factorial.to_int64() == 6);
    CHECK(e.paper_indexing);
    CHECK(e.classical_indexing);

    e = chern_pontryagin_pullback(2);
    CHECK(e.j == 1);
    CHECK(e.sign == -1);
    CHECK(e.factorial.to_int64() == 1);
    CHECK_FALSE(e.paper_indexing);  // the generator list starting at p_2 misses p_1
    CHECK(e.classical_indexing);
}

TEST_CASE("conjecture window") {
    ConjectureWindow w = conjecture_window(Q());
    CHECK(w.delta == 1u);
    CHECK(w.allows(0, 0));
    CHECK(w.allows(1, 7));
    CHECK_FALSE(w.allows(2, 5));
    CHECK_FALSE(w.allows(-1, 0));

    w = conjecture_window(Field::finite(5));
    CHECK(w.delta == 0u);
    CHECK(w.allows(0, 0));
    CHECK_FALSE(w.allows(1, 1));

    w = conjecture_window(Field::rational_function(Q(), {"t", "u"}));
    CHECK(w.delta == 3u);
    CHECK(w.allows(3, 3));
    CHECK_FALSE(w.allows(4, 9));
}

TEST_CASE("conjecture consistency for delta <= 1 fields") {
    std::vector<FieldPtr> corpus{Q(), Qi(), Field::number_field(3, 1, 1), Field::finite(5),
                                 Field::finite(7), Qt(),
                                 Field::rational_function(Field::finite(5), {"t"})};
    for (const auto& K : corpus) {
        auto bad = conjecture_consistency_report(K, -3, 9, -3, 9);
        for (const auto& b : bad) MESSAGE(b);
        CHECK(bad.empty());
    }
}

TEST_CASE("rule determinism: the regression corpus is stable") {
    // evaluating twice (and with the conjecture flag toggled where it is
    // hypothesis-disjoint) gives identical answers
    std::vector<FieldPtr> corpus{Q(), Qi(), Qt(), Field::finite(3)};
    for (const auto& K : corpus)
        for (int n = -1; n <= 4; ++n)
            for (int i = -1; i <= 6; ++i) {
                RankAnswer a = rank_HB(K, n, i);
                RankAnswer b = rank_HB(K, n, i);
                CHECK(a.rank == b.rank);
                if (K->characteristic() == 0) {
                    RankOptions opts;
                    opts.assume_conjectures = true;
                    CHECK(rank_HB(K, n, i, opts).rank == a.rank);
                }
            }
}
