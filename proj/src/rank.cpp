#include "rostforge/rank.hpp"

#include <stdexcept>

#include "rostforge/element.hpp"
#include "rostforge/fieldext.hpp"
#include "rostforge/points.hpp"

namespace rostforge {

std::string RankValue::to_string() const {
    switch (tag) {
        case Tag::Zero: return "0";
        case Tag::Finite: return "rank " + std::to_string(finite_rank);
        case Tag::CountablyInfinite: return "countably infinite";
        case Tag::CardinalOfField: return "card(K)";
        case Tag::Unknown:
            if (lower_bound && *lower_bound == Tag::CountablyInfinite)
                return "unknown (>= countably infinite)";
            return "unknown";
    }
    return "?";
}

std::optional<std::pair<unsigned, unsigned>> number_field_signature(const FieldPtr& K) {
    switch (K->kind()) {
        case Field::Kind::Rationals: return std::pair<unsigned, unsigned>{1, 0};
        case Field::Kind::Number: return std::pair<unsigned, unsigned>{K->nf_r1(), K->nf_r2()};
        case Field::Kind::FiniteExtension:
            if (K->base()->is_rationals()) return signature_of_extension(K->defining_poly());
            return std::nullopt;
        default: return std::nullopt;
    }
}

namespace {

bool is_number_field(const FieldPtr& K) { return number_field_signature(K).has_value(); }

bool is_line_over_number_field(const FieldPtr& K) {
    return K->kind() == Field::Kind::RationalFunction && is_number_field(K->base());
}

// countable fields: everything built from Q or F_p by the tower constructors
bool is_countable(const FieldPtr& K) {
    return K->kind() != Field::Kind::Declared || !K->declared_uncountable();
}

TraceStep step(std::string id, std::string cite, std::string hyp) {
    return TraceStep{std::move(id), std::move(cite), std::move(hyp)};
}

}  // namespace

RankAnswer rank_HB(const FieldPtr& K, int n, int i, const RankOptions& opts) {
    DerivationTrace tr;
    // (0,0): the unit
    if (n == 0 && i == 0) {
        tr.push_back(step("unit.h00", "H^{0,0} = Q for any field",
                          "degree and twist both zero"));
        return {RankValue::finite(1), tr};
    }
    // weight window vanishing for fields
    if (i < 0 || n > 2 * i || n > i) {
        tr.push_back(step("vanishing.weight-window",
                          "motivic complexes: H^{n,i} = 0 for i < 0, n > 2i, or n > i on a field",
                          "(" + std::to_string(n) + "," + std::to_string(i) + ") outside the window"));
        return {RankValue::zero(), tr};
    }
    // finite fields
    if (K->is_finite()) {
        tr.push_back(step("quillen.finite-field", "Quillen: K-theory of finite fields is torsion",
                          K->to_string() + " finite, (n,i) != (0,0)"));
        return {RankValue::zero(), tr};
    }
    // number fields: the Borel rank table
    if (auto sig = number_field_signature(K)) {
        auto [r1, r2] = *sig;
        if (n == 1 && i == 1) {
            tr.push_back(step("unit-group.global", "K^x tensor Q for a global field has countable rank",
                              "n = i = 1 over " + K->to_string()));
            return {RankValue::countable(), tr};
        }
        if (n == 1 && i > 1) {
            bool even = i % 2 == 0;
            tr.push_back(step("borel.number-field",
                              "Borel: rank of K_{2i-1}(O_K) with its weight grading",
                              std::string("n = 1, i ") + (even ? "even" : "odd") + ", signature (" +
                                  std::to_string(r1) + "," + std::to_string(r2) + ")"));
            return {RankValue::finite(even ? r2 : r1 + r2), tr};
        }
        tr.push_back(step("borel.number-field", "Borel rank table: all other cells vanish",
                          "number field, cell off the n <= 1 rows"));
        return {RankValue::zero(), tr};
    }
    // K(t) for a number field K: the rational-curve computation
    if (is_line_over_number_field(K)) {
        const FieldPtr& base = K->base();
        if (n == 1 && i == 1) {
            tr.push_back(step("rat-curve.units", "K(t)^x tensor Q: constants plus the divisor part",
                              "n = i = 1 over " + K->to_string()));
            return {RankValue::countable(), tr};
        }
        if (n == 1 && i > 1) {
            RankAnswer inherited = rank_HB(base, n, i, opts);
            tr.push_back(step("rat-curve.inherit-line-1",
                              "split projection to the constants in weight > 1",
                              "n = 1 row inherited from " + base->to_string()));
            for (auto& s : inherited.trace) tr.push_back(s);
            return {inherited.rank, tr};
        }
        if (n == 2 && i >= 2) {
            tr.push_back(step("rat-curve.divisor-part",
                              "H^{2,i}(K(t)) is the sum of H^{1,i-1}(kappa_x) over closed points",
                              "n = 2, i >= 2; infinitely many closed points contribute"));
            return {RankValue::countable(), tr};
        }
        tr.push_back(step("rat-curve.vanishing", "rational-curve table: remaining cells vanish",
                          "n >= 3 or low weight over " + K->to_string()));
        return {RankValue::zero(), tr};
    }
    // function fields over a finite field with delta = 1
    if (K->characteristic() > 0 && K->transcendence_degree() == 1u) {
        if (n == 1 && i == 1) {
            tr.push_back(step("unit-group.global", "units of a global function field have countable rank",
                              "n = i = 1 over " + K->to_string()));
            return {RankValue::countable(), tr};
        }
        tr.push_back(step("harder.curves",
                          "Harder: rational K-theory of curves over finite fields vanishes",
                          "char p, transcendence degree 1"));
        return {RankValue::zero(), tr};
    }
    if (opts.assume_conjectures && K->characteristic() > 0 && n != i) {
        tr.push_back(step("beilinson-parshin.assumed",
                          "Beilinson-Parshin (assumed): H^{n,i} = 0 for n != i in char p",
                          "--assume-conjectures"));
        return {RankValue::zero(), tr};
    }
    // declared uncountable fields of infinite transcendence degree
    if (K->kind() == Field::Kind::Declared && K->declared_uncountable() &&
        K->declared_infinite_trdeg() && n >= 2 && i >= n) {
        tr.push_back(step("uncountable.card", "rank equals the cardinality of the field",
                          "uncountable, infinite transcendence degree, i >= n >= 2"));
        return {RankValue::card_of_field(), tr};
    }
    // countable (1,1) cells beyond the named families
    if (n == 1 && i == 1 && is_countable(K) && K->kind() != Field::Kind::Declared) {
        tr.push_back(step("unit-group.countable", "K^x tensor Q is countable of infinite rank",
                          "n = i = 1 over the countable field " + K->to_string()));
        return {RankValue::countable(), tr};
    }
    // characteristic 0, transcendence degree d: infinite rank in the band
    if (K->characteristic() == 0) {
        auto td = K->transcendence_degree();
        unsigned d = td ? *td : 0;
        bool inf_td = !td.has_value();
        if ((inf_td || d >= 1) && n >= 2 && (inf_td || n <= static_cast<int>(d) + 1) && i >= n) {
            tr.push_back(step("transcendence.inf-rank",
                              "purely transcendental subfields force infinite rank",
                              "char 0, trdeg >= " + std::to_string(n - 1) + ", n in [2, d+1], i >= n"));
            return {RankValue::unknown(RankValue::Tag::CountablyInfinite), tr};
        }
    }
    tr.push_back(step("fallback.unknown", "no implemented statement matches", "fallback"));
    return {RankValue::unknown(), tr};
}

RankAnswer rank_HB_OK(const FieldPtr& K, int n, int i, const RankOptions& opts) {
    auto sig = number_field_signature(K);
    if (!sig) throw std::invalid_argument("rank_HB_OK: not a number field descriptor");
    auto [r1, r2] = *sig;
    DerivationTrace tr;
    if (n == 0 && i == 0) {
        tr.push_back(step("unit.h00", "H^{0,0} = Q", "degree and twist both zero"));
        return {RankValue::finite(1), tr};
    }
    if (n == 1 && i == 1) {
        tr.push_back(step("dirichlet.units", "Dirichlet unit theorem: rank r1 + r2 - 1",
                          "n = i = 1 over the ring of integers"));
        return {RankValue::finite(static_cast<long long>(r1) + r2 - 1), tr};
    }
    if (n == 2 && i == 1) {
        tr.push_back(step("pic.finite", "finiteness of the class group: Pic(O_K) tensor Q = 0",
                          "n = 2, i = 1"));
        return {RankValue::finite(0), tr};
    }
    if (i < 0 || n > 2 * i || n - i > 1) {
        tr.push_back(step("vanishing.weight-window",
                          "H^{n,i} = 0 for i < 0, n > 2i, or n - i > dim", "dimension-1 window"));
        return {RankValue::zero(), tr};
    }
    if (n == 3 && i == 2) {
        tr.push_back(step("localization.ok-vs-k",
                          "H^{3,2}(O_K) embeds in H^{3,2}(K) = 0 by localization in weight >= 2",
                          "n = 3, i = 2"));
        return {RankValue::finite(0), tr};
    }
    if (n == 1 && i > 1) {
        bool even = i % 2 == 0;
        tr.push_back(step("borel.number-field", "Borel rank table for the ring of integers",
                          std::string("n = 1, i ") + (even ? "even" : "odd")));
        return {RankValue::finite(even ? r2 : static_cast<long long>(r1) + r2), tr};
    }
    (void)opts;
    tr.push_back(step("borel.number-field", "Borel rank table: all other cells vanish",
                      "ring of integers, remaining cells"));
    return {RankValue::zero(), tr};
}

std::vector<GradedGenerator> borel_generators(unsigned r1, unsigned r2, int max_degree) {
    std::vector<GradedGenerator> out;
    for (int i = 2;; ++i) {
        int degree = 2 * i - 1;
        if (degree > max_degree) break;
        int mult = static_cast<int>(r2);
        if (i % 2 == 1) mult += static_cast<int>(r1);  // r1 generators for odd weight >= 3
        if (mult > 0) out.push_back({degree, i, mult});
    }
    return out;
}

long long k_rank(unsigned r1, unsigned r2, int n) {
    if (n < 2) throw std::invalid_argument("k_rank: degree must be >= 2");
    if (n % 2 == 0) return 0;
    int i = (n + 1) / 2;
    if (i < 2) return 0;
    long long m = r2;
    if (i % 2 == 1) m += r1;
    return m;
}

std::string PullbackExpr::to_string() const {
    if (zero) return "0";
    std::string s = sign < 0 ? "-" : "";
    s += factorial.to_string() + "*p_" + std::to_string(j);
    if (remainder) s += " + decomposable remainder";
    return s;
}

PullbackExpr chern_pontryagin_pullback(int i) {
    if (i < 2) throw std::invalid_argument("chern_pontryagin_pullback: i must be >= 2");
    PullbackExpr e;
    e.i = i;
    if (i % 2 == 1) {
        e.zero = true;
        e.remainder = false;
        return e;
    }
    e.j = i / 2;
    e.sign = (e.j % 2 == 0) ? 1 : -1;
    e.factorial = BigInt(1);
    for (int k = 2; k <= 2 * e.j - 1; ++k) e.factorial *= BigInt(k);
    e.paper_indexing = e.j >= 2;      // generator list starting at p_2
    e.classical_indexing = e.j >= 1;  // classical list starting at p_1
    return e;
}

bool ConjectureWindow::allows(int n, int i) const {
    if (n == 0 && i == 0) return true;
    if (n < 1) return false;
    if (!delta) return true;  // infinite Kronecker dimension: band unbounded
    return n <= static_cast<int>(*delta);
}

ConjectureWindow conjecture_window(const FieldPtr& K) {
    ConjectureWindow w;
    auto td = K->transcendence_degree();
    if (!td) {
        w.delta = std::nullopt;
        return w;
    }
    w.delta = kronecker_dimension(K);
    return w;
}

std::vector<std::string> conjecture_consistency_report(const FieldPtr& K, int n_lo, int n_hi,
                                                       int i_lo, int i_hi, const RankOptions& opts) {
    ConjectureWindow w = conjecture_window(K);
    std::vector<std::string> bad;
    for (int n = n_lo; n <= n_hi; ++n)
        for (int i = i_lo; i <= i_hi; ++i) {
            RankAnswer a = rank_HB(K, n, i, opts);
            if (a.rank.tag == RankValue::Tag::Unknown) continue;
            if (!a.rank.is_zero_rank() && !w.allows(n, i))
                bad.push_back(K->to_string() + " at (" + std::to_string(n) + "," + std::to_string(i) +
                              "): " + a.rank.to_string() + " outside the window");
        }
    return bad;
}

}  // namespace rostforge
