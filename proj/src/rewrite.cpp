#include "rostforge/rewrite.hpp"

#include <cstdlib>
#include <stdexcept>

#include "rostforge/errors.hpp"
#include "rostforge/fieldext.hpp"
#include "rostforge/places.hpp"

namespace rostforge {

// ---------------------------------------------------------------------------
// Generator

Generator Generator::restriction(FieldMorphism phi) {
    Generator g;
    g.kind_ = Kind::Restriction;
    g.phi_ = std::move(phi);
    return g;
}

Generator Generator::norm(FieldMorphism phi) {
    Generator g;
    g.kind_ = Kind::Norm;
    g.phi_ = std::move(phi);
    return g;
}

Generator Generator::symbol_mult(MilnorClass x) {
    Generator g;
    g.kind_ = Kind::SymbolMult;
    g.sym_ = std::move(x);
    return g;
}

Generator Generator::residue_at(Valuation v) {
    Generator g;
    g.kind_ = Kind::Residue;
    g.val_ = std::move(v);
    return g;
}

FieldPtr Generator::source_field() const {
    switch (kind_) {
        case Kind::Restriction: return phi_->from();
        case Kind::Norm: return phi_->to();
        case Kind::SymbolMult: return sym_->field();
        case Kind::Residue: return val_->field();
    }
    throw std::logic_error("generator: bad kind");
}

FieldPtr Generator::target_field() const {
    switch (kind_) {
        case Kind::Restriction: return phi_->to();
        case Kind::Norm: return phi_->from();
        case Kind::SymbolMult: return sym_->field();
        case Kind::Residue: return val_->residue_field();
    }
    throw std::logic_error("generator: bad kind");
}

int Generator::twist_delta() const {
    switch (kind_) {
        case Kind::Restriction:
        case Kind::Norm: return 0;
        case Kind::SymbolMult: return sym_->degree();
        case Kind::Residue: return -1;
    }
    return 0;
}

bool Generator::equals(const Generator& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::Restriction:
        case Kind::Norm: return phi_->equals(*o.phi_);
        case Kind::SymbolMult: return *sym_ == *o.sym_;
        case Kind::Residue: return val_->equals(*o.val_);
    }
    return false;
}

std::string Generator::key() const {
    switch (kind_) {
        case Kind::Restriction: return "r" + phi_->key();
        case Kind::Norm: return "n" + phi_->key();
        case Kind::SymbolMult: return "g" + sym_->key();
        case Kind::Residue: return "d" + val_->key();
    }
    return "?";
}

std::string Generator::to_string() const {
    switch (kind_) {
        case Kind::Restriction: return "rst[" + phi_->to_string() + "]";
        case Kind::Norm: return "nrm[" + phi_->to_string() + "]";
        case Kind::SymbolMult: return "sym[" + sym_->to_string() + "]";
        case Kind::Residue: return "res[" + val_->to_string() + "]";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// MorphismWord

namespace {

std::string seq_key(const GenSeq& seq) {
    std::string s;
    for (const auto& g : seq) {
        std::string k = g.key();
        s += std::to_string(k.size()) + "#" + k;
    }
    return s;
}

}  // namespace

ObjectRef MorphismWord::typecheck(const ObjectRef& source, const GenSeq& seq) {
    ObjectRef cur = source;
    for (size_t i = seq.size(); i-- > 0;) {
        const Generator& g = seq[i];
        if (!same_field(g.source_field(), cur.field))
            throw std::invalid_argument("morphism word: generator " + g.to_string() +
                                        " does not start at " + cur.to_string());
        cur = ObjectRef{g.target_field(), cur.twist + g.twist_delta()};
    }
    return cur;
}

MorphismWord MorphismWord::zero(ObjectRef source, ObjectRef target) {
    MorphismWord w;
    w.source_ = std::move(source);
    w.target_ = std::move(target);
    return w;
}

MorphismWord MorphismWord::identity(ObjectRef obj) {
    MorphismWord w;
    w.source_ = obj;
    w.target_ = obj;
    w.terms_.push_back({BigInt(1), {}});
    return w;
}

MorphismWord MorphismWord::single(ObjectRef source, GenSeq seq, BigInt coeff) {
    MorphismWord w;
    w.target_ = typecheck(source, seq);
    w.source_ = std::move(source);
    w.add_term(coeff, std::move(seq));
    return w;
}

void MorphismWord::add_term(const BigInt& c, GenSeq seq) {
    if (c.is_zero()) return;
    std::string k = seq_key(seq);
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (seq_key(it->second) == k) {
            it->first += c;
            if (it->first.is_zero()) terms_.erase(it);
            return;
        }
        if (seq_key(it->second) > k) {
            terms_.insert(it, {c, std::move(seq)});
            return;
        }
    }
    terms_.push_back({c, std::move(seq)});
}

MorphismWord MorphismWord::scaled(const BigInt& c) const {
    MorphismWord w = zero(source_, target_);
    for (const auto& [k, seq] : terms_) w.add_term(k * c, seq);
    return w;
}

MorphismWord operator+(const MorphismWord& a, const MorphismWord& b) {
    if (!a.source_.equals(b.source_) || !a.target_.equals(b.target_))
        throw std::invalid_argument("morphism word +: object mismatch");
    MorphismWord w = a;
    for (const auto& [c, seq] : b.terms_) w.add_term(c, seq);
    return w;
}

MorphismWord MorphismWord::compose(const MorphismWord& w1, const MorphismWord& w2) {
    if (!w2.target_.equals(w1.source_))
        throw std::invalid_argument("morphism word compose: target of inner term differs from source of outer (field or twist mismatch)");
    MorphismWord w = zero(w2.source_, w1.target_);
    for (const auto& [c1, s1] : w1.terms_)
        for (const auto& [c2, s2] : w2.terms_) {
            GenSeq seq = s1;
            seq.insert(seq.end(), s2.begin(), s2.end());
            w.add_term(c1 * c2, std::move(seq));
        }
    return w;
}

std::string MorphismWord::to_string() const {
    if (terms_.empty()) return "0 : " + source_.to_string() + " -> " + target_.to_string();
    std::string s;
    for (const auto& [c, seq] : terms_) {
        std::string t;
        if (seq.empty())
            t = "id";
        else
            for (size_t i = 0; i < seq.size(); ++i) t += (i ? " . " : "") + seq[i].to_string();
        if (!c.is_one()) t = c.to_string() + "*(" + t + ")";
        s += (s.empty() ? "" : " + ") + t;
    }
    return s + " : " + source_.to_string() + " -> " + target_.to_string();
}

// ---------------------------------------------------------------------------
// rewrite rules

namespace {

bool all_entries_units(const MilnorClass& x, const Valuation& v) {
    for (const auto& [entries, c] : x.terms())
        for (const auto& e : entries)
            if (v.valuation_of(e) != 0) return false;
    return true;
}

MilnorClass reduce_units_class(const MilnorClass& x, const Valuation& v) {
    std::vector<std::pair<std::vector<Element>, BigInt>> terms;
    for (const auto& [entries, c] : x.terms()) {
        std::vector<Element> reduced;
        reduced.reserve(entries.size());
        for (const auto& e : entries) reduced.push_back(v.reduce_unit(e));
        terms.push_back({std::move(reduced), c});
    }
    return raw_combination(v.residue_field(), x.degree(), std::move(terms));
}

std::optional<MilnorClass> try_unrestrict_class(const MilnorClass& x, const FieldMorphism& phi) {
    if (phi.image()) return std::nullopt;
    std::vector<std::pair<std::vector<Element>, BigInt>> terms;
    for (const auto& [entries, c] : x.terms()) {
        std::vector<Element> lifted;
        for (const auto& e : entries) {
            auto u = try_unembed(e, phi.from());
            if (!u) return std::nullopt;
            lifted.push_back(*u);
        }
        terms.push_back({std::move(lifted), c});
    }
    return raw_combination(phi.from(), x.degree(), std::move(terms));
}

// x = x0 + {-pi} x1 with x0, x1 classes of v-units
std::pair<MilnorClass, MilnorClass> pi_decompose(const MilnorClass& x, const Valuation& v) {
    const FieldPtr& E = x.field();
    std::vector<std::pair<std::vector<Element>, BigInt>> t0, t1;
    struct Slot {
        bool is_pi;
        Element unit;
    };
    for (const auto& [entries, coeff] : x.terms()) {
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
            }
            partials = std::move(next);
        }
        for (auto& [c, slots] : partials) {
            BigInt c2 = c;
            std::vector<Slot> seq = slots;
            for (;;) {
                int moved = 0;
                for (size_t i = 0; i < seq.size(); ++i) {
                    if (!seq[i].is_pi) continue;
                    for (size_t j = i; j > static_cast<size_t>(moved); --j) {
                        std::swap(seq[j], seq[j - 1]);
                        c2 = -c2;
                    }
                    ++moved;
                }
                bool merged = false;
                for (size_t i = 0; i + 1 < seq.size(); ++i)
                    if (seq[i].is_pi && seq[i + 1].is_pi) {
                        seq[i + 1] = {false, -Element::one(E)};
                        merged = true;
                        break;
                    }
                if (!merged) break;
            }
            std::vector<Element> units;
            bool has_pi = !seq.empty() && seq[0].is_pi;
            for (size_t i = has_pi ? 1 : 0; i < seq.size(); ++i) units.push_back(seq[i].unit);
            if (!has_pi) {
                t0.push_back({std::move(units), c2});
            } else {
                // {pi} U = {-pi} U + {-1} U
                t1.push_back({units, c2});
                std::vector<Element> with_minus_one{-Element::one(E)};
                with_minus_one.insert(with_minus_one.end(), units.begin(), units.end());
                t0.push_back({std::move(with_minus_one), c2});
            }
        }
    }
    return {raw_combination(E, x.degree(), std::move(t0)),
            raw_combination(E, x.degree() - 1, std::move(t1))};
}

using Repl = std::vector<std::pair<BigInt, GenSeq>>;

struct RuleHit {
    Repl repl;
    size_t begin, len;
    std::string tag;
};

std::optional<RuleHit> try_single(const GenSeq& seq, size_t i) {
    const Generator& g = seq[i];
    if (g.kind() == Generator::Kind::SymbolMult) {
        if (g.sym().is_zero()) return RuleHit{{}, i, 1, "gamma-zero"};
        if (g.sym().degree() == 0)
            return RuleHit{{{g.sym().degree0_value(), {}}}, i, 1, "gamma-scalar"};
    }
    if ((g.kind() == Generator::Kind::Restriction || g.kind() == Generator::Kind::Norm) &&
        g.phi().is_identity())
        return RuleHit{{{BigInt(1), {}}}, i, 1, "id"};
    return std::nullopt;
}

std::optional<RuleHit> try_pair(const GenSeq& seq, size_t i) {
    const Generator& g = seq[i];
    const Generator& h = seq[i + 1];
    using K = Generator::Kind;
    if (g.kind() == K::SymbolMult && h.kind() == K::SymbolMult)
        return RuleHit{{{BigInt(1), {Generator::symbol_mult(product(g.sym(), h.sym()))}}}, i, 2, "R0"};
    if (g.kind() == K::Restriction && h.kind() == K::Restriction) {
        try {
            FieldMorphism comp = FieldMorphism::compose(g.phi(), h.phi());
            return RuleHit{{{BigInt(1), {Generator::restriction(std::move(comp))}}}, i, 2, "R1a"};
        } catch (const NotComputableError&) {
            return std::nullopt;
        }
    }
    if (g.kind() == K::Norm && h.kind() == K::Norm) {
        try {
            FieldMorphism comp = FieldMorphism::compose(h.phi(), g.phi());
            return RuleHit{{{BigInt(1), {Generator::norm(std::move(comp))}}}, i, 2, "R1b"};
        } catch (const NotComputableError&) {
            return std::nullopt;
        }
    }
    if (g.kind() == K::Restriction && h.kind() == K::SymbolMult)
        return RuleHit{{{BigInt(1),
                         {Generator::symbol_mult(restrict_class(h.sym(), g.phi())),
                          Generator::restriction(g.phi())}}},
                       i,
                       2,
                       "R2a"};
    // note: phi^! . phi_* is already in normal shape (sigma = 1); collapsing
    // it to the degree scalar would trade an entry power for a coefficient,
    // which the lazy canonical form cannot reconcile over infinite fields
    if (g.kind() == K::Norm && h.kind() == K::SymbolMult) {
        // R2b: lift the class through the norm when it is a restriction
        auto lifted = try_unrestrict_class(h.sym(), g.phi());
        if (lifted && restrict_class(*lifted, g.phi()) == h.sym())
            return RuleHit{{{BigInt(1),
                             {Generator::symbol_mult(std::move(*lifted)), Generator::norm(g.phi())}}},
                           i,
                           2,
                           "R2b"};
        return std::nullopt;
    }
    if (g.kind() == K::Restriction && h.kind() == K::Norm) {
        auto pts = tensor_points(h.phi(), g.phi());
        if (!pts) return std::nullopt;  // stuck: unimplemented tensor decomposition
        Repl repl;
        for (auto& p : *pts)
            repl.push_back({BigInt(p.length),
                            {Generator::norm(p.norm_side), Generator::restriction(p.restriction_side)}});
        return RuleHit{std::move(repl), i, 2, "R1c"};
    }
    if (g.kind() == K::Residue && h.kind() == K::Restriction) {
        if (valuation_trivial_on_image(g.val(), h.phi())) return RuleHit{{}, i, 2, "R3c"};
        auto rp = restrict_valuation(g.val(), h.phi());
        if (!rp) return std::nullopt;  // stuck: place restriction not implemented
        return RuleHit{{{BigInt(rp->e),
                         {Generator::restriction(rp->residue_map), Generator::residue_at(rp->w)}}},
                       i,
                       2,
                       "R3a"};
    }
    if (g.kind() == K::Residue && h.kind() == K::Norm) {
        auto ext = extend_valuation(g.val(), h.phi());
        if (!ext) return std::nullopt;  // stuck: place extensions not implemented
        Repl repl;
        for (auto& p : *ext)
            repl.push_back({BigInt(1), {Generator::norm(p.residue_map), Generator::residue_at(p.w)}});
        return RuleHit{std::move(repl), i, 2, "R3b"};
    }
    if (g.kind() == K::Residue && h.kind() == K::SymbolMult) {
        const Valuation& v = g.val();
        const MilnorClass& x = h.sym();
        if (all_entries_units(x, v)) {
            // the commutation sign is convention-independent: it cancels in
            // d' = -d on both sides
            MilnorClass xbar = reduce_units_class(x, v);
            BigInt sign = (x.degree() % 2 == 0) ? BigInt(1) : BigInt(-1);
            Repl repl;
            if (!xbar.is_zero())
                repl.push_back({sign, {Generator::symbol_mult(std::move(xbar)),
                                       Generator::residue_at(v)}});
            return RuleHit{std::move(repl), i, 2, "R3e"};
        }
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<RuleHit> try_triple(const GenSeq& seq, size_t i) {
    const Generator& g = seq[i];
    const Generator& h = seq[i + 1];
    const Generator& k = seq[i + 2];
    using K = Generator::Kind;
    if (g.kind() == K::Norm && h.kind() == K::SymbolMult && k.kind() == K::Restriction &&
        g.phi().equals(k.phi())) {
        try {
            MilnorClass collapsed = norm_class(h.sym(), g.phi());
            return RuleHit{{{BigInt(1), {Generator::symbol_mult(std::move(collapsed))}}}, i, 3, "R2c"};
        } catch (const NotComputableError&) {
            // higher-degree norm: already in normal shape
            return std::nullopt;
        }
    }
    if (g.kind() == K::Residue && h.kind() == K::SymbolMult && k.kind() == K::Restriction &&
        !all_entries_units(h.sym(), g.val())) {
        const Valuation& v = g.val();
        if (valuation_trivial_on_image(v, k.phi())) {
            FieldPtr kv = v.residue_field();
            if (!has_canonical_embedding(k.phi().from(), kv)) return std::nullopt;
            auto [x0, x1] = pi_decompose(h.sym(), v);
            Repl repl;
            if (!x0.is_zero())
                repl.push_back({BigInt(1), {Generator::residue_at(v), Generator::symbol_mult(x0),
                                            Generator::restriction(k.phi())}});
            if (!x1.is_zero()) {
                MilnorClass x1bar = reduce_units_class(x1, v);
                if (!x1bar.is_zero()) {
                    GenSeq piece{Generator::symbol_mult(std::move(x1bar)),
                                 Generator::restriction(FieldMorphism::embedding(k.phi().from(), kv))};
                    repl.push_back({BigInt(1), std::move(piece)});
                }
            }
            return RuleHit{std::move(repl), i, 3, "R3d"};
        }
        auto lifted = try_unrestrict_class(h.sym(), k.phi());
        if (lifted && restrict_class(*lifted, k.phi()) == h.sym())
            return RuleHit{{{BigInt(1),
                             {Generator::residue_at(v), Generator::restriction(k.phi()),
                              Generator::symbol_mult(std::move(*lifted))}}},
                           i,
                           3,
                           "R2a-rev"};
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<RuleHit> find_rule(const GenSeq& seq) {
    for (size_t n = seq.size(); n-- > 0;)
        if (auto hit = try_single(seq, n)) return hit;
    if (seq.size() >= 2)
        for (size_t n = seq.size() - 1; n-- > 0;)
            if (auto hit = try_pair(seq, n)) return hit;
    if (seq.size() >= 3)
        for (size_t n = seq.size() - 2; n-- > 0;)
            if (auto hit = try_triple(seq, n)) return hit;
    return std::nullopt;
}

}  // namespace

std::optional<RewriteStep> rewrite_step(const MorphismWord& w, const RewriteConfig& cfg) {
    (void)cfg;
    for (size_t ti = 0; ti < w.terms().size(); ++ti) {
        const auto& [coeff, seq] = w.terms()[ti];
        auto hit = find_rule(seq);
        if (!hit) continue;
        MorphismWord acc = MorphismWord::zero(w.source(), w.target());
        for (size_t tj = 0; tj < w.terms().size(); ++tj) {
            if (tj == ti) continue;
            acc = acc + MorphismWord::single(w.source(), w.terms()[tj].second, w.terms()[tj].first);
        }
        for (const auto& [c, piece] : hit->repl) {
            GenSeq ns(seq.begin(), seq.begin() + static_cast<long>(hit->begin));
            ns.insert(ns.end(), piece.begin(), piece.end());
            ns.insert(ns.end(), seq.begin() + static_cast<long>(hit->begin + hit->len), seq.end());
            acc = acc + MorphismWord::single(w.source(), std::move(ns), coeff * c);
        }
        return RewriteStep{std::move(acc), hit->tag};
    }
    return std::nullopt;
}

std::vector<std::string> stuck_positions(const MorphismWord& w) {
    std::vector<std::string> flags;
    using K = Generator::Kind;
    for (const auto& [coeff, seq] : w.terms()) {
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            const Generator& g = seq[i];
            const Generator& h = seq[i + 1];
            if (g.kind() == K::Restriction && h.kind() == K::Norm && !tensor_points(h.phi(), g.phi()))
                flags.push_back("R1c tensor decomposition not implemented at " + g.to_string() + " . " +
                                h.to_string());
            if (g.kind() == K::Restriction && h.kind() == K::Restriction) {
                try {
                    FieldMorphism::compose(g.phi(), h.phi());
                } catch (const NotComputableError&) {
                    flags.push_back("R1a composite not representable at " + g.to_string());
                }
            }
            if (g.kind() == K::Residue && h.kind() == K::Restriction &&
                !valuation_trivial_on_image(g.val(), h.phi()) &&
                !restrict_valuation(g.val(), h.phi()))
                flags.push_back("R3a place restriction not implemented at " + g.to_string() + " . " +
                                h.to_string());
            if (g.kind() == K::Residue && h.kind() == K::Norm && !extend_valuation(g.val(), h.phi()))
                flags.push_back("R3b place extensions not implemented at " + g.to_string() + " . " +
                                h.to_string());
            if (g.kind() == K::Residue && h.kind() == K::SymbolMult &&
                !all_entries_units(h.sym(), g.val()) && i + 2 < seq.size()) {
                const Generator& k = seq[i + 2];
                bool handled = k.kind() == K::Restriction &&
                               (valuation_trivial_on_image(g.val(), k.phi()) ||
                                (try_unrestrict_class(h.sym(), k.phi()).has_value()));
                if (!handled)
                    flags.push_back("residue blocked by a non-unit symbol at " + g.to_string() + " . " +
                                    h.to_string());
            }
        }
    }
    return flags;
}

RewriteConfig RewriteConfig::from_env() {
    RewriteConfig cfg;
    if (const char* env = std::getenv("ROSTFORGE_STEP_BUDGET")) {
        long long v = std::atoll(env);
        if (v > 0) cfg.step_budget = v;
    }
    return cfg;
}

namespace {

std::optional<RostNormalForm> parse_normal(const BigInt& coeff, const GenSeq& seq) {
    RostNormalForm nf;
    nf.coeff = coeff;
    size_t i = 0;
    using K = Generator::Kind;
    // optional leading gamma folds through the norm (or is sigma when phi = id)
    std::optional<MilnorClass> lead;
    if (i < seq.size() && seq[i].kind() == K::SymbolMult) {
        lead = seq[i].sym();
        ++i;
    }
    if (i < seq.size() && seq[i].kind() == K::Norm) {
        nf.phi = seq[i].phi();
        ++i;
    }
    if (i < seq.size() && seq[i].kind() == K::SymbolMult) {
        nf.sigma = seq[i].sym();
        ++i;
    }
    if (lead) {
        MilnorClass folded = nf.phi ? restrict_class(*lead, *nf.phi) : *lead;
        nf.sigma = nf.sigma ? product(folded, *nf.sigma) : folded;
    }
    if (i < seq.size() && seq[i].kind() == K::Restriction) {
        nf.psi = seq[i].phi();
        ++i;
    }
    while (i < seq.size() && seq[i].kind() == K::Residue) {
        nf.vals.push_back(seq[i].val());
        ++i;
    }
    if (i < seq.size() && seq[i].kind() == K::SymbolMult) {
        nf.tau = seq[i].sym();
        ++i;
    }
    if (i != seq.size()) return std::nullopt;
    return nf;
}

}  // namespace

std::string RostNormalForm::to_string() const {
    std::string s = coeff.is_one() ? "" : coeff.to_string() + "*";
    bool first = true;
    auto app = [&](const std::string& part) {
        if (!first) s += " . ";
        s += part;
        first = false;
    };
    if (phi) app("nrm[" + phi->to_string() + "]");
    if (sigma) app("sym[" + sigma->to_string() + "]");
    if (psi) app("rst[" + psi->to_string() + "]");
    for (const auto& v : vals) app("res[" + v.to_string() + "]");
    if (tau) app("sym[" + tau->to_string() + "]");
    if (first) s += "id";
    return s;
}

NormalizeResult normalize(const MorphismWord& w, const RewriteConfig& cfg) {
    NormalizeResult res;
    res.word = w;
    while (res.steps < cfg.step_budget) {
        auto step = rewrite_step(res.word, cfg);
        if (!step) break;
        res.word = std::move(step->word);
        res.trace.push_back(step->rule);
        ++res.steps;
    }
    if (res.steps >= cfg.step_budget && rewrite_step(res.word, cfg)) {
        res.status = RewriteStatus::NonTerminating;
    } else {
        res.flags = stuck_positions(res.word);
        res.status = res.flags.empty() ? RewriteStatus::Normal : RewriteStatus::NotComputable;
    }
    for (const auto& [c, seq] : res.word.terms()) {
        auto nf = parse_normal(c, seq);
        if (nf) res.summands.push_back(std::move(*nf));
    }
    return res;
}

CMValue evaluate(const MorphismWord& w, const CMValue& x, const CycleModuleInterface& M) {
    CMValue acc = M.zero(ObjectRef{w.target().field, w.target().twist});
    for (const auto& [coeff, seq] : w.terms()) {
        CMValue val = x;
        for (size_t i = seq.size(); i-- > 0;) {
            const Generator& g = seq[i];
            switch (g.kind()) {
                case Generator::Kind::Restriction: val = M.restriction(g.phi(), val); break;
                case Generator::Kind::Norm: val = M.norm(g.phi(), val); break;
                case Generator::Kind::SymbolMult: val = M.symbol_action(g.sym(), val); break;
                case Generator::Kind::Residue: val = M.residue(g.val(), val); break;
            }
        }
        acc = M.add(acc, M.scale(coeff, val));
    }
    return acc;
}

}  // namespace rostforge
