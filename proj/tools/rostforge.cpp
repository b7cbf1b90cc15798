// rostforge: symbol calculus for Milnor K-theory, morphism-word
// normalization, motivic rank tables and truncated cycle complexes.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "rostforge/cycle_complex.hpp"
#include "rostforge/dsl.hpp"
#include "rostforge/errors.hpp"
#include "rostforge/milnor.hpp"
#include "rostforge/rank.hpp"
#include "rostforge/rewrite.hpp"

using nlohmann::json;
using namespace rostforge;

namespace {

constexpr int kSchema = 1;

struct Range {
    int lo = 0, hi = 0;
};

Range parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) throw ParseError(s, 0, "range expects a..b");
    Range r;
    r.lo = std::stoi(s.substr(0, dots));
    r.hi = std::stoi(s.substr(dots + 2));
    if (r.hi < r.lo) throw ParseError(s, dots + 2, "empty range");
    return r;
}

TameSign parse_sign(const std::string& s) {
    if (s == "classic") return TameSign::Classic;
    if (s == "rost") return TameSign::Rost;
    throw ParseError(s, 0, "tame sign must be classic or rost");
}

json rank_to_json(const RankValue& r) {
    json j;
    switch (r.tag) {
        case RankValue::Tag::Zero: j["kind"] = "zero"; break;
        case RankValue::Tag::Finite:
            j["kind"] = "finite";
            j["finite"] = r.finite_rank;
            break;
        case RankValue::Tag::CountablyInfinite: j["kind"] = "countably-infinite"; break;
        case RankValue::Tag::CardinalOfField: j["kind"] = "card-of-field"; break;
        case RankValue::Tag::Unknown:
            j["kind"] = "unknown";
            if (r.lower_bound && *r.lower_bound == RankValue::Tag::CountablyInfinite)
                j["lower_bound"] = "countably-infinite";
            break;
    }
    return j;
}

json trace_to_json(const DerivationTrace& tr) {
    json arr = json::array();
    for (const auto& s : tr)
        arr.push_back({{"rule", s.rule_id}, {"cites", s.citation}, {"matched", s.hypothesis}});
    return arr;
}

std::string rank_cell(const RankValue& r) {
    switch (r.tag) {
        case RankValue::Tag::Zero: return "0";
        case RankValue::Tag::Finite:
            return r.finite_rank == 0 ? "0 (fin)" : "Q^" + std::to_string(r.finite_rank);
        case RankValue::Tag::CountablyInfinite: return "inf(ctble)";
        case RankValue::Tag::CardinalOfField: return "card(K)";
        case RankValue::Tag::Unknown: return r.lower_bound ? ">=inf" : "?";
    }
    return "?";
}

json class_to_json(const MilnorClass& c) {
    json j;
    j["field"] = c.field()->to_string();
    j["degree"] = c.degree();
    j["value"] = c.to_string();
    return j;
}

json nf_to_json(const RostNormalForm& nf) {
    json j;
    j["coeff"] = nf.coeff.to_string();
    j["rank"] = nf.rank();
    if (nf.phi) j["phi"] = nf.phi->to_string();
    if (nf.sigma) j["sigma"] = nf.sigma->to_string();
    if (nf.psi) j["psi"] = nf.psi->to_string();
    json vals = json::array();
    for (const auto& v : nf.vals) vals.push_back(v.to_string());
    j["valuations"] = vals;
    if (nf.tau) j["tau"] = nf.tau->to_string();
    j["display"] = nf.to_string();
    return j;
}

SchemeModel parse_model(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) throw ParseError(s, 0, "model expects A1/<field> or P1/<field>");
    std::string kind = s.substr(0, slash);
    FieldPtr base = parse_field(s.substr(slash + 1));
    FieldPtr line = Field::rational_function(base, {"t"});
    if (kind == "A1") return SchemeModel::affine_line(line);
    if (kind == "P1") return SchemeModel::projective_line(line);
    throw ParseError(s, 0, "model kind must be A1 or P1");
}

void emit(const json& j, const std::string& format) {
    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rostforge: Milnor symbol calculus, cycle-module morphism words, motivic rank tables"};
    app.require_subcommand(1);

    std::string field_expr = "Q", format = "json", tame = "classic";
    std::string at_expr, down_to, word_expr, model_expr = "A1/F3";
    std::string n_range = "0..0", i_range = "0..0", degree_range = "2..10";
    int n = 0, i = 0, twist = 0, bound = 4, r1 = 1, r2 = 0;
    bool ok_table = false, assume_conjectures = false;
    std::vector<std::string> positional;

    auto* ksym = app.add_subcommand("ksym", "Milnor symbol calculus");
    auto* ksym_norm = ksym->add_subcommand("normalize", "canonical form of a class");
    ksym_norm->add_option("--field", field_expr, "field DSL expression")->required();
    ksym_norm->add_option("class", positional, "class literal, e.g. \"{t, t-1}\"")->required();

    auto* ksym_res = ksym->add_subcommand("residue", "tame symbol at a place");
    ksym_res->add_option("--field", field_expr)->required();
    ksym_res->add_option("--at", at_expr, "place: (poly), inf, or a prime")->required();
    ksym_res->add_option("--tame-sign", tame, "classic | rost");
    ksym_res->add_option("class", positional)->required();

    auto* ksym_nrm = ksym->add_subcommand("norm", "corestriction of a degree <= 1 class");
    ksym_nrm->add_option("--field", field_expr, "the class's field L")->required();
    ksym_nrm->add_option("--down-to", down_to, "the base field E of the finite extension")->required();
    ksym_nrm->add_option("class", positional)->required();

    auto* morph = app.add_subcommand("morph", "morphism words");
    auto* morph_norm = morph->add_subcommand("normalize", "rewrite a word to Rost normal form");
    morph_norm->add_option("--field", field_expr, "source field")->required();
    morph_norm->add_option("--twist", twist, "source twist")->capture_default_str();
    morph_norm->add_option("--tame-sign", tame);
    morph_norm->add_option("word", positional, "e.g. \"res[(t)] . sym[{t}]\"")->required();

    auto* rank_cmd = app.add_subcommand("rank", "rank of one motivic cohomology group");
    rank_cmd->add_option("--field", field_expr)->required();
    rank_cmd->add_option("--n", n)->required();
    rank_cmd->add_option("--i", i)->required();
    rank_cmd->add_flag("--ok", ok_table, "use the ring-of-integers table");
    rank_cmd->add_flag("--assume-conjectures", assume_conjectures);
    rank_cmd->add_option("--format", format, "json | md | text");

    auto* table_cmd = app.add_subcommand("rank-table", "rank table over (n, i) ranges");
    table_cmd->add_option("--field", field_expr)->required();
    table_cmd->add_option("--n-range", n_range, "a..b")->required();
    table_cmd->add_option("--i-range", i_range, "a..b")->required();
    table_cmd->add_flag("--ok", ok_table);
    table_cmd->add_flag("--assume-conjectures", assume_conjectures);
    table_cmd->add_option("--format", format, "json | md | text");

    auto* borel_cmd = app.add_subcommand("borel", "exterior generators and K-ranks");
    borel_cmd->add_option("--r1", r1)->required();
    borel_cmd->add_option("--r2", r2)->required();
    borel_cmd->add_option("--degree-range", degree_range, "a..b");
    borel_cmd->add_option("--format", format);

    auto* chow_cmd = app.add_subcommand("chow", "truncated Chow groups of the line");
    chow_cmd->add_option("--model", model_expr, "A1/<field> or P1/<field>")->required();
    chow_cmd->add_option("--twist", twist, "coefficient twist (K^M_1 level)");
    chow_cmd->add_option("--codim", i, "0 for A^0, 1 for A^1")->required();
    chow_cmd->add_option("--bound", bound, "degree truncation")->capture_default_str();
    chow_cmd->add_option("--format", format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ksym_norm->parsed()) {
            FieldPtr F = parse_field(field_expr);
            MilnorClass c = parse_class(positional.at(0), F);
            json j{{"schema", kSchema}, {"class", class_to_json(c)}};
            emit(j, format);
            return 0;
        }
        if (ksym_res->parsed()) {
            FieldPtr F = parse_field(field_expr);
            MilnorClass c = parse_class(positional.at(0), F);
            Valuation v = parse_valuation(at_expr, F);
            MilnorClass r = residue(c, v, parse_sign(tame));
            json j{{"schema", kSchema},
                   {"place", v.to_string()},
                   {"input", class_to_json(c)},
                   {"residue", class_to_json(r)}};
            emit(j, format);
            return 0;
        }
        if (ksym_nrm->parsed()) {
            FieldPtr L = parse_field(field_expr);
            FieldPtr E = parse_field(down_to);
            MilnorClass c = parse_class(positional.at(0), L);
            MilnorClass r = norm_class(c, FieldMorphism::embedding(E, L));
            json j{{"schema", kSchema}, {"input", class_to_json(c)}, {"norm", class_to_json(r)}};
            emit(j, format);
            return 0;
        }
        if (morph_norm->parsed()) {
            FieldPtr F = parse_field(field_expr);
            MorphismWord w = parse_morphism_word(positional.at(0), ObjectRef{F, twist});
            RewriteConfig cfg = RewriteConfig::from_env();
            cfg.sign = parse_sign(tame);
            NormalizeResult res = normalize(w, cfg);
            json j{{"schema", kSchema},
                   {"source", w.source().to_string()},
                   {"target", w.target().to_string()},
                   {"steps", res.steps},
                   {"status", res.status == RewriteStatus::Normal          ? "normal"
                              : res.status == RewriteStatus::NotComputable ? "not-computable"
                                                                           : "non-terminating"},
                   {"word", res.word.to_string()}};
            json summands = json::array();
            for (const auto& nf : res.summands) summands.push_back(nf_to_json(nf));
            j["summands"] = summands;
            j["trace"] = res.trace;
            j["flags"] = res.flags;
            emit(j, format);
            return res.status == RewriteStatus::Normal ? 0 : 3;
        }
        if (rank_cmd->parsed()) {
            FieldPtr K = parse_field(field_expr);
            RankOptions opts{assume_conjectures};
            RankAnswer a = ok_table ? rank_HB_OK(K, n, i, opts) : rank_HB(K, n, i, opts);
            json j{{"schema", kSchema}, {"field", K->to_string()},      {"n", n}, {"i", i},
                   {"ok", ok_table},    {"rank", rank_to_json(a.rank)}, {"trace", trace_to_json(a.trace)}};
            if (format == "text" || format == "md") {
                std::cout << "H^{" << n << "," << i << "}(" << (ok_table ? "O_" : "")
                          << K->to_string() << ") has rank: " << a.rank.to_string() << "\n";
                for (const auto& s : a.trace) std::cout << "  [" << s.rule_id << "] " << s.citation << "\n";
            } else {
                emit(j, format);
            }
            return 0;
        }
        if (table_cmd->parsed()) {
            FieldPtr K = parse_field(field_expr);
            Range nr = parse_range(n_range), ir = parse_range(i_range);
            RankOptions opts{assume_conjectures};
            if (format == "md" || format == "text") {
                std::cout << "| n \\ i |";
                for (int ii = ir.lo; ii <= ir.hi; ++ii) std::cout << " " << ii << " |";
                std::cout << "\n|---|";
                for (int ii = ir.lo; ii <= ir.hi; ++ii) std::cout << "---|";
                std::cout << "\n";
                for (int nn = nr.lo; nn <= nr.hi; ++nn) {
                    std::cout << "| " << nn << " |";
                    for (int ii = ir.lo; ii <= ir.hi; ++ii) {
                        RankAnswer a = ok_table ? rank_HB_OK(K, nn, ii, opts) : rank_HB(K, nn, ii, opts);
                        std::cout << " " << rank_cell(a.rank) << " |";
                    }
                    std::cout << "\n";
                }
                return 0;
            }
            json cells = json::array();
            for (int nn = nr.lo; nn <= nr.hi; ++nn)
                for (int ii = ir.lo; ii <= ir.hi; ++ii) {
                    RankAnswer a = ok_table ? rank_HB_OK(K, nn, ii, opts) : rank_HB(K, nn, ii, opts);
                    cells.push_back({{"field", K->to_string()},
                                     {"n", nn},
                                     {"i", ii},
                                     {"rank", rank_to_json(a.rank)},
                                     {"trace", trace_to_json(a.trace)}});
                }
            json j{{"schema", kSchema}, {"field", K->to_string()}, {"ok", ok_table}, {"cells", cells}};
            emit(j, format);
            return 0;
        }
        if (borel_cmd->parsed()) {
            Range dr = parse_range(degree_range);
            json gens = json::array();
            for (const auto& g : borel_generators(static_cast<unsigned>(r1), static_cast<unsigned>(r2),
                                                  dr.hi))
                gens.push_back({{"degree", g.degree}, {"weight", g.weight}, {"multiplicity", g.multiplicity}});
            json ranks = json::array();
            for (int d = std::max(2, dr.lo); d <= dr.hi; ++d)
                ranks.push_back({{"degree", d},
                                 {"k_rank", k_rank(static_cast<unsigned>(r1), static_cast<unsigned>(r2), d)}});
            json j{{"schema", kSchema}, {"r1", r1}, {"r2", r2}, {"generators", gens}, {"k_ranks", ranks}};
            emit(j, format);
            return 0;
        }
        if (chow_cmd->parsed()) {
            SchemeModel X = parse_model(model_expr);
            if (twist != 0 && twist != 1)
                throw NotComputableError("chow: only the K^M_1 coefficient level is implemented");
            ChowReport r = chow_group(X, i, bound);
            json factors = json::array();
            for (const auto& d : r.invariant_factors) factors.push_back(d.to_string());
            json j{{"schema", kSchema},
                   {"model", r.model},
                   {"twist", 1},
                   {"codim", r.codim},
                   {"bound", r.bound},
                   {"invariant_factors", factors},
                   {"free_rank", r.free_rank},
                   {"stabilized", r.stabilized}};
            emit(j, format);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << e.caret_message() << "\n";
        return 2;
    } catch (const NotComputableError& e) {
        json err{{"schema", kSchema}, {"error", "not-computable"}, {"detail", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 3;
    } catch (const std::exception& e) {
        json err{{"schema", kSchema}, {"error", "invalid-input"}, {"detail", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
    return 2;
}
