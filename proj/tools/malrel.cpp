// malrel: command-line front end for the relational workbench.
//
// Subcommands: closure, search, verify, operators, free.
// Exit codes: 0 success/found, 1 not-found/failed check, 2 parse or usage
// error, 3 cap exceeded.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "malrel/malcev.hpp"
#include "malrel/verifier.hpp"

using json = nlohmann::ordered_json;
using namespace malrel;

namespace {

constexpr int kSchemaVersion = 1;

struct Common {
    std::string algebra_path;
    std::string f_spec = "diag";
    std::string g_spec;
    std::string format = "text";
    std::uint64_t seed = 0;
    long long budget = 1000000;
    std::size_t cap_free = 200000;
    bool strict = false;
    int threads = 1;
};

void add_common(CLI::App* cmd, Common& c, bool wants_algebra) {
    if (wants_algebra)
        cmd->add_option("algebra", c.algebra_path, "algebra file")->required();
    cmd->add_option("-F", c.f_spec, "operator spec for F");
    cmd->add_option("-G", c.g_spec, "operator spec for G (defaults to F)");
    cmd->add_option("--format", c.format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("--seed", c.seed, "sampling seed");
    cmd->add_option("--budget", c.budget, "evaluation budget per clause")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--cap-free", c.cap_free, "free-algebra element cap")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--strict", c.strict, "reject non-admissible operator arguments");
    cmd->add_option("--threads", c.threads, "worker thread cap")
        ->check(CLI::PositiveNumber);
}

RelationOperator g_operator(const Common& c) {
    return parse_operator(c.g_spec.empty() ? c.f_spec : c.g_spec);
}

void emit(const Common& c, const json& doc, const std::string& text) {
    if (c.format == "structured")
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

std::string matrix_str(const BinaryRelation& r) {
    std::string out;
    for (int i = 0; i < r.size(); ++i) {
        for (int j = 0; j < r.size(); ++j) out += r.at(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

json relation_json(const BinaryRelation& r) {
    json pairs = json::array();
    for (auto [a, b] : r.pairs()) pairs.push_back({a, b});
    return pairs;
}

int cmd_closure(const Common& c, const std::string& rel_text,
                const std::string& expr_text) {
    FiniteAlgebra alg = load_algebra(c.algebra_path);
    RelationOperator F = parse_operator(c.f_spec);
    RelationOperator G = g_operator(c);

    EvalContext ctx;
    ctx.alg = &alg;
    ctx.strict = c.strict;
    ctx.env["R"] = realize_literal(parse_relation_literal(rel_text), alg);
    ctx.apply_op = [&](const std::string& name, const AdmissibleRelation& r) {
        if (name == "F") return apply_operator(F, alg, r);
        if (name == "G") return apply_operator(G, alg, r);
        return apply_operator(parse_operator(name), alg, r);
    };
    BinaryRelation out = eval_rel_expr(*parse_rel_expr(expr_text), ctx);

    json doc = {{"schema_version", kSchemaVersion},
                {"command", "closure"},
                {"algebra", alg.name},
                {"expr", expr_text},
                {"relation", relation_json(out)},
                {"coercions", ctx.coercions}};
    std::string text = out.str() + "\n" + matrix_str(out);
    for (const std::string& note : ctx.coercions) text += "note: " + note + "\n";
    emit(c, doc, text);
    return 0;
}

int cmd_search(const Common& c, const std::string& route) {
    FiniteAlgebra alg = load_algebra(c.algebra_path);
    RelationOperator F = parse_operator(c.f_spec);
    RelationOperator G = g_operator(c);

    std::optional<MalcevWitness> w;
    if (route == "iv")
        w = find_term_cond_iv(alg, F, G, c.cap_free);
    else if (route == "vii")
        w = check_cond_vii(alg, F, G, false, c.cap_free);
    else
        w = check_cond_x(alg, F, G, false, c.cap_free);

    json doc = {{"schema_version", kSchemaVersion},
                {"command", "search"},
                {"algebra", alg.name},
                {"F", F.str()},
                {"G", G.str()},
                {"route", route},
                {"found", w.has_value()}};
    std::string text;
    if (w) {
        doc["term"] = w->term.str();
        json inter = json::array();
        for (const Term& t : w->intermediate) inter.push_back(t.str());
        doc["intermediate"] = inter;
        text = "term: " + w->term.str() + "\n";
    } else {
        text = "none\n";
    }
    emit(c, doc, text);
    return w ? 0 : 1;
}

// Clause selection: comma-separated roman ids, ranges like "i-xiv", or the
// extra tokens "f2" (squared-operator check) and "equiv" (route agreement).
struct ClausePlan {
    std::vector<std::string> clauses;
    bool f2 = false;
    bool equiv = false;
};

ClausePlan parse_clause_selection(const std::string& text) {
    std::vector<std::string> order;
    for (const ClauseSpec& cs : theorem1_clauses()) order.push_back(cs.id);
    ClausePlan plan;
    if (text.empty()) {
        plan.clauses = order;
        plan.f2 = plan.equiv = true;
        return plan;
    }
    auto rank = [&](const std::string& id) {
        auto it = std::find(order.begin(), order.end(), id);
        if (it == order.end()) throw ParseError("unknown clause id: " + id);
        return static_cast<std::size_t>(it - order.begin());
    };
    std::string token;
    std::vector<std::string> tokens;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!token.empty()) tokens.push_back(token);
            token.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            token += ch;
        }
    }
    for (const std::string& t : tokens) {
        if (t == "f2") {
            plan.f2 = true;
        } else if (t == "equiv") {
            plan.equiv = true;
        } else if (auto dash = t.find('-'); dash != std::string::npos) {
            std::size_t lo = rank(t.substr(0, dash));
            std::size_t hi = rank(t.substr(dash + 1));
            if (lo > hi) throw ParseError("empty clause range: " + t);
            for (std::size_t i = lo; i <= hi; ++i)
                plan.clauses.push_back(order[i]);
        } else {
            plan.clauses.push_back(order[rank(t)]);
        }
    }
    return plan;
}

json report_json(const VerificationReport& rep) {
    json violations = json::array();
    for (const Violation& v : rep.violations)
        violations.push_back({{"bindings", v.bindings}, {"pair", v.pair}});
    return {{"clause", rep.clause},       {"status", status_str(rep.status)},
            {"asserted", rep.asserted},   {"sampled", rep.sampled},
            {"instances", rep.instances}, {"violations", violations},
            {"note", rep.note}};
}

std::string report_line(const VerificationReport& rep) {
    std::string line = rep.clause + ": " + status_str(rep.status);
    if (!rep.asserted) line += " (exploratory)";
    if (rep.sampled) line += " (sampled)";
    line += "  instances=" + std::to_string(rep.instances);
    if (!rep.violations.empty())
        line += "  first violation: " + rep.violations.front().bindings + " " +
                rep.violations.front().pair;
    if (!rep.note.empty()) line += "  [" + rep.note + "]";
    return line + "\n";
}

int cmd_verify(const Common& c, const std::string& clause_sel) {
    FiniteAlgebra alg = load_algebra(c.algebra_path);
    RelationOperator F = parse_operator(c.f_spec);
    RelationOperator G = g_operator(c);
    ClausePlan plan = parse_clause_selection(clause_sel);

    VerifierConfig cfg;
    cfg.seed = c.seed;
    cfg.budget = c.budget;

    bool witness = find_term_cond_iv(alg, F, G, c.cap_free).has_value();

    std::vector<VerificationReport> reports;
    for (const std::string& id : plan.clauses)
        reports.push_back(check_clause(alg, clause_by_id(id), F, G, cfg, witness));
    if (plan.f2) reports.push_back(check_theorem_f2(alg, F, G, cfg));
    if (plan.equiv) reports.push_back(check_equivalence_suite(alg, F, G, cfg));

    bool ok = true;
    json table = json::array();
    std::string text = "algebra " + alg.name + "  F=" + F.str() +
                       "  G=" + G.str() +
                       (witness ? "  (witness found)\n" : "  (no witness)\n");
    for (const VerificationReport& rep : reports) {
        ok &= !(rep.asserted && rep.status == Status::Fail);
        table.push_back(report_json(rep));
        text += report_line(rep);
    }
    json doc = {{"schema_version", kSchemaVersion},
                {"command", "verify"},
                {"algebra", alg.name},
                {"F", F.str()},
                {"G", G.str()},
                {"seed", c.seed},
                {"witness", witness},
                {"reports", table}};
    emit(c, doc, text);
    return ok ? 0 : 1;
}

int cmd_operators(const Common& c, std::string corpus_dir) {
    if (corpus_dir.empty()) {
        if (const char* env = std::getenv("MALREL_CORPUS")) corpus_dir = env;
    }
    if (corpus_dir.empty()) throw ParseError("no corpus directory given");
    RelationOperator F = parse_operator(c.f_spec);

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir))
        if (entry.path().extension() == ".alg") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ParseError("no .alg files in " + corpus_dir);

    std::vector<FiniteAlgebra> algs;
    for (const auto& p : files) {
        FiniteAlgebra a = load_algebra(p.string());
        if (a.size <= 3) algs.push_back(std::move(a));
    }

    bool mono_ok = true;
    std::string mono_counter;
    std::size_t mono_pairs = 0;
    std::vector<std::vector<AdmissibleRelation>> adm_per_alg;
    for (const FiniteAlgebra& a : algs) {
        auto all = enumerate_admissible(a).relations;
        MonotoneReport rep = check_monotone(F, a, nested_admissible_pairs(a, all));
        mono_pairs += rep.pairs_checked;
        if (!rep.pass && mono_ok) {
            mono_ok = false;
            mono_counter = a.name + ": " + rep.counterexample;
        }
        adm_per_alg.push_back(std::move(all));
    }

    std::vector<Homomorphism> homs;
    std::vector<std::vector<AdmissibleRelation>> rels;
    for (std::size_t i = 0; i < algs.size(); ++i)
        for (std::size_t j = 0; j < algs.size(); ++j)
            for (Homomorphism& h : enumerate_homomorphisms(algs[i], algs[j]).homs) {
                homs.push_back(std::move(h));
                rels.push_back(adm_per_alg[i]);
            }
    HomPropertyReport hom_rep = check_hom_property(F, homs, rels);

    json doc = {{"schema_version", kSchemaVersion},
                {"command", "operators"},
                {"operator", F.str()},
                {"algebras", json::array()},
                {"monotone", {{"pass", mono_ok},
                              {"pairs_checked", mono_pairs},
                              {"counterexample", mono_counter}}},
                {"hom_property", {{"pass", hom_rep.pass},
                                  {"instances", hom_rep.instances},
                                  {"counterexamples", hom_rep.counterexamples}}}};
    for (const FiniteAlgebra& a : algs) doc["algebras"].push_back(a.name);

    std::string text = "operator " + F.str() + " on " +
                       std::to_string(algs.size()) + " algebras\n";
    text += std::string("monotone: ") + (mono_ok ? "pass" : "FAIL") + " (" +
            std::to_string(mono_pairs) + " pairs)\n";
    if (!mono_ok) text += "  counterexample: " + mono_counter + "\n";
    text += std::string("hom property: ") + (hom_rep.pass ? "pass" : "FAIL") +
            " (" + std::to_string(hom_rep.instances) + " instances)\n";
    if (!hom_rep.pass && !hom_rep.counterexamples.empty())
        text += "  counterexample: " + hom_rep.counterexamples.front() + "\n";
    emit(c, doc, text);
    return (mono_ok && hom_rep.pass) ? 0 : 1;
}

int cmd_free(const Common& c, int k, bool witnesses) {
    FiniteAlgebra alg = load_algebra(c.algebra_path);
    FreeAlgebraRepr X = free_algebra(alg, k, c.cap_free);

    json doc = {{"schema_version", kSchemaVersion},
                {"command", "free"},
                {"algebra", alg.name},
                {"k", k},
                {"elements", X.elements.size()},
                {"generators", X.generator_indices}};
    std::string text = std::to_string(X.elements.size()) + " elements\n";
    text += "generators:";
    for (int g : X.generator_indices) text += " " + std::to_string(g);
    text += "\n";
    if (witnesses) {
        json terms = json::array();
        for (std::size_t i = 0; i < X.elements.size(); ++i) {
            std::string t = X.witness(static_cast<int>(i)).str();
            terms.push_back(t);
            text += std::to_string(i) + ": " + t + "\n";
        }
        doc["witnesses"] = terms;
    }
    emit(c, doc, text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-algebra relational workbench"};
    app.require_subcommand(1);

    Common c_closure, c_search, c_verify, c_operators, c_free;
    std::string rel_text, expr_text = "R", route = "iv", clause_sel, corpus_dir;
    int k = 2;
    bool witnesses = false;

    CLI::App* closure = app.add_subcommand("closure", "evaluate a relation expression");
    add_common(closure, c_closure, true);
    closure->add_option("--rel", rel_text, "relation literal")->required();
    closure->add_option("--expr", expr_text, "relation expression over R");

    CLI::App* search = app.add_subcommand("search", "find a Mal'cev-modulo witness term");
    add_common(search, c_search, true);
    search->add_option("--route", route, "iv | vii | x")
        ->check(CLI::IsMember({"iv", "vii", "x"}));

    CLI::App* verify = app.add_subcommand("verify", "check the relational inclusions");
    add_common(verify, c_verify, true);
    verify->add_option("--clauses", clause_sel,
                       "e.g. i-xiv, vi,ix, f2, equiv (default: everything)");

    CLI::App* operators = app.add_subcommand("operators", "operator property checks");
    add_common(operators, c_operators, false);
    operators->add_option("--corpus", corpus_dir, "directory of .alg files");

    CLI::App* freecmd = app.add_subcommand("free", "free algebra on k generators");
    add_common(freecmd, c_free, true);
    freecmd->add_option("-k", k, "generator count")->check(CLI::PositiveNumber);
    freecmd->add_flag("--witnesses", witnesses, "list witness terms");

    try {
        app.parse(argc, argv);
        if (closure->parsed()) return cmd_closure(c_closure, rel_text, expr_text);
        if (search->parsed()) return cmd_search(c_search, route);
        if (verify->parsed()) return cmd_verify(c_verify, clause_sel);
        if (operators->parsed()) return cmd_operators(c_operators, corpus_dir);
        if (freecmd->parsed()) return cmd_free(c_free, k, witnesses);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const CapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
