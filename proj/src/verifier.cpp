#include "malrel/verifier.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <sstream>

namespace malrel {

namespace {

ExprPtr F(ExprPtr a) { return ex_op("F", std::move(a)); }
ExprPtr G(ExprPtr a) { return ex_op("G", std::move(a)); }
ExprPtr R() { return ex_var("R"); }
ExprPtr S() { return ex_var("S"); }
ExprPtr Ri(int i) { return ex_var("R" + std::to_string(i)); }

using Chains = std::vector<std::vector<ExprPtr>>;

Chains make_i(int) {
    return {{ex_compose({F(R()), ex_bar(ex_union({ex_var("th2"), ex_var("th"), ex_var("th1")})),
                         G(S())})}};
}

Chains make_ii(int) {
    return {{ex_compose({R(), ex_var("th"), S()}),
             ex_compose({F(R()),
                         ex_bar(ex_union(ex_compose(R(), ex_var("th")),
                                         ex_compose(ex_var("th"), S()))),
                         G(S())})}};
}

Chains make_iii(int) {
    return {{ex_compose(R(), S()),
             ex_compose({F(R()), ex_bar(ex_union(R(), S())), G(S())}),
             ex_compose({F(R()), S(), R(), G(S())})}};
}

Chains make_iv(int n) {
    ExprPtr sdot = (n % 2 == 0) ? S() : R();
    return {{ex_compose_n(R(), S(), n + 2),
             ex_compose({F(R()), ex_power(ex_bar(ex_union(F(R()), F(S()))), n),
                         ex_bar(ex_union(R(), S())),
                         ex_power(ex_bar(ex_union(G(R()), G(S()))), n), G(sdot)})}};
}

Chains make_v(int) {
    return {{ex_sum(R(), S()),
             ex_compose({ex_sum(F(R()), F(S())), ex_bar(ex_union(R(), S())),
                         ex_sum(G(R()), G(S()))}),
             ex_compose({ex_sum(F(R()), F(S())), R(), S(), ex_sum(G(R()), G(S()))})}};
}

Chains make_vi(int) {
    return {{ex_compose(R(), R()), ex_compose({F(R()), R(), G(R())})}};
}

Chains make_vii(int n) {
    return {{ex_power(R(), n + 1),
             ex_compose({ex_power(F(R()), n), R(), ex_power(G(R()), n)})}};
}

Chains make_viii(int) {
    return {{ex_tc(R()), ex_compose({ex_tc(F(R())), R(), ex_tc(G(R()))})}};
}

Chains make_ix(int) {
    ExprPtr rc = ex_converse(R());
    return {{rc, ex_compose({F(rc), R(), G(rc)})},
            {R(), ex_compose({F(R()), ex_converse(R()), G(R())})}};
}

Chains make_x(int) {
    ExprPtr sc = ex_converse(S());
    return {{ex_sum(R(), sc),
             ex_compose({ex_sum(F(R()), F(sc)), ex_bar(ex_union(R(), S())),
                         ex_sum(G(R()), G(sc))}),
             ex_compose({ex_sum(F(R()), F(sc)), R(), S(), ex_sum(G(R()), G(sc))})}};
}

Chains make_xi(int) {
    ExprPtr rc = ex_converse(R());
    return {{ex_cg(R()),
             ex_compose({ex_sum(F(R()), F(rc)), R(), ex_sum(G(R()), G(rc))})}};
}

Chains make_xii(int m) {
    std::vector<ExprPtr> lhs_chain, rhs_chain;
    for (int i = 1; i <= m; ++i) lhs_chain.push_back(Ri(i));
    rhs_chain.push_back(F(Ri(1)));
    for (int j = 2; j <= m - 1; ++j) {
        std::vector<ExprPtr> parts;
        for (int i = 1; i <= j; ++i) parts.push_back(F(Ri(i)));
        rhs_chain.push_back(ex_bar(ex_union(std::move(parts))));
    }
    std::vector<ExprPtr> all;
    for (int i = 1; i <= m; ++i) all.push_back(Ri(i));
    rhs_chain.push_back(ex_bar(ex_union(std::move(all))));
    for (int j = 2; j <= m - 1; ++j) {
        std::vector<ExprPtr> parts;
        for (int i = j; i <= m; ++i) parts.push_back(G(Ri(i)));
        rhs_chain.push_back(ex_bar(ex_union(std::move(parts))));
    }
    rhs_chain.push_back(G(Ri(m)));
    return {{ex_compose(std::move(lhs_chain)), ex_compose(std::move(rhs_chain))}};
}

Chains make_xiii(int m) {
    std::vector<ExprPtr> lhs, fs, gs, all;
    for (int i = 1; i <= m; ++i) {
        lhs.push_back(Ri(i));
        fs.push_back(F(Ri(i)));
        gs.push_back(G(Ri(i)));
        all.push_back(Ri(i));
    }
    return {{ex_sum(std::move(lhs)),
             ex_compose({ex_sum(std::move(fs)), ex_bar(ex_union(std::move(all))),
                         ex_sum(std::move(gs))})}};
}

Chains make_xiv(int m) {
    std::vector<ExprPtr> fs, gs, all;
    for (int i = 1; i <= m; ++i) {
        fs.push_back(F(Ri(i)));
        fs.push_back(F(ex_converse(Ri(i))));
        gs.push_back(G(Ri(i)));
        gs.push_back(G(ex_converse(Ri(i))));
        all.push_back(Ri(i));
    }
    ExprPtr u = ex_union(all);
    return {{ex_cg(u),
             ex_compose({ex_sum(std::move(fs)), ex_bar(u), ex_sum(std::move(gs))})}};
}

std::vector<ClauseSpec> build_clauses() {
    std::vector<ClauseSpec> cs;
    cs.push_back({"i", {"R", "S"}, {"th", "th1", "th2"}, 0, 0, false, true, make_i});
    cs.push_back({"ii", {"R", "S"}, {"th"}, 0, 0, false, false, make_ii});
    cs.push_back({"iii", {"R", "S"}, {}, 0, 0, false, false, make_iii});
    cs.push_back({"iv", {"R", "S"}, {}, 0, 3, false, false, make_iv});
    cs.push_back({"v", {"R", "S"}, {}, 0, 0, false, false, make_v});
    cs.push_back({"vi", {"R"}, {}, 0, 0, false, false, make_vi});
    cs.push_back({"vii", {"R"}, {}, 0, 3, false, false, make_vii});
    cs.push_back({"viii", {"R"}, {}, 0, 0, false, false, make_viii});
    cs.push_back({"ix", {"R"}, {}, 0, 0, false, false, make_ix});
    cs.push_back({"x", {"R", "S"}, {}, 0, 0, false, false, make_x});
    cs.push_back({"xi", {"R"}, {}, 0, 0, false, false, make_xi});
    cs.push_back({"xii", {}, {}, 2, 4, true, false, make_xii});
    cs.push_back({"xiii", {}, {}, 2, 4, true, false, make_xiii});
    cs.push_back({"xiv", {}, {}, 2, 4, true, false, make_xiv});
    return cs;
}

} // namespace

const std::vector<ClauseSpec>& theorem1_clauses() {
    static const std::vector<ClauseSpec> cs = build_clauses();
    return cs;
}

const ClauseSpec& clause_by_id(const std::string& id) {
    for (const ClauseSpec& c : theorem1_clauses())
        if (c.id == id) return c;
    throw Error("unknown clause id '" + id + "'");
}

std::string status_str(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
    }
    return "?";
}

namespace {

BinaryRelation random_relation(int n, std::mt19937_64& rng) {
    BinaryRelation r(n);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (bit(rng)) r.set(i, j);
    return r;
}

std::string describe_bindings(const EvalContext& ctx, int param, bool has_param) {
    std::ostringstream ss;
    bool first = true;
    for (const auto& [k, v] : ctx.env) {
        if (!first) ss << " ";
        first = false;
        ss << k << "=" << v.str();
    }
    if (has_param) ss << " n=" << param;
    return ss.str();
}

struct ClauseRun {
    const FiniteAlgebra& alg;
    const ClauseSpec& clause;
    const VerifierConfig& cfg;
    VerificationReport& rep;
    EvalContext ctx;
    bool budget_hit = false;

    bool over_budget() const { return ctx.evals > cfg.budget; }

    void record(const std::string& pair, int param) {
        if (rep.violations.size() < cfg.max_violations)
            rep.violations.push_back(
                {describe_bindings(ctx, param, clause.param_hi > 0), pair});
        rep.status = Status::Fail;
    }

    // Evaluates one fully bound instance.
    void run_instance(int param) {
        if (budget_hit) return;
        ++rep.instances;
        Chains chains = clause.make(param);
        if (clause.diagram) {
            const BinaryRelation& r = ctx.env.at("R");
            const BinaryRelation& s = ctx.env.at("S");
            const BinaryRelation& th = ctx.env.at("th");
            const BinaryRelation& th1 = ctx.env.at("th1");
            const BinaryRelation& th2 = ctx.env.at("th2");
            std::optional<BinaryRelation> rhs; // lazy: hypothesis may be empty
            const int n = alg.size;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (!r.at(a, b)) continue;
                    for (int c = 0; c < n; ++c) {
                        if (!th1.at(b, c)) continue;
                        for (int d = 0; d < n; ++d) {
                            if (!th2.at(a, d) || !s.at(d, c) || !th.at(b, d)) continue;
                            if (!rhs) rhs = eval_rel_expr(*chains[0][0], ctx);
                            if (!rhs->at(a, c))
                                record("(" + std::to_string(a) + "," +
                                           std::to_string(c) + ")",
                                       param);
                        }
                    }
                }
        } else {
            for (const auto& chain : chains) {
                BinaryRelation prev = eval_rel_expr(*chain[0], ctx);
                for (std::size_t i = 1; i < chain.size(); ++i) {
                    BinaryRelation next = eval_rel_expr(*chain[i], ctx);
                    if (!prev.subset_of(next)) {
                        for (auto [a, b] : prev.pairs())
                            if (!next.at(a, b)) {
                                record("(" + std::to_string(a) + "," +
                                           std::to_string(b) + ") escapes " +
                                           chain[i]->str(),
                                       param);
                                break;
                            }
                    }
                    prev = std::move(next);
                }
            }
        }
        if (over_budget()) budget_hit = true;
    }
};

} // namespace

VerificationReport check_clause(const FiniteAlgebra& alg, const ClauseSpec& clause,
                                const RelationOperator& F_, const RelationOperator& G_,
                                const VerifierConfig& cfg, bool witness_exists) {
    VerificationReport rep;
    rep.clause = clause.id;
    rep.algebra = alg.name;
    rep.operators = F_.name + "," + G_.name;
    rep.asserted = witness_exists;
    if (!witness_exists) rep.note = "exploratory: no Mal'cev-modulo witness";

    if (alg.size > 4) {
        rep.status = Status::Skipped;
        rep.note = "carrier too large for exhaustive admissible enumeration";
        return rep;
    }

    auto adm = enumerate_admissible(alg).relations;
    ClauseRun run{alg, clause, cfg, rep, {}, false};
    run.ctx.alg = &alg;
    run.ctx.strict = true;
    run.ctx.apply_op = [&](const std::string& name, const AdmissibleRelation& arg) {
        return apply_operator(name == "F" ? F_ : G_, alg, arg);
    };

    std::mt19937_64 rng(cfg.seed);
    const bool theta_exhaustive = alg.size <= 2;
    const std::uint64_t theta_space = std::uint64_t(1) << (alg.size * alg.size);

    // All theta-slot assignments for the current admissible binding.
    auto run_thetas = [&](int param) {
        if (clause.theta_vars.empty()) {
            run.run_instance(param);
            return;
        }
        if (theta_exhaustive) {
            std::vector<std::uint64_t> masks(clause.theta_vars.size(), 0);
            for (;;) {
                for (std::size_t t = 0; t < clause.theta_vars.size(); ++t) {
                    BinaryRelation th(alg.size);
                    for (int i = 0; i < alg.size; ++i)
                        for (int j = 0; j < alg.size; ++j)
                            if ((masks[t] >> (i * alg.size + j)) & 1) th.set(i, j);
                    run.ctx.env[clause.theta_vars[t]] = std::move(th);
                }
                run.run_instance(param);
                if (run.budget_hit) return;
                std::size_t pos = 0;
                while (pos < masks.size() && ++masks[pos] == theta_space) {
                    masks[pos] = 0;
                    ++pos;
                }
                if (pos == masks.size()) break;
            }
        } else {
            rep.sampled = true;
            for (int s = 0; s < cfg.theta_samples && !run.budget_hit; ++s) {
                for (const std::string& t : clause.theta_vars)
                    run.ctx.env[t] = random_relation(alg.size, rng);
                run.run_instance(param);
            }
        }
    };

    for (int param = clause.param_lo; param <= clause.param_hi && !run.budget_hit;
         ++param) {
        if (clause.chain) {
            const int m = param; // chain length
            std::size_t total = 1;
            bool overflow = false;
            for (int i = 0; i < m; ++i) {
                if (total > 20000 / std::max<std::size_t>(adm.size(), 1)) overflow = true;
                total *= adm.size();
            }
            const std::size_t exhaustive_limit = 20000;
            if (!overflow && total <= exhaustive_limit) {
                std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
                for (;;) {
                    for (int i = 0; i < m; ++i)
                        run.ctx.env["R" + std::to_string(i + 1)] =
                            adm[idx[static_cast<std::size_t>(i)]].rel;
                    run.run_instance(param);
                    if (run.budget_hit) break;
                    std::size_t pos = 0;
                    while (pos < idx.size() && ++idx[pos] == adm.size()) {
                        idx[pos] = 0;
                        ++pos;
                    }
                    if (pos == idx.size()) break;
                }
            } else {
                rep.sampled = true;
                std::uniform_int_distribution<std::size_t> pick(0, adm.size() - 1);
                for (std::size_t s = 0; s < exhaustive_limit / 4 && !run.budget_hit; ++s) {
                    for (int i = 0; i < m; ++i)
                        run.ctx.env["R" + std::to_string(i + 1)] = adm[pick(rng)].rel;
                    run.run_instance(param);
                }
            }
        } else {
            std::vector<std::size_t> idx(clause.adm_vars.size(), 0);
            for (;;) {
                for (std::size_t i = 0; i < clause.adm_vars.size(); ++i)
                    run.ctx.env[clause.adm_vars[i]] = adm[idx[i]].rel;
                run_thetas(param);
                if (run.budget_hit) break;
                std::size_t pos = 0;
                while (pos < idx.size() && ++idx[pos] == adm.size()) {
                    idx[pos] = 0;
                    ++pos;
                }
                if (pos == idx.size()) break;
            }
        }
    }

    if (run.budget_hit && rep.status != Status::Fail) {
        rep.status = Status::Skipped;
        rep.note = "budget exhausted after " + std::to_string(rep.instances) +
                   " instances";
    }
    return rep;
}

VerificationReport check_theorem_f2(const FiniteAlgebra& alg,
                                    const RelationOperator& F_,
                                    const RelationOperator& G_,
                                    const VerifierConfig&) {
    VerificationReport rep;
    rep.clause = "f2";
    rep.algebra = alg.name;
    rep.operators = F_.name + "," + G_.name;
    auto base = find_term_cond_iv(alg, F_, G_);
    ++rep.instances;
    if (!base) {
        rep.note = "no witness for (F,G); vacuously consistent";
        rep.asserted = false;
        return rep;
    }
    auto prime = find_term_cond_iv(alg, triple_pointwise(F_), triple_pointwise(G_));
    ++rep.instances;
    if (!prime) {
        rep.status = Status::Fail;
        rep.violations.push_back(
            {"witness " + base->term.str() + " for (F,G)",
             "no witness for (F',G') = (sq(F)^3, sq(G)^3)"});
        return rep;
    }
    rep.note = "witness " + base->term.str() + " for (F,G); witness " +
               prime->term.str() + " for (F',G')";
    return rep;
}

namespace {

// The subalgebra of alg induced on `elements` (sorted), carrier reindexed.
FiniteAlgebra induced_algebra(const FiniteAlgebra& alg, const std::vector<int>& elements) {
    std::vector<int> pos(static_cast<std::size_t>(alg.size), -1);
    for (std::size_t i = 0; i < elements.size(); ++i)
        pos[static_cast<std::size_t>(elements[i])] = static_cast<int>(i);
    FiniteAlgebra sub;
    sub.name = alg.name + "|" + std::to_string(elements.size());
    sub.size = static_cast<int>(elements.size());
    for (std::size_t op = 0; op < alg.ops.size(); ++op) {
        const Operation& o = alg.ops[op];
        Operation so;
        so.name = o.name;
        so.arity = o.arity;
        std::size_t rows = 1;
        for (int i = 0; i < o.arity; ++i) rows *= elements.size();
        so.table.resize(rows);
        std::vector<int> args(static_cast<std::size_t>(o.arity));
        for (std::size_t idx = 0; idx < rows; ++idx) {
            std::size_t rest = idx;
            for (int i = o.arity - 1; i >= 0; --i) {
                args[static_cast<std::size_t>(i)] =
                    elements[rest % elements.size()];
                rest /= elements.size();
            }
            so.table[idx] = pos[static_cast<std::size_t>(
                alg.apply(static_cast<int>(op), args))];
        }
        sub.ops.push_back(std::move(so));
    }
    sub.validate();
    return sub;
}

std::vector<std::vector<int>> all_subuniverses(const FiniteAlgebra& alg) {
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << alg.size); ++mask) {
        std::vector<int> gens;
        for (int i = 0; i < alg.size; ++i)
            if ((mask >> i) & 1) gens.push_back(i);
        std::vector<int> closed = generate_subalgebra(alg, gens).elements;
        std::sort(closed.begin(), closed.end());
        if (std::find(out.begin(), out.end(), closed) == out.end())
            out.push_back(std::move(closed));
    }
    return out;
}

std::vector<AdmissibleRelation> single_pair_relations(const FiniteAlgebra& alg) {
    std::vector<AdmissibleRelation> out;
    std::vector<BinaryRelation> seen;
    for (int a = 0; a < alg.size; ++a)
        for (int b = 0; b < alg.size; ++b) {
            AdmissibleRelation r = generated_admissible(alg, {{a, b}});
            if (std::find(seen.begin(), seen.end(), r.rel) == seen.end()) {
                seen.push_back(r.rel);
                out.push_back(std::move(r));
            }
        }
    return out;
}

} // namespace

VerificationReport check_equivalence_suite(const FiniteAlgebra& alg,
                                           const RelationOperator& F_,
                                           const RelationOperator& G_,
                                           const VerifierConfig& cfg) {
    VerificationReport rep;
    rep.clause = "equiv";
    rep.algebra = alg.name;
    rep.operators = F_.name + "," + G_.name;

    // Theorem 3's hypotheses: flag operator pairs that fail them, since the
    // equivalence guarantee is then void.
    if (alg.size <= 4) {
        auto adm = enumerate_admissible(alg).relations;
        for (const RelationOperator* op : {&F_, &G_}) {
            auto mono = check_monotone(*op, alg, nested_admissible_pairs(alg, adm));
            if (!mono.pass)
                rep.note += "warning: " + op->name + " is not monotone here; ";
        }
    }

    auto w_iv = find_term_cond_iv(alg, F_, G_);
    auto w_vii = check_cond_vii(alg, F_, G_);
    auto w_x = check_cond_x(alg, F_, G_);
    rep.instances = 3;
    if (w_iv.has_value() != w_vii.has_value() ||
        w_iv.has_value() != w_x.has_value()) {
        rep.status = Status::Fail;
        rep.violations.push_back(
            {"routes iv/vii/x", std::string("disagree: iv=") +
                                    (w_iv ? "yes" : "no") + " vii=" +
                                    (w_vii ? "yes" : "no") + " x=" +
                                    (w_x ? "yes" : "no")});
        return rep;
    }
    if (!w_iv) {
        rep.note += "no witness (all three routes agree)";
        return rep;
    }

    // Verify each extracted witness over alg, its subalgebras, and alg^2.
    std::vector<std::unique_ptr<FiniteAlgebra>> owned;
    for (const std::vector<int>& su : all_subuniverses(alg))
        owned.push_back(std::make_unique<FiniteAlgebra>(induced_algebra(alg, su)));
    owned.push_back(std::make_unique<FiniteAlgebra>(product_power(alg, 2)));

    std::vector<const FiniteAlgebra*> family = {&alg};
    for (const auto& p : owned) family.push_back(p.get());
    std::vector<std::vector<AdmissibleRelation>> rels;
    for (const FiniteAlgebra* a : family) rels.push_back(single_pair_relations(*a));

    for (const MalcevWitness* w : {&*w_iv, &*w_vii, &*w_x}) {
        VerifyReport vr = verify_malcev_term(family, w->term, F_, G_, rels);
        rep.instances += vr.instances;
        for (const MalcevViolation& v : vr.violations) {
            rep.status = Status::Fail;
            if (rep.violations.size() < cfg.max_violations)
                rep.violations.push_back(
                    {"route " + w->route + " witness " + w->term.str() + " on " +
                         v.algebra + ", R=" + v.relation,
                     "side " + v.side + " at (" + std::to_string(v.a) + "," +
                         std::to_string(v.b) + ")"});
        }
    }

    // (i) => (v) and (i) => (viii): the (vi)- and (ix)-shape inclusions.
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (const AdmissibleRelation& r : rels[i]) {
            ++rep.instances;
            BinaryRelation fr = apply_operator(F_, *family[i], r).rel;
            BinaryRelation gr = apply_operator(G_, *family[i], r).rel;
            bool six = compose(r.rel, r.rel)
                           .subset_of(compose(compose(fr, r.rel), gr));
            bool nine = r.rel.subset_of(compose(compose(fr, converse(r.rel)), gr));
            if (!six || !nine) {
                rep.status = Status::Fail;
                if (rep.violations.size() < cfg.max_violations)
                    rep.violations.push_back(
                        {"on " + family[i]->name + ", R=" + r.rel.str(),
                         six ? "(ix)-shape inclusion fails"
                             : "(vi)-shape inclusion fails"});
            }
        }
    }

    if (rep.status == Status::Pass)
        rep.note += "witness " + w_iv->term.str() + " (route iv)";
    return rep;
}

} // namespace malrel
