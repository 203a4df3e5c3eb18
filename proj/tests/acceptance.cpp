// Acceptance gate: eight end-to-end criteria over the bundled corpus, each
// reported as a single pass/fail line. Exits nonzero if any criterion fails.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "malrel/verifier.hpp"
#include "util.hpp"

using namespace malrel;

namespace {

const char* kOpSpecs[] = {"diag", "id", "tc", "tol", "cg"};
const char* kCorpusFiles[] = {"z2.alg",      "z3.alg",   "semilattice2.alg",
                              "semilattice3.alg", "lattice2.alg", "set2.alg",
                              "z2malcev.alg"};

bool exact_malcev(const FiniteAlgebra& alg, const Term& t) {
    for (int a = 0; a < alg.size; ++a)
        for (int b = 0; b < alg.size; ++b)
            if (eval_term(alg, t, {a, b, b}) != a || eval_term(alg, t, {a, a, b}) != b)
                return false;
    return true;
}

// Exhaustive ternary term-operation oracle via the free algebra on three
// generators.
bool any_exact_malcev_term(const FiniteAlgebra& alg) {
    FreeAlgebraRepr X = free_algebra(alg, 3);
    for (const std::string& e : X.elements) {
        bool ok = true;
        for (int a = 0; a < alg.size && ok; ++a)
            for (int b = 0; b < alg.size && ok; ++b)
                ok = e[power_index(std::vector<int>{a, b, b}, alg.size)] == a &&
                     e[power_index(std::vector<int>{a, a, b}, alg.size)] == b;
        if (ok) return true;
    }
    return false;
}

bool criterion1() {
    RelationOperator diag = parse_operator("diag");
    for (const char* file : {"z2.alg", "z3.alg"}) {
        FiniteAlgebra alg = corpus(file);
        auto w = find_term_cond_iv(alg, diag, diag);
        if (!w || !exact_malcev(alg, w->term)) return false;
    }
    for (const char* file : {"semilattice2.alg", "lattice2.alg"}) {
        FiniteAlgebra alg = corpus(file);
        if (find_term_cond_iv(alg, diag, diag).has_value()) return false;
        if (any_exact_malcev_term(alg)) return false;
    }
    return true;
}

bool criterion2() {
    FiniteAlgebra sl = corpus("semilattice2.alg");
    RelationOperator cg = parse_operator("cg");
    auto wiv = find_term_cond_iv(sl, cg, cg);
    auto wvii = check_cond_vii(sl, cg, cg);
    auto wx = check_cond_x(sl, cg, cg);
    if (!wiv || !wvii || !wx) return false;
    // Extraction identities for the three-relation route.
    const Term& t1 = wvii->intermediate[0];
    const Term& t2 = wvii->intermediate[1];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            if (eval_term(sl, t1, {a, b, b}) != eval_term(sl, wvii->term, {a, b, b}))
                return false;
            if (eval_term(sl, wvii->term, {a, a, b}) != eval_term(sl, t2, {a, a, b}))
                return false;
        }
    // Exhaustive verification on the semilattice, its square, and every
    // generated admissible relation.
    FiniteAlgebra sq = product_power(sl, 2);
    std::vector<std::vector<AdmissibleRelation>> rels;
    for (const FiniteAlgebra* a : {&sl, &sq}) {
        std::vector<AdmissibleRelation> rs;
        for (int x = 0; x < a->size; ++x)
            for (int y = 0; y < a->size; ++y)
                rs.push_back(generated_admissible(*a, {{x, y}}));
        rels.push_back(std::move(rs));
    }
    return verify_malcev_term({&sl, &sq}, wiv->term, cg, cg, rels).pass();
}

bool criterion3() {
    for (const char* file : kCorpusFiles) {
        FiniteAlgebra alg = corpus(file);
        for (const char* fs : kOpSpecs)
            for (const char* gs : kOpSpecs) {
                RelationOperator F = parse_operator(fs);
                RelationOperator G = parse_operator(gs);
                bool iv = find_term_cond_iv(alg, F, G).has_value();
                bool vii = check_cond_vii(alg, F, G).has_value();
                bool x = check_cond_x(alg, F, G).has_value();
                if (iv != vii || iv != x) {
                    std::printf("  disagreement: %s F=%s G=%s iv=%d vii=%d x=%d\n",
                                alg.name.c_str(), fs, gs, iv, vii, x);
                    return false;
                }
            }
    }
    return true;
}

// Every corpus (algebra, F, G) with a witness, as a worklist shared by the
// Theorem-1 sweep and the squared-operator check.
struct WitnessCase {
    FiniteAlgebra alg;
    RelationOperator F, G;
};

std::vector<WitnessCase> witness_cases() {
    std::vector<WitnessCase> out;
    for (const char* file : kCorpusFiles) {
        FiniteAlgebra alg = corpus(file);
        for (const char* fs : kOpSpecs)
            for (const char* gs : kOpSpecs) {
                RelationOperator F = parse_operator(fs);
                RelationOperator G = parse_operator(gs);
                if (find_term_cond_iv(alg, F, G).has_value())
                    out.push_back({alg, F, G});
            }
    }
    return out;
}

bool criterion4(const std::vector<WitnessCase>& cases) {
    VerifierConfig cfg;
    cfg.seed = 0;
    for (const WitnessCase& wc : cases) {
        if (wc.alg.size > 3) continue;
        for (const ClauseSpec& clause : theorem1_clauses()) {
            VerificationReport rep =
                check_clause(wc.alg, clause, wc.F, wc.G, cfg, true);
            if (rep.status == Status::Fail || !rep.violations.empty()) {
                std::printf("  violation: %s clause %s F=%s G=%s: %s %s\n",
                            wc.alg.name.c_str(), clause.id.c_str(),
                            wc.F.str().c_str(), wc.G.str().c_str(),
                            rep.violations.empty()
                                ? "?"
                                : rep.violations.front().bindings.c_str(),
                            rep.violations.empty()
                                ? ""
                                : rep.violations.front().pair.c_str());
                return false;
            }
        }
    }
    return true;
}

bool criterion5(const std::vector<WitnessCase>& cases) {
    for (const WitnessCase& wc : cases) {
        if (!find_term_cond_iv(wc.alg, triple_pointwise(wc.F), triple_pointwise(wc.G))
                 .has_value()) {
            std::printf("  no squared-operator witness: %s F=%s G=%s\n",
                        wc.alg.name.c_str(), wc.F.str().c_str(),
                        wc.G.str().c_str());
            return false;
        }
    }
    return true;
}

bool criterion6() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> carrier(2, 5);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = carrier(rng);
        std::uniform_int_distribution<int> el(0, n - 1);
        std::uniform_int_distribution<int> bit(0, 1);
        auto rand_rel = [&] {
            BinaryRelation r(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (bit(rng)) r.set(i, j);
            return r;
        };
        // Random binary operation gives a random one-op algebra.
        FiniteAlgebra alg;
        alg.name = "random";
        alg.size = n;
        Operation op;
        op.name = "f";
        op.arity = 2;
        for (int i = 0; i < n * n; ++i) op.table.push_back(el(rng));
        alg.ops.push_back(std::move(op));

        BinaryRelation A = rand_rel(), B = rand_rel(), C = rand_rel();
        if (compose(compose(A, B), C) != compose(A, compose(B, C))) return false;
        if (converse(converse(A)) != A) return false;
        if (rel_sum(A, A) != transitive_closure(A)) return false;

        auto closed = [&](const std::function<BinaryRelation(const BinaryRelation&)>& cl) {
            BinaryRelation ca = cl(A), cb = cl(A | B);
            return A.subset_of(ca) && ca.subset_of(cb) && cl(ca) == ca;
        };
        if (!closed([&](const BinaryRelation& r) { return compatible_closure(alg, r); }))
            return false;
        if (!closed([&](const BinaryRelation& r) { return tolerance_closure(alg, r).rel; }))
            return false;
        if (!closed([&](const BinaryRelation& r) { return transitive_closure(r); }))
            return false;
        if (!closed([&](const BinaryRelation& r) { return congruence_closure(alg, r).rel; }))
            return false;

        AdmissibleRelation adm = generated_admissible(alg, {{el(rng), el(rng)}});
        if (congruence_closure(alg, adm.rel).rel !=
            rel_sum(adm.rel, converse(adm.rel)))
            return false;
    }
    return true;
}

bool criterion7() {
    struct Expect {
        const char* file;
        int k;
        std::size_t elements;
    } expects[] = {{"semilattice2.alg", 2, 3},
                   {"semilattice2.alg", 3, 7},
                   {"z2.alg", 2, 4}};
    for (const Expect& e : expects) {
        FiniteAlgebra alg = corpus(e.file);
        FreeAlgebraRepr X = free_algebra(alg, e.k);
        if (X.elements.size() != e.elements) return false;

        // Independent oracle: close the projection tuples directly.
        int coords = X.coord_count;
        std::vector<std::string> pool;
        for (int g = 0; g < e.k; ++g) {
            std::string proj(static_cast<std::size_t>(coords), '\0');
            for (int c = 0; c < coords; ++c)
                proj[static_cast<std::size_t>(c)] = static_cast<char>(
                    power_tuple(static_cast<std::size_t>(c), alg.size, e.k)
                        [static_cast<std::size_t>(g)]);
            pool.push_back(std::move(proj));
        }
        bool grew = true;
        while (grew) {
            grew = false;
            std::size_t m = pool.size();
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    for (const Operation& op : alg.ops) {
                        if (op.arity != 2) continue;
                        std::string v(static_cast<std::size_t>(coords), '\0');
                        for (int c = 0; c < coords; ++c)
                            v[static_cast<std::size_t>(c)] = static_cast<char>(
                                op.table[static_cast<std::size_t>(
                                    pool[i][static_cast<std::size_t>(c)] * alg.size +
                                    pool[j][static_cast<std::size_t>(c)])]);
                        if (std::find(pool.begin(), pool.end(), v) == pool.end()) {
                            pool.push_back(std::move(v));
                            grew = true;
                        }
                    }
        }
        if (pool.size() != e.elements) return false;

        // Witness terms re-evaluate to their elements coordinatewise.
        for (std::size_t i = 0; i < X.elements.size(); ++i) {
            Term t = X.witness(static_cast<int>(i));
            for (int c = 0; c < coords; ++c) {
                Assignment asg = power_tuple(static_cast<std::size_t>(c), alg.size, e.k);
                if (eval_term(alg, t, asg) != X.elements[i][static_cast<std::size_t>(c)])
                    return false;
            }
        }
    }
    return true;
}

bool criterion8() {
    std::vector<FiniteAlgebra> algs;
    for (const char* file : kCorpusFiles) {
        FiniteAlgebra a = corpus(file);
        if (a.size <= 3) algs.push_back(std::move(a));
    }
    std::vector<Homomorphism> homs;
    std::vector<std::vector<AdmissibleRelation>> rels;
    for (const FiniteAlgebra& src : algs)
        for (const FiniteAlgebra& tgt : algs) {
            HomSearchResult found = enumerate_homomorphisms(src, tgt);
            if (!found.complete) return false;
            // Oracle: filter all |tgt|^|src| maps directly.
            std::size_t expect = 0;
            std::vector<int> map(static_cast<std::size_t>(src.size), 0);
            for (;;) {
                if (is_homomorphism(src, tgt, map)) ++expect;
                int pos = src.size - 1;
                while (pos >= 0 && map[static_cast<std::size_t>(pos)] == tgt.size - 1)
                    map[static_cast<std::size_t>(pos--)] = 0;
                if (pos < 0) break;
                ++map[static_cast<std::size_t>(pos)];
            }
            if (found.homs.size() != expect) return false;
            for (Homomorphism& h : found.homs) {
                homs.push_back(std::move(h));
                rels.push_back(enumerate_admissible(src).relations);
            }
        }
    for (const char* spec : {"diag", "id", "tc", "tol", "cg"})
        if (!check_hom_property(parse_operator(spec), homs, rels).pass) return false;
    return true;
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<bool()> run;
    };
    std::vector<WitnessCase> cases = witness_cases();
    Criterion criteria[] = {
        {"1 exact-Mal'cev recovery", criterion1},
        {"2 modulo-closure positive case", criterion2},
        {"3 route equivalence consistency", criterion3},
        {"4 inclusion soundness sweep", [&] { return criterion4(cases); }},
        {"5 squared-operator transfer", [&] { return criterion5(cases); }},
        {"6 closure-algebra laws", criterion6},
        {"7 free-algebra sizes", criterion7},
        {"8 homomorphism-property gate", criterion8},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        bool ok = false;
        std::string note;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            note = std::string(" (") + e.what() + ")";
        }
        std::printf("criterion %s: %s%s\n", c.label, ok ? "PASS" : "FAIL",
                    note.c_str());
        std::fflush(stdout);
        failures += ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
