#include "malrel/malcev.hpp"

#include <array>

namespace malrel {

namespace {

// Closure of pair elements of X^2 under the free-algebra operations, with
// derivations over the generator slots. Pairs are encoded a*|X|+b.
Closure<int> pair_closure_with_witnesses(const FiniteAlgebra& xalg,
                                         const std::vector<int>& gens) {
    const int n = xalg.size;
    auto apply = [&](int op, std::span<const int> args, const std::vector<int>& elems) {
        std::vector<int> lhs(args.size()), rhs(args.size());
        for (std::size_t i = 0; i < args.size(); ++i) {
            int e = elems[static_cast<std::size_t>(args[i])];
            lhs[i] = e / n;
            rhs[i] = e % n;
        }
        return xalg.apply(op, lhs) * n + xalg.apply(op, rhs);
    };
    return close_under<int>(gens, xalg.ops, apply,
                            static_cast<std::size_t>(n) * static_cast<std::size_t>(n) + 1);
}

BinaryRelation closure_to_relation(const Closure<int>& c, int n) {
    BinaryRelation out(n);
    for (int e : c.elements) out.set(e / n, e % n);
    return out;
}

} // namespace

PrincipalFreeRelation principal_free_relation(const FreeAlgebraRepr& X) {
    if (X.generator_count != 2)
        throw Error("principal_free_relation: expects a 2-generator free algebra");
    const int n = X.algebra.size;
    const int x = X.generator_indices[0];
    const int y = X.generator_indices[1];
    // Slot order (x,y), (x,x), (y,y); the diagonal pairs make every (w,w)
    // reachable, so the closure is reflexive by construction.
    std::vector<int> gens = {x * n + y, x * n + x, y * n + y};
    Closure<int> pairs = pair_closure_with_witnesses(X.algebra, gens);
    BinaryRelation rel = closure_to_relation(pairs, n);
    AdmissibleRelation S = AdmissibleRelation::checked(X.algebra, std::move(rel));
    return PrincipalFreeRelation{std::move(S), std::move(pairs)};
}

Term PrincipalFreeRelation::witness(int a, int b, const FreeAlgebraRepr& X) const {
    int idx = pairs.find(a * X.algebra.size + b);
    if (idx < 0) throw Error("pair not in the principal relation");
    return pairs.witness(idx, X.base->ops);
}

namespace {

struct TwoGenSearch {
    FreeAlgebraRepr X;
    PrincipalFreeRelation P;
    BinaryRelation FS, GS;
    int x = 0, y = 0;
};

TwoGenSearch prepare_two_gen(const FiniteAlgebra& alg, const RelationOperator& F,
                             const RelationOperator& G, std::size_t free_cap) {
    TwoGenSearch s;
    s.X = free_algebra(alg, 2, free_cap);
    s.P = principal_free_relation(s.X);
    s.FS = apply_operator(F, s.X.algebra, s.P.S).rel;
    s.GS = apply_operator(G, s.X.algebra, s.P.S).rel;
    s.x = s.X.generator_indices[0];
    s.y = s.X.generator_indices[1];
    return s;
}

// Shared search core for conditions (iv) and (x): a pair (p,q) with
// (x,p) in F(S), (q,p) in S and (q,y) in G(S). The witness u of (q,p),
// over slots ((x,y),(x,x),(y,y)), gives t(z1,z2,z3) = u(z2,z1,z3), so that
// t(x,y,y) = p and t(x,x,y) = q.
std::optional<MalcevWitness> search_two_gen(const TwoGenSearch& s,
                                            const std::string& route) {
    const int n = s.X.algebra.size;
    for (int p = 0; p < n; ++p) {
        if (!s.FS.at(s.x, p)) continue;
        for (int q = 0; q < n; ++q) {
            if (!s.P.S.rel.at(q, p) || !s.GS.at(q, s.y)) continue;
            Term u = s.P.witness(q, p, s.X);
            static constexpr std::array<int, 3> swap01 = {1, 0, 2};
            Term t = rename_vars(u, swap01);
            MalcevWitness w;
            w.term = std::move(t);
            w.route = route;
            w.intermediate = {s.X.witness(p), s.X.witness(q), std::move(u)};
            return w;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<MalcevWitness> find_term_cond_iv(const FiniteAlgebra& alg,
                                               const RelationOperator& F,
                                               const RelationOperator& G,
                                               std::size_t free_cap) {
    return search_two_gen(prepare_two_gen(alg, F, G, free_cap), "iv");
}

std::optional<MalcevWitness> check_cond_x(const FiniteAlgebra& alg,
                                          const RelationOperator& F,
                                          const RelationOperator& G,
                                          bool full_inclusion,
                                          std::size_t free_cap) {
    TwoGenSearch s = prepare_two_gen(alg, F, G, free_cap);
    if (full_inclusion) {
        // S subseteq F(S) o S^- o G(S), not just the generating pair.
        BinaryRelation rhs = compose(compose(s.FS, converse(s.P.S.rel)), s.GS);
        if (!s.P.S.rel.subset_of(rhs)) return std::nullopt;
    }
    return search_two_gen(s, "x");
}

std::optional<MalcevWitness> check_cond_vii(const FiniteAlgebra& alg,
                                            const RelationOperator& F,
                                            const RelationOperator& G,
                                            bool full_inclusion,
                                            std::size_t free_cap) {
    FreeAlgebraRepr X = free_algebra(alg, 3, free_cap);
    const int n = X.algebra.size;
    const int x = X.generator_indices[0];
    const int y = X.generator_indices[1];
    const int z = X.generator_indices[2];
    // Slot order (x,y), (y,z), (x,x), (y,y), (z,z).
    std::vector<int> gens = {x * n + y, y * n + z, x * n + x, y * n + y, z * n + z};
    Closure<int> pairs = pair_closure_with_witnesses(X.algebra, gens);
    BinaryRelation srel = closure_to_relation(pairs, n);
    AdmissibleRelation S = AdmissibleRelation::checked(X.algebra, std::move(srel));
    BinaryRelation FS = apply_operator(F, X.algebra, S).rel;
    BinaryRelation GS = apply_operator(G, X.algebra, S).rel;
    if (full_inclusion) {
        BinaryRelation lhs = compose(S.rel, S.rel);
        BinaryRelation rhs = compose(compose(FS, S.rel), GS);
        if (!lhs.subset_of(rhs)) return std::nullopt;
    }
    // The proof only needs the pair (x,z).
    for (int p = 0; p < n; ++p) {
        if (!FS.at(x, p)) continue;
        for (int q = 0; q < n; ++q) {
            if (!S.rel.at(p, q) || !GS.at(q, z)) continue;
            int idx = pairs.find(p * n + q);
            Term u = pairs.witness(idx, X.base->ops);
            // u's slots pair up as ((x,y),(y,z),(x,x),(y,y),(z,z)); the
            // paper-style ternary term is u at (x,z,x,y,z).
            static constexpr std::array<int, 5> to_xyz = {0, 2, 0, 1, 2};
            Term t = rename_vars(u, to_xyz);
            MalcevWitness w;
            w.term = std::move(t);
            w.route = "vii";
            w.intermediate = {X.witness(p), X.witness(q), std::move(u)};
            return w;
        }
    }
    return std::nullopt;
}

VerifyReport verify_malcev_term(
    const std::vector<const FiniteAlgebra*>& family, const Term& t,
    const RelationOperator& F, const RelationOperator& G,
    const std::vector<std::vector<AdmissibleRelation>>& rel_source) {
    if (t.max_var() > 2) throw Error("verify_malcev_term: term is not ternary");
    VerifyReport rep;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const FiniteAlgebra& alg = *family[i];
        for (const AdmissibleRelation& R : rel_source[i]) {
            BinaryRelation FR = apply_operator(F, alg, R).rel;
            BinaryRelation GR = apply_operator(G, alg, R).rel;
            for (auto [a, b] : R.rel.pairs()) {
                ++rep.instances;
                int tabb = eval_term(alg, t, {a, b, b});
                int taab = eval_term(alg, t, {a, a, b});
                if (!FR.at(a, tabb))
                    rep.violations.push_back(
                        {alg.name, R.rel.str(), a, b, "F"});
                if (!GR.at(taab, b))
                    rep.violations.push_back(
                        {alg.name, R.rel.str(), a, b, "G"});
            }
        }
    }
    return rep;
}

} // namespace malrel
