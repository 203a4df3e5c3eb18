#include "malrel/admissible.hpp"

#include <algorithm>

#include "malrel/closure.hpp"

namespace malrel {

bool is_compatible(const FiniteAlgebra& alg, const BinaryRelation& R) {
    if (R.size() != alg.size)
        throw Error("relation carrier does not match algebra '" + alg.name + "'");
    auto ps = R.pairs();
    for (std::size_t op = 0; op < alg.ops.size(); ++op) {
        const int m = alg.ops[op].arity;
        if (m == 0) {
            int c = alg.apply(static_cast<int>(op), {});
            if (!R.at(c, c)) return false;
            continue;
        }
        std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
        if (ps.empty()) continue;
        std::vector<int> lhs(static_cast<std::size_t>(m)), rhs(static_cast<std::size_t>(m));
        for (;;) {
            for (int i = 0; i < m; ++i) {
                lhs[static_cast<std::size_t>(i)] = ps[idx[static_cast<std::size_t>(i)]].first;
                rhs[static_cast<std::size_t>(i)] = ps[idx[static_cast<std::size_t>(i)]].second;
            }
            if (!R.at(alg.apply(static_cast<int>(op), lhs),
                      alg.apply(static_cast<int>(op), rhs)))
                return false;
            int pos = m - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == ps.size() - 1) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
        }
    }
    return true;
}

AdmissibleRelation AdmissibleRelation::checked(const FiniteAlgebra& alg,
                                               BinaryRelation rel) {
    if (!rel.reflexive())
        throw Error("relation on '" + alg.name + "' is not reflexive");
    if (!is_compatible(alg, rel))
        throw Error("relation on '" + alg.name + "' is not compatible");
    return AdmissibleRelation{std::move(rel), &alg};
}

namespace {

// Subuniverse of alg^2 generated by the given pairs, computed pairwise on
// the base tables (pair a*n+b as a single element).
Closure<int> pair_closure(const FiniteAlgebra& alg, const std::vector<int>& gens) {
    const int n = alg.size;
    auto apply = [&](int op, std::span<const int> args, const std::vector<int>& elems) {
        std::vector<int> lhs(args.size()), rhs(args.size());
        for (std::size_t i = 0; i < args.size(); ++i) {
            int e = elems[static_cast<std::size_t>(args[i])];
            lhs[i] = e / n;
            rhs[i] = e % n;
        }
        return alg.apply(op, lhs) * n + alg.apply(op, rhs);
    };
    return close_under<int>(gens, alg.ops, apply,
                            static_cast<std::size_t>(n) * static_cast<std::size_t>(n) + 1);
}

BinaryRelation closure_to_relation(const Closure<int>& c, int n) {
    BinaryRelation out(n);
    for (int e : c.elements) out.set(e / n, e % n);
    return out;
}

} // namespace

BinaryRelation compatible_closure(const FiniteAlgebra& alg, const BinaryRelation& R) {
    if (R.size() != alg.size)
        throw Error("relation carrier does not match algebra '" + alg.name + "'");
    std::vector<int> gens;
    for (auto [a, b] : R.pairs()) gens.push_back(a * alg.size + b);
    if (gens.empty()) {
        bool has_constant = false;
        for (const Operation& op : alg.ops) has_constant |= (op.arity == 0);
        if (!has_constant) return BinaryRelation(alg.size);
    }
    return closure_to_relation(pair_closure(alg, gens), alg.size);
}

AdmissibleRelation generated_admissible(const FiniteAlgebra& alg,
                                        const BinaryRelation& R) {
    BinaryRelation closed =
        compatible_closure(alg, R | BinaryRelation::identity(alg.size));
    return AdmissibleRelation{std::move(closed), &alg};
}

AdmissibleRelation generated_admissible(const FiniteAlgebra& alg,
                                        const std::vector<std::pair<int, int>>& pairs) {
    return generated_admissible(alg, BinaryRelation::from_pairs(alg.size, pairs));
}

AdmissibleRelation tolerance_closure(const FiniteAlgebra& alg,
                                     const BinaryRelation& R) {
    // Symmetric generating set; swapping coordinates is an automorphism of
    // alg^2, so the closure stays symmetric.
    return generated_admissible(alg, R | converse(R));
}

AdmissibleRelation congruence_closure(const FiniteAlgebra& alg,
                                      const BinaryRelation& R) {
    BinaryRelation cur = R;
    for (;;) {
        BinaryRelation tol = tolerance_closure(alg, cur).rel;
        BinaryRelation trans = transitive_closure(tol);
        if (trans == cur) break;
        cur = trans;
    }
    return AdmissibleRelation{cur, &alg};
}

AdmissibleEnumeration enumerate_admissible(const FiniteAlgebra& alg,
                                           std::size_t cap) {
    const int n = alg.size;
    std::vector<std::pair<int, int>> off;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) off.emplace_back(i, j);
    AdmissibleEnumeration out;
    if (off.size() > 24)
        throw CapError("enumerate_admissible: carrier too large (" +
                       std::to_string(n) + ")");
    std::vector<BinaryRelation> seen;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << off.size()); ++mask) {
        if (seen.size() >= cap) {
            out.complete = false;
            break;
        }
        BinaryRelation gen = BinaryRelation::identity(n);
        for (std::size_t b = 0; b < off.size(); ++b)
            if ((mask >> b) & 1) gen.set(off[b].first, off[b].second);
        BinaryRelation closed = generated_admissible(alg, gen).rel;
        if (std::find(seen.begin(), seen.end(), closed) == seen.end())
            seen.push_back(std::move(closed));
    }
    std::sort(seen.begin(), seen.end());
    for (BinaryRelation& r : seen)
        out.relations.push_back(AdmissibleRelation{std::move(r), &alg});
    return out;
}

AdmissibleRelation map_relation(const Homomorphism& h, const BinaryRelation& R) {
    if (R.size() != h.source->size)
        throw Error("map_relation: relation carrier does not match hom source");
    BinaryRelation img(h.target->size);
    for (auto [a, b] : R.pairs()) img.set(h(a), h(b));
    return generated_admissible(*h.target, img);
}

} // namespace malrel
