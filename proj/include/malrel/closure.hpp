#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "malrel/algebra.hpp"
#include "malrel/errors.hpp"

namespace malrel {

// How a closure element was first obtained: either generator `gen`, or
// op applied to previously discovered element indices. First derivation
// found is kept, so witnesses are stable and roughly minimal-depth.
struct Derivation {
    int op = -1;
    int gen = -1;
    std::vector<int> args;
};

template <class Elem, class Hash = std::hash<Elem>>
struct Closure {
    std::vector<Elem> elements;
    std::vector<Derivation> deriv;
    std::unordered_map<Elem, int, Hash> index;

    int find(const Elem& e) const {
        auto it = index.find(e);
        return it == index.end() ? -1 : it->second;
    }

    // Term over variables naming the generators.
    Term witness(int i, const std::vector<Operation>& sig) const {
        const Derivation& d = deriv[static_cast<std::size_t>(i)];
        if (d.op < 0) return Term::variable(d.gen);
        std::vector<Term> args;
        args.reserve(d.args.size());
        for (int a : d.args) args.push_back(witness(a, sig));
        return Term::apply(sig[static_cast<std::size_t>(d.op)].name,
                           std::move(args));
    }
};

// Least set containing `gens` closed under the given operations, via a
// worklist: when element i is processed, all op applications over tuples of
// already-present elements with at least one coordinate equal to i are tried.
// apply: (op, arg element indices, elements so far) -> Elem.
template <class Elem, class Hash = std::hash<Elem>, class Apply>
Closure<Elem, Hash> close_under(const std::vector<Elem>& gens,
                                std::span<const Operation> sig, Apply&& apply,
                                std::size_t cap) {
    Closure<Elem, Hash> c;
    auto add = [&](Elem e, Derivation d) {
        auto [it, fresh] = c.index.try_emplace(std::move(e),
                                               static_cast<int>(c.elements.size()));
        if (!fresh) return;
        if (c.elements.size() >= cap)
            throw CapError("closure cap exceeded: more than " +
                           std::to_string(cap) + " elements");
        c.elements.push_back(it->first);
        c.deriv.push_back(std::move(d));
    };
    int g = 0;
    for (const Elem& e : gens) add(e, Derivation{-1, g++, {}});
    for (std::size_t op = 0; op < sig.size(); ++op)
        if (sig[op].arity == 0)
            add(apply(static_cast<int>(op), std::span<const int>{}, c.elements),
                Derivation{static_cast<int>(op), -1, {}});
    std::vector<int> tuple;
    for (int i = 0; i < static_cast<int>(c.elements.size()); ++i) {
        for (std::size_t op = 0; op < sig.size(); ++op) {
            const int m = sig[op].arity;
            if (m == 0) continue;
            tuple.assign(static_cast<std::size_t>(m), 0);
            for (;;) {
                bool uses_i = false;
                for (int v : tuple) uses_i |= (v == i);
                if (uses_i)
                    add(apply(static_cast<int>(op), std::span<const int>(tuple),
                              c.elements),
                        Derivation{static_cast<int>(op), -1, tuple});
                int pos = m - 1;
                while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == i) {
                    tuple[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++tuple[static_cast<std::size_t>(pos)];
            }
        }
    }
    return c;
}

struct Subalgebra {
    std::vector<int> elements;
    std::vector<Term> witnesses; // empty unless requested
};

// Least subuniverse of alg containing `generators`.
Subalgebra generate_subalgebra(const FiniteAlgebra& alg,
                               const std::vector<int>& generators,
                               bool want_witnesses = false);

// The free algebra on `generator_count` generators in the variety generated
// by `base`, realized inside base^(n^k). Elements are tuples indexed by
// assignments to the generators (row-major, leftmost generator most
// significant); each element carries a term witness over the generators.
struct FreeAlgebraRepr {
    const FiniteAlgebra* base = nullptr;
    int generator_count = 0;
    int coord_count = 0;                 // n^k
    std::vector<std::string> elements;   // one byte per coordinate
    std::vector<int> generator_indices;
    FiniteAlgebra algebra; // the free algebra itself, over element indices

    Term witness(int i) const;
    int find(const std::string& tuple) const;

  private:
    std::vector<Derivation> deriv_;
    std::unordered_map<std::string, int> index_;
    friend FreeAlgebraRepr free_algebra(const FiniteAlgebra&, int, std::size_t);
};

FreeAlgebraRepr free_algebra(const FiniteAlgebra& alg, int k,
                             std::size_t element_cap = 200000);

} // namespace malrel
