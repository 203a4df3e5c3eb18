#pragma once

#include <optional>
#include <string>
#include <vector>

#include "malrel/closure.hpp"
#include "malrel/operators.hpp"

namespace malrel {

// The smallest reflexive admissible relation S of the free algebra on two
// generators x,y containing (x,y), with a witness term per pair. Witness
// terms are ternary, over the generator slots (x,y), (x,x), (y,y) in that
// order: slot i contributes coordinate pairs, so the pair witnessed by u is
// (u(x,x,y), u(y,x,y)).
struct PrincipalFreeRelation {
    AdmissibleRelation S; // on X.algebra
    Closure<int> pairs;   // pair a*|X|+b -> derivation over the three slots

    Term witness(int a, int b, const FreeAlgebraRepr& X) const;
};

PrincipalFreeRelation principal_free_relation(const FreeAlgebraRepr& X);

struct MalcevWitness {
    Term term;          // ternary, variables x,y,z
    std::string route;  // "iv" | "vii" | "x"
    std::vector<Term> intermediate; // t1, t2, u where applicable
};

// Theorem-3-style decision procedures. Each returns a witness term when the
// variety generated by alg has a term Mal'cev modulo F and G, and nullopt
// otherwise.
std::optional<MalcevWitness> find_term_cond_iv(const FiniteAlgebra& alg,
                                               const RelationOperator& F,
                                               const RelationOperator& G,
                                               std::size_t free_cap = 200000);

std::optional<MalcevWitness> check_cond_vii(const FiniteAlgebra& alg,
                                            const RelationOperator& F,
                                            const RelationOperator& G,
                                            bool full_inclusion = false,
                                            std::size_t free_cap = 200000);

std::optional<MalcevWitness> check_cond_x(const FiniteAlgebra& alg,
                                          const RelationOperator& F,
                                          const RelationOperator& G,
                                          bool full_inclusion = false,
                                          std::size_t free_cap = 200000);

struct MalcevViolation {
    std::string algebra;
    std::string relation;
    int a = 0;
    int b = 0;
    std::string side; // "F" or "G"
};

struct VerifyReport {
    std::size_t instances = 0;
    std::vector<MalcevViolation> violations;
    bool pass() const { return violations.empty(); }
};

// Checks a F(R) t(a,b,b) and t(a,a,b) G(R) b over every algebra in the
// family, every supplied admissible R, and every pair (a,b) in R.
VerifyReport verify_malcev_term(
    const std::vector<const FiniteAlgebra*>& family, const Term& t,
    const RelationOperator& F, const RelationOperator& G,
    const std::vector<std::vector<AdmissibleRelation>>& rel_source);

} // namespace malrel
