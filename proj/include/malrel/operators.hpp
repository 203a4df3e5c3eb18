#pragma once

#include <optional>
#include <string>
#include <vector>

#include "malrel/admissible.hpp"
#include "malrel/rel_expr.hpp"

namespace malrel {

// A named map Adm(A) -> Adm(A), instantiable uniformly on every algebra
// (the finite realization of a global operator).
struct RelationOperator {
    enum class Kind {
        ConstDiag,
        Identity,
        ConstFull,
        TransitiveClosure,
        ToleranceClosure,
        CongruenceClosure,
        Converse,
        PowerK,
        SumWithConverse,   // R -> R + R^-
        Composite,         // [F1,F2,...]: R -> F1(F2(...(R)))
        PointwiseCompose,  // [F1,F2,F3]: R -> F1(R) o F2(R) o F3(R)
        SquareOf,          // R -> F(F(R))
        Expr,              // user template with free variable R
        NonMonotoneDemo,   // full when R is proper, diagonal at the top
    };

    std::string name;
    Kind kind = Kind::ConstDiag;
    int k = 0;                            // PowerK
    std::vector<RelationOperator> parts;  // Composite / PointwiseCompose / SquareOf
    ExprPtr expr;                         // Expr

    std::string str() const { return name; }
};

// Dispatches on kind and asserts the result is admissible; a violating
// (user-supplied) operator fails with an Error naming it.
AdmissibleRelation apply_operator(const RelationOperator& op,
                                  const FiniteAlgebra& alg,
                                  const AdmissibleRelation& R);

RelationOperator square_operator(const RelationOperator& op);   // F^(2)
RelationOperator triple_pointwise(const RelationOperator& op);  // F^(2) o F^(2) o F^(2)

// CLI surface syntax: diag | id | full | tc | tol | cg | conv | sumconv |
// pow:k | expr:<RelExpr in R> | sq(F) | F.G (composition) | F*G*H
// (pointwise composition).
RelationOperator parse_operator(const std::string& text);

struct MonotoneReport {
    bool pass = true;
    std::size_t pairs_checked = 0;
    std::string counterexample; // empty on pass
};

MonotoneReport check_monotone(
    const RelationOperator& op, const FiniteAlgebra& alg,
    const std::vector<std::pair<AdmissibleRelation, AdmissibleRelation>>& pairs);

// Nested pairs R <= S drawn from the full admissible enumeration when small.
std::vector<std::pair<AdmissibleRelation, AdmissibleRelation>>
nested_admissible_pairs(const FiniteAlgebra& alg,
                        const std::vector<AdmissibleRelation>& all);

struct HomPropertyReport {
    bool pass = true;
    std::size_t instances = 0;
    std::vector<std::string> counterexamples;
};

// phi(F_B(R)) subseteq F_A(phi(R)) for each hom and each sampled R on its
// source; sample_rels[i] goes with homs[i]'s source.
HomPropertyReport check_hom_property(
    const RelationOperator& op, const std::vector<Homomorphism>& homs,
    const std::vector<std::vector<AdmissibleRelation>>& sample_rels);

} // namespace malrel
