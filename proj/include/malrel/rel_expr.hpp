#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "malrel/admissible.hpp"

namespace malrel {

// Expression trees over relation variables, mechanizing the right-hand
// sides of the relational inclusions the verifier checks.
struct RelExpr;
using ExprPtr = std::shared_ptr<const RelExpr>;

struct RelExpr {
    enum class Kind {
        Var,
        Diag,
        Full,
        Compose,
        ComposeN,   // alternating product with n factors
        Power,
        Converse,
        Union,
        Intersect,
        CompatibleClosure,
        ToleranceClosure,
        TransitiveClosure,
        CongruenceClosure,
        AdmissibleClosure,
        Sum,
        OperatorApp,
    };

    Kind kind;
    std::string name;            // Var / OperatorApp
    int n = 0;                   // ComposeN / Power
    std::vector<ExprPtr> args;

    std::string str() const;
};

ExprPtr ex_var(std::string name);
ExprPtr ex_diag();
ExprPtr ex_full();
ExprPtr ex_compose(ExprPtr a, ExprPtr b);
ExprPtr ex_compose(std::vector<ExprPtr> chain);
ExprPtr ex_compose_n(ExprPtr a, ExprPtr b, int n);
ExprPtr ex_power(ExprPtr a, int n);
ExprPtr ex_converse(ExprPtr a);
ExprPtr ex_union(ExprPtr a, ExprPtr b);
ExprPtr ex_union(std::vector<ExprPtr> parts);
ExprPtr ex_intersect(ExprPtr a, ExprPtr b);
ExprPtr ex_bar(ExprPtr a);     // compatible closure
ExprPtr ex_tol(ExprPtr a);
ExprPtr ex_tc(ExprPtr a);
ExprPtr ex_cg(ExprPtr a);
ExprPtr ex_adm(ExprPtr a);
ExprPtr ex_sum(ExprPtr a, ExprPtr b);
ExprPtr ex_sum(std::vector<ExprPtr> parts); // left-associated fold
ExprPtr ex_op(std::string opname, ExprPtr a);

struct EvalContext {
    const FiniteAlgebra* alg = nullptr;
    std::map<std::string, BinaryRelation> env;
    // Named-operator application; installed by the operator framework.
    std::function<AdmissibleRelation(const std::string&, const AdmissibleRelation&)>
        apply_op;
    bool strict = true;
    // One note per lenient coercion of a non-admissible operator argument.
    mutable std::vector<std::string> coercions;
    // Number of expression-node evaluations performed (the budget unit).
    mutable long long evals = 0;
};

BinaryRelation eval_rel_expr(const RelExpr& expr, const EvalContext& ctx);

// Surface syntax: R o S, R + S, R u S, R & S, R^n, conv/tc/cc/bar/tol/cg/adm,
// delta, full, F(R) for an operator named F.
ExprPtr parse_rel_expr(const std::string& text);

// Relation literal: JSON pair list, then optional flags `refl` and `adm`,
// e.g. "[[0,1]] adm".
struct RelationLiteral {
    std::vector<std::pair<int, int>> pairs;
    bool reflexive_close = false;
    bool admissible_close = false;
};

RelationLiteral parse_relation_literal(const std::string& text);
BinaryRelation realize_literal(const RelationLiteral& lit,
                               const FiniteAlgebra& alg);

} // namespace malrel
