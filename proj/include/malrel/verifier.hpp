#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "malrel/malcev.hpp"
#include "malrel/operators.hpp"
#include "malrel/rel_expr.hpp"

namespace malrel {

// One inclusion lhs subseteq rhs under a quantifier plan: admissible
// variables range over Adm(A), theta variables over arbitrary relations,
// and an optional integer parameter / chain length drives indexed clauses.
struct ClauseSpec {
    std::string id;           // "i" .. "xiv"
    std::vector<std::string> adm_vars;
    std::vector<std::string> theta_vars;
    int param_lo = 0, param_hi = 0;   // inclusive; 0..0 when unused
    bool chain = false;               // adm_vars R1..Rm with m = param
    bool diagram = false;             // clause (i)'s pair-level hypothesis
    // Inclusion chain lhs <= exprs[0] <= exprs[1] ... given the parameter.
    std::vector<std::vector<ExprPtr>> (*make)(int param) = nullptr;
};

const std::vector<ClauseSpec>& theorem1_clauses();
const ClauseSpec& clause_by_id(const std::string& id);

enum class Status { Pass, Fail, Skipped };

struct Violation {
    std::string bindings;
    std::string pair;   // the lhs pair missing from rhs
};

struct VerificationReport {
    std::string clause;
    std::string algebra;
    std::string operators;
    std::size_t instances = 0;
    std::vector<Violation> violations;
    Status status = Status::Pass;
    bool asserted = true;   // false => exploratory (no Mal'cev witness)
    bool sampled = false;   // instance space was sampled, not exhausted
    std::string note;
};

struct VerifierConfig {
    std::uint64_t seed = 0;
    long long budget = 1000000;   // relation-expression evaluations per clause
    int theta_samples = 200;      // per slot, carriers > 2
    std::size_t max_violations = 20;
};

VerificationReport check_clause(const FiniteAlgebra& alg, const ClauseSpec& clause,
                                const RelationOperator& F, const RelationOperator& G,
                                const VerifierConfig& cfg, bool witness_exists);

// Theorem 2, checked empirically: a witness for (F,G) implies one for
// (triple_pointwise F, triple_pointwise G).
VerificationReport check_theorem_f2(const FiniteAlgebra& alg,
                                    const RelationOperator& F,
                                    const RelationOperator& G,
                                    const VerifierConfig& cfg);

// Theorem 3 consistency: routes (iv), (vii), (x) agree; on yes, the witness
// verifies over alg, its subalgebras and alg^2, and the (vi)/(ix)-shape
// inclusions hold.
VerificationReport check_equivalence_suite(const FiniteAlgebra& alg,
                                           const RelationOperator& F,
                                           const RelationOperator& G,
                                           const VerifierConfig& cfg);

std::string status_str(Status s);

} // namespace malrel
