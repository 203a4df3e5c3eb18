#pragma once

#include <vector>

#include "malrel/algebra.hpp"
#include "malrel/relation.hpp"

namespace malrel {

bool is_compatible(const FiniteAlgebra& alg, const BinaryRelation& R);

// A reflexive compatible relation on alg, i.e. a subuniverse of alg^2
// containing the diagonal. Holds a non-owning pointer to the algebra.
struct AdmissibleRelation {
    BinaryRelation rel;
    const FiniteAlgebra* alg = nullptr;

    // Throws Error unless rel is reflexive and compatible.
    static AdmissibleRelation checked(const FiniteAlgebra& alg,
                                      BinaryRelation rel);
};

// Least compatible relation containing R (no diagonal added).
BinaryRelation compatible_closure(const FiniteAlgebra& alg,
                                  const BinaryRelation& R);

// Least reflexive compatible relation containing the given pairs.
AdmissibleRelation generated_admissible(const FiniteAlgebra& alg,
                                        const BinaryRelation& R);
AdmissibleRelation generated_admissible(const FiniteAlgebra& alg,
                                        const std::vector<std::pair<int, int>>& pairs);

// Least tolerance (reflexive, symmetric, compatible) containing R.
AdmissibleRelation tolerance_closure(const FiniteAlgebra& alg,
                                     const BinaryRelation& R);

// Least congruence containing R: alternate compatible-reflexive-symmetric
// and transitive passes until stable.
AdmissibleRelation congruence_closure(const FiniteAlgebra& alg,
                                      const BinaryRelation& R);

struct AdmissibleEnumeration {
    std::vector<AdmissibleRelation> relations; // lexicographic order
    bool complete = true;
};

// All reflexive compatible relations on alg, by closing every subset of
// off-diagonal pairs. Feasible for tiny carriers only.
AdmissibleEnumeration enumerate_admissible(const FiniteAlgebra& alg,
                                           std::size_t cap = 1000000);

// Image of R under h, then reflexive-admissible closure on the target.
AdmissibleRelation map_relation(const Homomorphism& h, const BinaryRelation& R);

} // namespace malrel
