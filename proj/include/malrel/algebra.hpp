#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "malrel/errors.hpp"

namespace malrel {

struct Operation {
    std::string name;
    int arity = 0;
    // Row-major lookup table of length size^arity; the leftmost argument is
    // the most significant digit of the index.
    std::vector<int> table;
};

// A finite algebra with carrier {0, ..., size-1}.
struct FiniteAlgebra {
    std::string name;
    int size = 0;
    std::vector<Operation> ops;

    // Throws Error if any invariant is violated (range, table length,
    // duplicate op names).
    void validate() const;

    int op_index(const std::string& opname) const; // -1 if absent

    int apply(int op, std::span<const int> args) const;
};

struct Term {
    int var = -1;              // >= 0: a variable leaf; op fields unused
    std::string opname;        // valid when var < 0
    std::vector<Term> args;

    static Term variable(int index) { return Term{index, {}, {}}; }
    static Term apply(std::string opname, std::vector<Term> args);

    bool is_variable() const { return var >= 0; }
    int max_var() const;

    // Prefix notation; variables print as x,y,z for indices 0..2 and
    // v<i+1> beyond that.
    std::string str() const;

    bool operator==(const Term&) const = default;
};

// Replaces variable i with variable mapping[i].
Term rename_vars(const Term& t, std::span<const int> mapping);

using Assignment = std::vector<int>;

int eval_term(const FiniteAlgebra& alg, const Term& t, const Assignment& asg);

// Coordinatewise k-th power of alg. Tuples map to flat indices row-major,
// leftmost coordinate most significant. carrier_cap bounds the result size.
FiniteAlgebra product_power(const FiniteAlgebra& alg, int k,
                            std::size_t carrier_cap = 1000000);

std::size_t power_index(std::span<const int> tuple, int base);
std::vector<int> power_tuple(std::size_t index, int base, int k);

struct Homomorphism {
    const FiniteAlgebra* source = nullptr;
    const FiniteAlgebra* target = nullptr;
    std::vector<int> map;

    // Throws Error unless map commutes with every operation.
    static Homomorphism checked(const FiniteAlgebra& source,
                                const FiniteAlgebra& target,
                                std::vector<int> map);

    int operator()(int a) const { return map[static_cast<std::size_t>(a)]; }
};

bool is_homomorphism(const FiniteAlgebra& source, const FiniteAlgebra& target,
                     std::span<const int> map);

struct HomSearchResult {
    std::vector<Homomorphism> homs;
    bool complete = true; // false when the candidate cap was hit
};

// All homomorphisms source -> target, backtracking with forward checking,
// in lexicographic order of the underlying map. `cap` bounds the number of
// search nodes examined.
HomSearchResult enumerate_homomorphisms(const FiniteAlgebra& source,
                                        const FiniteAlgebra& target,
                                        std::size_t cap = 10000000);

// Algebra file format: a JSON document {name, size, operations:[{name,
// arity, table}]}. Unknown fields are rejected.
FiniteAlgebra parse_algebra(const std::string& text);
FiniteAlgebra load_algebra(const std::string& path);
std::string algebra_to_json(const FiniteAlgebra& alg);

} // namespace malrel
