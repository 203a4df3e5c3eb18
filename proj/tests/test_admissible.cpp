#include <doctest.h>

#include <random>

#include "malrel/admissible.hpp"
#include "util.hpp"

using namespace malrel;

TEST_CASE("compatible_closure adds no diagonal") {
    FiniteAlgebra z2 = corpus("z2.alg");
    BinaryRelation R = BinaryRelation::from_pairs(2, {{0, 1}});
    BinaryRelation closed = compatible_closure(z2, R);
    // xor-closure of {(0,1)}: (0,1)+(0,1)=(0,0)
    CHECK(closed == BinaryRelation::from_pairs(2, {{0, 1}, {0, 0}}));

    FiniteAlgebra sl = corpus("semilattice2.alg");
    BinaryRelation sym = BinaryRelation::from_pairs(2, {{0, 1}, {1, 0}});
    CHECK(compatible_closure(sl, sym) ==
          BinaryRelation::from_pairs(2, {{0, 1}, {1, 0}, {0, 0}}));

    // Already a subuniverse: unchanged.
    CHECK(compatible_closure(z2, closed) == closed);
}

TEST_CASE("generated_admissible") {
    FiniteAlgebra z2 = corpus("z2.alg");
    CHECK(generated_admissible(z2, {{0, 1}}).rel == BinaryRelation::full(2));
    CHECK(generated_admissible(z2, std::vector<std::pair<int, int>>{}).rel ==
          BinaryRelation::identity(2));

    FiniteAlgebra sl = corpus("semilattice2.alg");
    BinaryRelation order = BinaryRelation::identity(2);
    order.set(0, 1);
    CHECK(generated_admissible(sl, {{0, 1}}).rel == order);
}

TEST_CASE("tolerance_closure") {
    FiniteAlgebra sl = corpus("semilattice2.alg");
    auto t = tolerance_closure(sl, BinaryRelation::from_pairs(2, {{0, 1}}));
    CHECK(t.rel == BinaryRelation::full(2));
    CHECK(t.rel.symmetric());

    FiniteAlgebra z2 = corpus("z2.alg");
    CHECK(tolerance_closure(z2, BinaryRelation::from_pairs(2, {{0, 1}})).rel ==
          BinaryRelation::full(2));

    CHECK(tolerance_closure(sl, t.rel).rel == t.rel);
}

TEST_CASE("congruence_closure") {
    FiniteAlgebra sl = corpus("semilattice2.alg");
    BinaryRelation above = BinaryRelation::identity(2);
    above.set(0, 1);
    CHECK(congruence_closure(sl, above).rel == BinaryRelation::full(2));
    CHECK(congruence_closure(sl, BinaryRelation::identity(2)).rel ==
          BinaryRelation::identity(2));
}

TEST_CASE("Cg(R) = R' + conv(R') for generated admissible R'") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> el(0, 2);
    for (const char* file : {"z3.alg", "semilattice3.alg"}) {
        FiniteAlgebra alg = corpus(file);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<std::pair<int, int>> pairs;
            for (int i = 0; i < 2; ++i) pairs.emplace_back(el(rng), el(rng));
            AdmissibleRelation rp = generated_admissible(alg, pairs);
            BinaryRelation lhs = congruence_closure(alg, rp.rel).rel;
            BinaryRelation rhs = rel_sum(rp.rel, converse(rp.rel));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("closure operators are monotone, extensive, idempotent") {
    std::mt19937_64 rng(5);
    FiniteAlgebra alg = corpus("semilattice3.alg");
    std::uniform_int_distribution<int> bit(0, 1);
    auto rand_rel = [&](int n) {
        BinaryRelation r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (bit(rng)) r.set(i, j);
        return r;
    };
    for (int trial = 0; trial < 30; ++trial) {
        BinaryRelation r = rand_rel(3);
        BinaryRelation s = r | rand_rel(3);
        auto check_closure = [&](auto cl) {
            BinaryRelation cr = cl(r), cs = cl(s);
            CHECK(r.subset_of(cr));
            CHECK(cr.subset_of(cs));
            CHECK(cl(cr) == cr);
        };
        check_closure([&](const BinaryRelation& x) { return compatible_closure(alg, x); });
        check_closure([&](const BinaryRelation& x) { return tolerance_closure(alg, x).rel; });
        check_closure([&](const BinaryRelation& x) { return transitive_closure(x); });
        check_closure([&](const BinaryRelation& x) { return congruence_closure(alg, x).rel; });
    }
}

TEST_CASE("composition of admissible relations is compatible") {
    FiniteAlgebra alg = corpus("semilattice3.alg");
    auto all = enumerate_admissible(alg).relations;
    for (const auto& r : all)
        for (const auto& s : all)
            CHECK(is_compatible(alg, compose(r.rel, s.rel)));
}

TEST_CASE("enumerate_admissible") {
    FiniteAlgebra z3 = corpus("z3.alg");
    auto res = enumerate_admissible(z3);
    CHECK(res.complete);
    CHECK(res.relations.size() == 2); // diagonal and full

    FiniteAlgebra sl = corpus("semilattice2.alg");
    auto sres = enumerate_admissible(sl);
    CHECK(sres.relations.size() == 4);

    // Brute-force oracle: directly filter all relations containing the
    // diagonal for compatibility.
    int count = 0;
    for (std::uint64_t mask = 0; mask < 512; ++mask) {
        BinaryRelation r(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if ((mask >> (3 * i + j)) & 1) r.set(i, j);
        if (r.reflexive() && is_compatible(z3, r)) ++count;
    }
    CHECK(count == 2);

    for (const auto& r : res.relations)
        CHECK_NOTHROW(AdmissibleRelation::checked(z3, r.rel));
    // Pairwise distinct, and both extremes present.
    CHECK(res.relations.front().rel == BinaryRelation::identity(3));
    CHECK(res.relations.back().rel == BinaryRelation::full(3));
}

TEST_CASE("map_relation") {
    FiniteAlgebra z2 = corpus("z2.alg");
    Homomorphism id = Homomorphism::checked(z2, z2, {0, 1});
    BinaryRelation r = BinaryRelation::identity(2);
    r.set(0, 1);
    CHECK(map_relation(id, r).rel == BinaryRelation::full(2));
    CHECK(map_relation(id, BinaryRelation::identity(2)).rel ==
          BinaryRelation::identity(2));

    Homomorphism zero = Homomorphism::checked(z2, z2, {0, 0});
    CHECK(map_relation(zero, BinaryRelation::full(2)).rel ==
          BinaryRelation::identity(2));
}
