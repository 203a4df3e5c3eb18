#include <doctest.h>

#include "malrel/malcev.hpp"
#include "util.hpp"

using namespace malrel;

namespace {

// Independent oracle: does any ternary term operation of alg satisfy the
// exact Mal'cev identities? Scans the free algebra on three generators.
bool has_exact_malcev_term(const FiniteAlgebra& alg) {
    FreeAlgebraRepr X = free_algebra(alg, 3);
    for (const std::string& e : X.elements) {
        bool ok = true;
        for (int a = 0; a < alg.size && ok; ++a)
            for (int b = 0; b < alg.size && ok; ++b) {
                std::size_t abb = power_index(std::vector<int>{a, b, b}, alg.size);
                std::size_t aab = power_index(std::vector<int>{a, a, b}, alg.size);
                ok = e[abb] == static_cast<char>(a) && e[aab] == static_cast<char>(b);
            }
        if (ok) return true;
    }
    return false;
}

bool is_exact_malcev(const FiniteAlgebra& alg, const Term& t) {
    for (int a = 0; a < alg.size; ++a)
        for (int b = 0; b < alg.size; ++b)
            if (eval_term(alg, t, {a, b, b}) != a || eval_term(alg, t, {a, a, b}) != b)
                return false;
    return true;
}

} // namespace

TEST_CASE("principal free relation on the 2-element semilattice") {
    FiniteAlgebra sl = corpus("semilattice2.alg");
    FreeAlgebraRepr X = free_algebra(sl, 2);
    PrincipalFreeRelation P = principal_free_relation(X);
    CHECK(P.S.rel.reflexive());
    int x = X.generator_indices[0], y = X.generator_indices[1];
    CHECK(P.S.rel.at(x, y));

    // Oracle: S is exactly the meet-closure of the three generator pairs
    // inside X^2, i.e. pairs (u(x,x,y), u(y,x,y)) over ternary terms u.
    // Witness terms must reproduce their pairs when evaluated in X.
    for (auto [a, b] : P.S.rel.pairs()) {
        Term u = P.witness(a, b, X);
        Assignment first = {x, x, y}, second = {y, x, y};
        CHECK(eval_term(X.algebra, u, first) == a);
        CHECK(eval_term(X.algebra, u, second) == b);
    }
}

TEST_CASE("principal free relation on the trivial algebra") {
    FiniteAlgebra one;
    one.name = "trivial";
    one.size = 1;
    FreeAlgebraRepr X = free_algebra(one, 2);
    CHECK(X.elements.size() == 1);
    PrincipalFreeRelation P = principal_free_relation(X);
    CHECK(P.S.rel.count() == 1);
}

TEST_CASE("exact Mal'cev recovery on groups, none on semilattices") {
    RelationOperator diag = parse_operator("diag");
    for (const char* file : {"z2.alg", "z3.alg", "z2malcev.alg"}) {
        FiniteAlgebra alg = corpus(file);
        auto w = find_term_cond_iv(alg, diag, diag);
        REQUIRE(w.has_value());
        CHECK(is_exact_malcev(alg, w->term));
        CHECK(has_exact_malcev_term(alg));
    }
    for (const char* file : {"semilattice2.alg", "lattice2.alg"}) {
        FiniteAlgebra alg = corpus(file);
        CHECK(!find_term_cond_iv(alg, diag, diag).has_value());
        CHECK(!has_exact_malcev_term(alg));
    }
}

TEST_CASE("semilattice modulo congruence closure has a witness") {
    FiniteAlgebra sl = corpus("semilattice2.alg");
    RelationOperator cg = parse_operator("cg");
    auto w = find_term_cond_iv(sl, cg, cg);
    REQUIRE(w.has_value());
    // The witness must verify over all admissible relations of sl.
    auto all = enumerate_admissible(sl).relations;
    VerifyReport rep = verify_malcev_term({&sl}, w->term, cg, cg, {all});
    CHECK(rep.pass());
}

TEST_CASE("cond vii agrees and extraction identities hold") {
    RelationOperator diag = parse_operator("diag");
    RelationOperator cg = parse_operator("cg");

    FiniteAlgebra z2 = corpus("z2.alg");
    auto w = check_cond_vii(z2, diag, diag);
    REQUIRE(w.has_value());
    CHECK(is_exact_malcev(z2, w->term));
    // t1(x,y,y) = t(x,y,y) and t(y,y,z) = t2(y,y,z) as term operations.
    const Term& t1 = w->intermediate[0];
    const Term& t2 = w->intermediate[1];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            CHECK(eval_term(z2, t1, {a, b, b}) == eval_term(z2, w->term, {a, b, b}));
            CHECK(eval_term(z2, w->term, {a, a, b}) == eval_term(z2, t2, {a, a, b}));
        }

    FiniteAlgebra lat = corpus("lattice2.alg");
    CHECK(!check_cond_vii(lat, diag, diag).has_value());
    CHECK(check_cond_vii(lat, cg, cg).has_value());

    // Full-inclusion mode agrees with single-pair mode on the corpus.
    for (const char* file : {"z2.alg", "semilattice2.alg", "set2.alg"}) {
        FiniteAlgebra alg = corpus(file);
        for (const RelationOperator& f : {diag, cg})
            CHECK(check_cond_vii(alg, f, f, true).has_value() ==
                  check_cond_vii(alg, f, f, false).has_value());
    }
}

TEST_CASE("cond x shares the search core with cond iv") {
    RelationOperator diag = parse_operator("diag");
    RelationOperator full = parse_operator("full");
    FiniteAlgebra z2 = corpus("z2.alg");
    auto wx = check_cond_x(z2, diag, diag);
    auto wiv = find_term_cond_iv(z2, diag, diag);
    REQUIRE(wx.has_value());
    REQUIRE(wiv.has_value());
    CHECK(wx->term == wiv->term);

    FiniteAlgebra sl = corpus("semilattice2.alg");
    CHECK(!check_cond_x(sl, diag, diag).has_value());
    CHECK(check_cond_x(sl, full, full).has_value());
    CHECK(check_cond_x(sl, full, full, true).has_value());
}

TEST_CASE("verify_malcev_term reports precise violations") {
    FiniteAlgebra sl = corpus("semilattice2.alg");
    RelationOperator diag = parse_operator("diag");
    Term meet3 = Term::apply(
        "meet", {Term::variable(0),
                 Term::apply("meet", {Term::variable(1), Term::variable(2)})});
    AdmissibleRelation order = generated_admissible(sl, {{0, 1}});
    VerifyReport rep = verify_malcev_term({&sl}, meet3, diag, diag, {{order}});
    CHECK(!rep.pass());
    bool found = false;
    for (const MalcevViolation& v : rep.violations)
        found |= (v.a == 0 && v.b == 1 && v.side == "G");
    CHECK(found);

    // Diagonal relation: always passes.
    AdmissibleRelation delta =
        AdmissibleRelation::checked(sl, BinaryRelation::identity(2));
    CHECK(verify_malcev_term({&sl}, meet3, diag, diag, {{delta}}).pass());

    // x+y+z is an exact Mal'cev term for z2 and its square.
    FiniteAlgebra z2 = corpus("z2.alg");
    FiniteAlgebra z2sq = product_power(z2, 2);
    Term xyz = Term::apply(
        "+", {Term::variable(0), Term::apply("+", {Term::variable(1), Term::variable(2)})});
    std::vector<std::vector<AdmissibleRelation>> rels = {
        enumerate_admissible(z2).relations, enumerate_admissible(z2sq).relations};
    CHECK(verify_malcev_term({&z2, &z2sq}, xyz, diag, diag, rels).pass());
}

TEST_CASE("round-trip soundness of found witnesses") {
    // Whenever the search succeeds, the witness verifies on the algebra and
    // its square with all generated admissible relations from single pairs.
    RelationOperator cg = parse_operator("cg");
    RelationOperator tc = parse_operator("tc");
    for (const char* file : {"z2.alg", "semilattice2.alg", "semilattice3.alg"}) {
        FiniteAlgebra alg = corpus(file);
        for (const RelationOperator& f : {cg, tc}) {
            auto w = find_term_cond_iv(alg, f, f);
            if (!w) continue;
            FiniteAlgebra sq = product_power(alg, 2);
            std::vector<std::vector<AdmissibleRelation>> rels;
            for (const FiniteAlgebra* a : {&alg, &sq}) {
                std::vector<AdmissibleRelation> rs;
                for (int x = 0; x < a->size; ++x)
                    for (int y = 0; y < a->size; ++y)
                        rs.push_back(generated_admissible(*a, {{x, y}}));
                rels.push_back(std::move(rs));
            }
            CHECK(verify_malcev_term({&alg, &sq}, w->term, f, f, rels).pass());
        }
    }
}

TEST_CASE("monotone degradation of witnesses") {
    // A witness for (diag,diag) stays a witness for any larger operators.
    FiniteAlgebra z2 = corpus("z2.alg");
    RelationOperator diag = parse_operator("diag");
    auto w = find_term_cond_iv(z2, diag, diag);
    REQUIRE(w.has_value());
    auto all = enumerate_admissible(z2).relations;
    for (const char* bigger : {"id", "tc", "cg", "full"}) {
        RelationOperator op = parse_operator(bigger);
        CHECK(verify_malcev_term({&z2}, w->term, op, op, {all}).pass());
    }
}
