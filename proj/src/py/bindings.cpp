#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "malrel/verifier.hpp"

namespace py = pybind11;
using namespace malrel;

namespace {

// Relation expressions from python take named relations and operator specs
// as plain strings; this builds the evaluation context on the fly.
BinaryRelation eval_expr(const FiniteAlgebra& alg, const std::string& expr,
                         const std::map<std::string, BinaryRelation>& env,
                         const std::map<std::string, std::string>& operators,
                         bool strict) {
    EvalContext ctx;
    ctx.alg = &alg;
    ctx.env = env;
    ctx.strict = strict;
    std::map<std::string, RelationOperator> ops;
    for (const auto& [name, spec] : operators) ops.emplace(name, parse_operator(spec));
    ctx.apply_op = [&](const std::string& name, const AdmissibleRelation& r) {
        auto it = ops.find(name);
        if (it == ops.end())
            return apply_operator(parse_operator(name), alg, r);
        return apply_operator(it->second, alg, r);
    };
    return eval_rel_expr(*parse_rel_expr(expr), ctx);
}

} // namespace

PYBIND11_MODULE(_malrel, m) {
    m.doc() = "finite-algebra relational workbench";

    py::register_exception<ParseError>(m, "MalrelParseError");
    py::register_exception<CapError>(m, "MalrelCapError");
    py::register_exception<Error>(m, "MalrelError");

    py::class_<Operation>(m, "Operation")
        .def_readonly("name", &Operation::name)
        .def_readonly("arity", &Operation::arity)
        .def_readonly("table", &Operation::table);

    py::class_<FiniteAlgebra>(m, "FiniteAlgebra")
        .def_readonly("name", &FiniteAlgebra::name)
        .def_readonly("size", &FiniteAlgebra::size)
        .def_readonly("ops", &FiniteAlgebra::ops)
        .def("__repr__", [](const FiniteAlgebra& a) {
            return "<FiniteAlgebra " + a.name + " size=" + std::to_string(a.size) + ">";
        });

    py::class_<BinaryRelation>(m, "BinaryRelation")
        .def(py::init<int>())
        .def_static("identity", &BinaryRelation::identity)
        .def_static("full", &BinaryRelation::full)
        .def_static("from_pairs", &BinaryRelation::from_pairs)
        .def("size", &BinaryRelation::size)
        .def("at", &BinaryRelation::at)
        .def("set", &BinaryRelation::set)
        .def("count", &BinaryRelation::count)
        .def("pairs", &BinaryRelation::pairs)
        .def("subset_of", &BinaryRelation::subset_of)
        .def("reflexive", &BinaryRelation::reflexive)
        .def("symmetric", &BinaryRelation::symmetric)
        .def("transitive", &BinaryRelation::transitive)
        .def("__or__", &BinaryRelation::operator|)
        .def("__and__", &BinaryRelation::operator&)
        .def("__eq__", [](const BinaryRelation& a, const BinaryRelation& b) { return a == b; })
        .def("__repr__", &BinaryRelation::str);

    m.def("parse_algebra", &parse_algebra);
    m.def("load_algebra", &load_algebra);
    m.def("algebra_to_json", &algebra_to_json);

    m.def("compose", &compose);
    m.def("converse", &converse);
    m.def("power", &power);
    m.def("transitive_closure", &transitive_closure);
    m.def("rel_sum", &rel_sum);

    m.def("compatible_closure", &compatible_closure);
    m.def("generated_admissible",
          [](const FiniteAlgebra& alg, const std::vector<std::pair<int, int>>& ps) {
              return generated_admissible(alg, ps).rel;
          });
    m.def("tolerance_closure", [](const FiniteAlgebra& alg, const BinaryRelation& r) {
        return tolerance_closure(alg, r).rel;
    });
    m.def("congruence_closure", [](const FiniteAlgebra& alg, const BinaryRelation& r) {
        return congruence_closure(alg, r).rel;
    });
    m.def("is_compatible", &is_compatible);

    m.def("eval_expr", &eval_expr, py::arg("algebra"), py::arg("expr"),
          py::arg("env") = std::map<std::string, BinaryRelation>{},
          py::arg("operators") = std::map<std::string, std::string>{},
          py::arg("strict") = false);

    m.def("apply_operator",
          [](const std::string& spec, const FiniteAlgebra& alg,
             const BinaryRelation& r) {
              AdmissibleRelation a = AdmissibleRelation::checked(alg, r);
              return apply_operator(parse_operator(spec), alg, a).rel;
          });

    m.def(
        "free_algebra_size",
        [](const FiniteAlgebra& alg, int k, std::size_t cap) {
            return free_algebra(alg, k, cap).elements.size();
        },
        py::arg("algebra"), py::arg("k"), py::arg("cap") = std::size_t{200000});

    m.def(
        "search_term",
        [](const FiniteAlgebra& alg, const std::string& f, const std::string& g,
           const std::string& route, std::size_t cap) -> py::object {
            RelationOperator F = parse_operator(f);
            RelationOperator G = parse_operator(g);
            std::optional<MalcevWitness> w;
            if (route == "iv")
                w = find_term_cond_iv(alg, F, G, cap);
            else if (route == "vii")
                w = check_cond_vii(alg, F, G, false, cap);
            else if (route == "x")
                w = check_cond_x(alg, F, G, false, cap);
            else
                throw ParseError("unknown route: " + route);
            if (!w) return py::none();
            return py::str(w->term.str());
        },
        py::arg("algebra"), py::arg("F"), py::arg("G"), py::arg("route") = "iv",
        py::arg("cap") = std::size_t{200000});

    m.def(
        "verify_clause",
        [](const FiniteAlgebra& alg, const std::string& clause,
           const std::string& f, const std::string& g, std::uint64_t seed) {
            VerifierConfig cfg;
            cfg.seed = seed;
            RelationOperator F = parse_operator(f);
            RelationOperator G = parse_operator(g);
            bool witness = find_term_cond_iv(alg, F, G).has_value();
            VerificationReport rep =
                check_clause(alg, clause_by_id(clause), F, G, cfg, witness);
            py::dict out;
            out["clause"] = rep.clause;
            out["status"] = status_str(rep.status);
            out["asserted"] = rep.asserted;
            out["sampled"] = rep.sampled;
            out["instances"] = rep.instances;
            py::list violations;
            for (const Violation& v : rep.violations) {
                py::dict d;
                d["bindings"] = v.bindings;
                d["pair"] = v.pair;
                violations.append(d);
            }
            out["violations"] = violations;
            return out;
        },
        py::arg("algebra"), py::arg("clause"), py::arg("F"), py::arg("G"),
        py::arg("seed") = std::uint64_t{0});

    m.def("clause_ids", [] {
        std::vector<std::string> ids;
        for (const ClauseSpec& c : theorem1_clauses()) ids.push_back(c.id);
        return ids;
    });
}
