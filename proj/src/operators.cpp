#include "malrel/operators.hpp"

#include <sstream>

namespace malrel {

AdmissibleRelation apply_operator(const RelationOperator& op,
                                  const FiniteAlgebra& alg,
                                  const AdmissibleRelation& R) {
    using K = RelationOperator::Kind;
    BinaryRelation out;
    switch (op.kind) {
        case K::ConstDiag: out = BinaryRelation::identity(alg.size); break;
        case K::Identity: out = R.rel; break;
        case K::ConstFull: out = BinaryRelation::full(alg.size); break;
        case K::TransitiveClosure: out = transitive_closure(R.rel); break;
        case K::ToleranceClosure: out = tolerance_closure(alg, R.rel).rel; break;
        case K::CongruenceClosure: out = congruence_closure(alg, R.rel).rel; break;
        case K::Converse: out = converse(R.rel); break;
        case K::PowerK: out = power(R.rel, op.k); break;
        case K::SumWithConverse: out = rel_sum(R.rel, converse(R.rel)); break;
        case K::Composite: {
            AdmissibleRelation cur = R;
            for (auto it = op.parts.rbegin(); it != op.parts.rend(); ++it)
                cur = apply_operator(*it, alg, cur);
            out = cur.rel;
            break;
        }
        case K::PointwiseCompose: {
            bool first = true;
            for (const RelationOperator& p : op.parts) {
                BinaryRelation r = apply_operator(p, alg, R).rel;
                out = first ? r : compose(out, r);
                first = false;
            }
            break;
        }
        case K::SquareOf:
            out = apply_operator(op.parts.at(0), alg,
                                 apply_operator(op.parts.at(0), alg, R)).rel;
            break;
        case K::NonMonotoneDemo:
            out = (R.rel == BinaryRelation::full(alg.size))
                      ? BinaryRelation::identity(alg.size)
                      : BinaryRelation::full(alg.size);
            break;
        case K::Expr: {
            EvalContext ctx;
            ctx.alg = &alg;
            ctx.env["R"] = R.rel;
            ctx.apply_op = [](const std::string& name, const AdmissibleRelation&)
                -> AdmissibleRelation {
                throw Error("nested operator '" + name + "' in expr template");
            };
            out = eval_rel_expr(*op.expr, ctx);
            break;
        }
    }
    if (!out.reflexive() || !is_compatible(alg, out))
        throw Error("operator '" + op.name +
                    "' produced a non-admissible relation on '" + alg.name + "'");
    return AdmissibleRelation{std::move(out), &alg};
}

RelationOperator square_operator(const RelationOperator& op) {
    RelationOperator sq;
    sq.kind = RelationOperator::Kind::SquareOf;
    sq.name = "sq(" + op.name + ")";
    sq.parts = {op};
    return sq;
}

RelationOperator triple_pointwise(const RelationOperator& op) {
    RelationOperator sq = square_operator(op);
    RelationOperator tp;
    tp.kind = RelationOperator::Kind::PointwiseCompose;
    tp.name = sq.name + "*" + sq.name + "*" + sq.name;
    tp.parts = {sq, sq, sq};
    return tp;
}

namespace {

RelationOperator atom_operator(const std::string& text) {
    using K = RelationOperator::Kind;
    RelationOperator op;
    op.name = text;
    if (text == "diag") op.kind = K::ConstDiag;
    else if (text == "id") op.kind = K::Identity;
    else if (text == "full") op.kind = K::ConstFull;
    else if (text == "tc") op.kind = K::TransitiveClosure;
    else if (text == "tol") op.kind = K::ToleranceClosure;
    else if (text == "cg") op.kind = K::CongruenceClosure;
    else if (text == "conv") op.kind = K::Converse;
    else if (text == "sumconv") op.kind = K::SumWithConverse;
    else if (text.starts_with("pow:")) {
        op.kind = K::PowerK;
        try {
            op.k = std::stoi(text.substr(4));
        } catch (...) {
            throw ParseError("operator spec: bad power '" + text + "'");
        }
        if (op.k < 0) throw ParseError("operator spec: negative power");
    } else if (text == "expr:full-if-nontrivial") {
        // Demo operator that jumps down at the top of the lattice; kept as a
        // stock counterexample for the monotonicity checker.
        op.kind = K::NonMonotoneDemo;
    } else if (text.starts_with("expr:")) {
        op.kind = K::Expr;
        op.expr = parse_rel_expr(text.substr(5));
    } else if (text.starts_with("sq(") && text.ends_with(")")) {
        return square_operator(parse_operator(text.substr(3, text.size() - 4)));
    } else {
        throw ParseError("operator spec: unknown operator '" + text + "'");
    }
    return op;
}

// Splits at top level (outside parentheses) on the given separator.
std::vector<std::string> split_top(const std::string& text, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

RelationOperator parse_operator(const std::string& text) {
    auto pointwise = split_top(text, '*');
    if (pointwise.size() > 1) {
        RelationOperator op;
        op.kind = RelationOperator::Kind::PointwiseCompose;
        op.name = text;
        for (const std::string& p : pointwise) op.parts.push_back(parse_operator(p));
        return op;
    }
    auto composed = split_top(text, '.');
    if (composed.size() > 1) {
        RelationOperator op;
        op.kind = RelationOperator::Kind::Composite;
        op.name = text;
        for (const std::string& p : composed) op.parts.push_back(parse_operator(p));
        return op;
    }
    return atom_operator(text);
}

MonotoneReport check_monotone(
    const RelationOperator& op, const FiniteAlgebra& alg,
    const std::vector<std::pair<AdmissibleRelation, AdmissibleRelation>>& pairs) {
    MonotoneReport rep;
    for (const auto& [r, s] : pairs) {
        ++rep.pairs_checked;
        BinaryRelation fr = apply_operator(op, alg, r).rel;
        BinaryRelation fs = apply_operator(op, alg, s).rel;
        if (!fr.subset_of(fs)) {
            rep.pass = false;
            std::ostringstream ss;
            ss << "on " << alg.name << ": R=" << r.rel.str() << " S=" << s.rel.str()
               << " but " << op.name << "(R)=" << fr.str() << " not within "
               << op.name << "(S)=" << fs.str();
            rep.counterexample = ss.str();
            return rep;
        }
    }
    return rep;
}

std::vector<std::pair<AdmissibleRelation, AdmissibleRelation>>
nested_admissible_pairs(const FiniteAlgebra& alg,
                        const std::vector<AdmissibleRelation>& all) {
    std::vector<std::pair<AdmissibleRelation, AdmissibleRelation>> out;
    for (const AdmissibleRelation& r : all)
        for (const AdmissibleRelation& s : all)
            if (r.rel.subset_of(s.rel)) out.emplace_back(r, s);
    return out;
}

HomPropertyReport check_hom_property(
    const RelationOperator& op, const std::vector<Homomorphism>& homs,
    const std::vector<std::vector<AdmissibleRelation>>& sample_rels) {
    HomPropertyReport rep;
    for (std::size_t i = 0; i < homs.size(); ++i) {
        const Homomorphism& phi = homs[i];
        for (const AdmissibleRelation& r : sample_rels[i]) {
            ++rep.instances;
            BinaryRelation lhs =
                map_relation(phi, apply_operator(op, *phi.source, r).rel).rel;
            BinaryRelation rhs =
                apply_operator(op, *phi.target, map_relation(phi, r.rel)).rel;
            if (!lhs.subset_of(rhs)) {
                rep.pass = false;
                std::ostringstream ss;
                ss << op.name << " hom-property violation: phi " << phi.source->name
                   << "->" << phi.target->name << ", R=" << r.rel.str()
                   << ", phi(F(R))=" << lhs.str() << ", F(phi(R))=" << rhs.str();
                rep.counterexamples.push_back(ss.str());
            }
        }
    }
    return rep;
}

} // namespace malrel
