#include "malrel/rel_expr.hpp"

#include <cctype>

#include <json.hpp>

namespace malrel {

namespace {

ExprPtr node(RelExpr e) { return std::make_shared<const RelExpr>(std::move(e)); }

} // namespace

ExprPtr ex_var(std::string name) {
    return node({RelExpr::Kind::Var, std::move(name), 0, {}});
}
ExprPtr ex_diag() { return node({RelExpr::Kind::Diag, {}, 0, {}}); }
ExprPtr ex_full() { return node({RelExpr::Kind::Full, {}, 0, {}}); }
ExprPtr ex_compose(ExprPtr a, ExprPtr b) {
    return node({RelExpr::Kind::Compose, {}, 0, {std::move(a), std::move(b)}});
}
ExprPtr ex_compose(std::vector<ExprPtr> chain) {
    ExprPtr acc = chain.at(0);
    for (std::size_t i = 1; i < chain.size(); ++i)
        acc = ex_compose(acc, chain[i]);
    return acc;
}
ExprPtr ex_compose_n(ExprPtr a, ExprPtr b, int n) {
    return node({RelExpr::Kind::ComposeN, {}, n, {std::move(a), std::move(b)}});
}
ExprPtr ex_power(ExprPtr a, int n) {
    return node({RelExpr::Kind::Power, {}, n, {std::move(a)}});
}
ExprPtr ex_converse(ExprPtr a) {
    return node({RelExpr::Kind::Converse, {}, 0, {std::move(a)}});
}
ExprPtr ex_union(ExprPtr a, ExprPtr b) {
    return node({RelExpr::Kind::Union, {}, 0, {std::move(a), std::move(b)}});
}
ExprPtr ex_union(std::vector<ExprPtr> parts) {
    ExprPtr acc = parts.at(0);
    for (std::size_t i = 1; i < parts.size(); ++i) acc = ex_union(acc, parts[i]);
    return acc;
}
ExprPtr ex_intersect(ExprPtr a, ExprPtr b) {
    return node({RelExpr::Kind::Intersect, {}, 0, {std::move(a), std::move(b)}});
}
ExprPtr ex_bar(ExprPtr a) {
    return node({RelExpr::Kind::CompatibleClosure, {}, 0, {std::move(a)}});
}
ExprPtr ex_tol(ExprPtr a) {
    return node({RelExpr::Kind::ToleranceClosure, {}, 0, {std::move(a)}});
}
ExprPtr ex_tc(ExprPtr a) {
    return node({RelExpr::Kind::TransitiveClosure, {}, 0, {std::move(a)}});
}
ExprPtr ex_cg(ExprPtr a) {
    return node({RelExpr::Kind::CongruenceClosure, {}, 0, {std::move(a)}});
}
ExprPtr ex_adm(ExprPtr a) {
    return node({RelExpr::Kind::AdmissibleClosure, {}, 0, {std::move(a)}});
}
ExprPtr ex_sum(ExprPtr a, ExprPtr b) {
    return node({RelExpr::Kind::Sum, {}, 0, {std::move(a), std::move(b)}});
}
ExprPtr ex_sum(std::vector<ExprPtr> parts) {
    ExprPtr acc = parts.at(0);
    for (std::size_t i = 1; i < parts.size(); ++i) acc = ex_sum(acc, parts[i]);
    return acc;
}
ExprPtr ex_op(std::string opname, ExprPtr a) {
    return node({RelExpr::Kind::OperatorApp, std::move(opname), 0, {std::move(a)}});
}

std::string RelExpr::str() const {
    using K = Kind;
    auto arg = [&](std::size_t i) { return args[i]->str(); };
    switch (kind) {
        case K::Var: return name;
        case K::Diag: return "delta";
        case K::Full: return "fullrel";
        case K::Compose: return "(" + arg(0) + " o " + arg(1) + ")";
        case K::ComposeN:
            return "comp_n(" + arg(0) + "," + arg(1) + "," + std::to_string(n) + ")";
        case K::Power: return arg(0) + "^" + std::to_string(n);
        case K::Converse: return "conv(" + arg(0) + ")";
        case K::Union: return "(" + arg(0) + " u " + arg(1) + ")";
        case K::Intersect: return "(" + arg(0) + " & " + arg(1) + ")";
        case K::CompatibleClosure: return "bar(" + arg(0) + ")";
        case K::ToleranceClosure: return "tol(" + arg(0) + ")";
        case K::TransitiveClosure: return "tc(" + arg(0) + ")";
        case K::CongruenceClosure: return "cg(" + arg(0) + ")";
        case K::AdmissibleClosure: return "adm(" + arg(0) + ")";
        case K::Sum: return "(" + arg(0) + " + " + arg(1) + ")";
        case K::OperatorApp: return name + "(" + arg(0) + ")";
    }
    return "?";
}

BinaryRelation eval_rel_expr(const RelExpr& expr, const EvalContext& ctx) {
    using K = RelExpr::Kind;
    ++ctx.evals;
    auto sub = [&](std::size_t i) { return eval_rel_expr(*expr.args[i], ctx); };
    switch (expr.kind) {
        case K::Var: {
            auto it = ctx.env.find(expr.name);
            if (it == ctx.env.end()) throw Error("unbound relation name '" + expr.name + "'");
            return it->second;
        }
        case K::Diag: return BinaryRelation::identity(ctx.alg->size);
        case K::Full: return BinaryRelation::full(ctx.alg->size);
        case K::Compose: return compose(sub(0), sub(1));
        case K::ComposeN: return compose_n(sub(0), sub(1), expr.n);
        case K::Power: return power(sub(0), expr.n);
        case K::Converse: return converse(sub(0));
        case K::Union: return sub(0) | sub(1);
        case K::Intersect: return sub(0) & sub(1);
        case K::CompatibleClosure: return compatible_closure(*ctx.alg, sub(0));
        case K::ToleranceClosure: return tolerance_closure(*ctx.alg, sub(0)).rel;
        case K::TransitiveClosure: return transitive_closure(sub(0));
        case K::CongruenceClosure: return congruence_closure(*ctx.alg, sub(0)).rel;
        case K::AdmissibleClosure: return generated_admissible(*ctx.alg, sub(0)).rel;
        case K::Sum: return rel_sum(sub(0), sub(1));
        case K::OperatorApp: {
            if (!ctx.apply_op) throw Error("no operator environment installed");
            BinaryRelation r = sub(0);
            AdmissibleRelation arg{BinaryRelation(), ctx.alg};
            if (r.reflexive() && is_compatible(*ctx.alg, r)) {
                arg.rel = std::move(r);
            } else if (ctx.strict) {
                throw Error("operator '" + expr.name +
                            "' applied to a non-admissible relation (strict mode)");
            } else {
                arg = generated_admissible(*ctx.alg, r);
                ctx.coercions.push_back("coerced argument of " + expr.name +
                                        " to its admissible closure");
            }
            return ctx.apply_op(expr.name, arg).rel;
        }
    }
    throw Error("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Surface-syntax parser. Grammar (loosest binding first):
//   sum    := union ('+' union)*
//   union  := comp (('u' | '&') comp)*
//   comp   := postfix ('o' postfix)*
//   postfix:= primary ('^' integer)*
//   primary:= name | 'delta' | 'fullrel' | func '(' sum ')' | '(' sum ')'
// where func is conv/tc/cc/bar/tol/cg/adm or an operator name.

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool peek_word(std::string_view w) {
        skip();
        if (text.substr(pos, w.size()) != w) return false;
        std::size_t after = pos + w.size();
        if (after < text.size() &&
            (std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '_'))
            return false;
        return true;
    }
    bool eat_word(std::string_view w) {
        if (!peek_word(w)) return false;
        pos += w.size();
        return true;
    }
    std::string ident() {
        skip();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (start == pos)
            throw ParseError("expression: expected a name at position " +
                             std::to_string(start));
        return std::string(text.substr(start, pos - start));
    }
    int integer() {
        skip();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos)
            throw ParseError("expression: expected an integer at position " +
                             std::to_string(start));
        return std::stoi(std::string(text.substr(start, pos - start)));
    }

    ExprPtr sum() {
        ExprPtr e = union_();
        while (eat('+')) e = ex_sum(e, union_());
        return e;
    }
    ExprPtr union_() {
        ExprPtr e = comp();
        for (;;) {
            if (eat_word("u")) e = ex_union(e, comp());
            else if (eat('&')) e = ex_intersect(e, comp());
            else return e;
        }
    }
    ExprPtr comp() {
        ExprPtr e = postfix();
        while (eat_word("o")) e = ex_compose(e, postfix());
        return e;
    }
    ExprPtr postfix() {
        ExprPtr e = primary();
        while (eat('^')) e = ex_power(e, integer());
        return e;
    }
    ExprPtr primary() {
        skip();
        if (eat('(')) {
            ExprPtr e = sum();
            if (!eat(')')) throw ParseError("expression: missing ')'");
            return e;
        }
        if (eat_word("delta") || eat_word("0")) return ex_diag();
        if (eat_word("fullrel")) return ex_full();
        std::string name = ident();
        if (eat('(')) {
            ExprPtr a = sum();
            if (!eat(')')) throw ParseError("expression: missing ')'");
            if (name == "conv") return ex_converse(a);
            if (name == "tc") return ex_tc(a);
            if (name == "cc" || name == "bar") return ex_bar(a);
            if (name == "tol") return ex_tol(a);
            if (name == "cg") return ex_cg(a);
            if (name == "adm") return ex_adm(a);
            return ex_op(name, a);
        }
        return ex_var(name);
    }
};

} // namespace

ExprPtr parse_rel_expr(const std::string& text) {
    Parser p{text};
    ExprPtr e = p.sum();
    p.skip();
    if (p.pos != text.size())
        throw ParseError("expression: trailing input at position " +
                         std::to_string(p.pos));
    return e;
}

RelationLiteral parse_relation_literal(const std::string& text) {
    RelationLiteral lit;
    std::size_t end = text.find_last_of(']');
    if (end == std::string::npos)
        throw ParseError("relation literal: expected a JSON pair list");
    std::string body = text.substr(0, end + 1);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("relation literal: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("relation literal: expected a list of pairs");
    for (const auto& p : doc) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
            !p[1].is_number_integer())
            throw ParseError("relation literal: each pair must be [a,b]");
        lit.pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    Parser flags{std::string_view(text).substr(end + 1)};
    for (;;) {
        flags.skip();
        if (flags.pos == flags.text.size()) break;
        if (flags.eat_word("refl")) lit.reflexive_close = true;
        else if (flags.eat_word("adm")) lit.admissible_close = true;
        else throw ParseError("relation literal: unknown flag near '" +
                              std::string(flags.text.substr(flags.pos)) + "'");
    }
    return lit;
}

BinaryRelation realize_literal(const RelationLiteral& lit, const FiniteAlgebra& alg) {
    BinaryRelation r = BinaryRelation::from_pairs(alg.size, lit.pairs);
    if (lit.reflexive_close) r = r | BinaryRelation::identity(alg.size);
    if (lit.admissible_close) r = generated_admissible(alg, r).rel;
    return r;
}

} // namespace malrel
