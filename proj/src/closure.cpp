#include "malrel/closure.hpp"

#include <algorithm>

namespace malrel {

Subalgebra generate_subalgebra(const FiniteAlgebra& alg,
                               const std::vector<int>& generators,
                               bool want_witnesses) {
    bool has_constant = false;
    for (const Operation& op : alg.ops) has_constant |= (op.arity == 0);
    if (generators.empty() && !has_constant)
        throw Error("generate_subalgebra: no generators and no constants");
    for (int g : generators)
        if (g < 0 || g >= alg.size)
            throw Error("generate_subalgebra: generator out of range");
    auto apply = [&](int op, std::span<const int> args, const std::vector<int>& elems) {
        std::vector<int> vals(args.size());
        for (std::size_t i = 0; i < args.size(); ++i)
            vals[i] = elems[static_cast<std::size_t>(args[i])];
        return alg.apply(op, vals);
    };
    auto c = close_under<int>(generators, alg.ops, apply,
                              static_cast<std::size_t>(alg.size) + 1);
    Subalgebra out;
    out.elements = c.elements;
    if (want_witnesses)
        for (std::size_t i = 0; i < c.elements.size(); ++i)
            out.witnesses.push_back(c.witness(static_cast<int>(i), alg.ops));
    return out;
}

Term FreeAlgebraRepr::witness(int i) const {
    const Derivation& d = deriv_[static_cast<std::size_t>(i)];
    if (d.op < 0) return Term::variable(d.gen);
    std::vector<Term> args;
    args.reserve(d.args.size());
    for (int a : d.args) args.push_back(witness(a));
    return Term::apply(base->ops[static_cast<std::size_t>(d.op)].name, std::move(args));
}

int FreeAlgebraRepr::find(const std::string& tuple) const {
    auto it = index_.find(tuple);
    return it == index_.end() ? -1 : it->second;
}

FreeAlgebraRepr free_algebra(const FiniteAlgebra& alg, int k, std::size_t element_cap) {
    if (k <= 0) throw Error("free_algebra: k must be positive");
    std::size_t coords = 1;
    for (int i = 0; i < k; ++i) {
        coords *= static_cast<std::size_t>(alg.size);
        if (coords > 1000000) throw CapError("free_algebra: n^k coordinate count too large");
    }
    // Generator j is the j-th projection: its value at assignment a is a_j.
    std::vector<std::string> gens(static_cast<std::size_t>(k),
                                  std::string(coords, '\0'));
    for (std::size_t idx = 0; idx < coords; ++idx) {
        std::vector<int> a = power_tuple(idx, alg.size, k);
        for (int j = 0; j < k; ++j)
            gens[static_cast<std::size_t>(j)][idx] =
                static_cast<char>(a[static_cast<std::size_t>(j)]);
    }
    auto apply = [&](int op, std::span<const int> args,
                     const std::vector<std::string>& elems) {
        std::string out(coords, '\0');
        std::vector<int> vals(args.size());
        for (std::size_t c = 0; c < coords; ++c) {
            for (std::size_t i = 0; i < args.size(); ++i)
                vals[i] = static_cast<int>(elems[static_cast<std::size_t>(args[i])][c]);
            out[c] = static_cast<char>(alg.apply(op, vals));
        }
        return out;
    };
    Closure<std::string> c;
    try {
        c = close_under<std::string>(gens, alg.ops, apply, element_cap);
    } catch (const CapError&) {
        throw CapError("free_algebra: element cap " + std::to_string(element_cap) +
                       " exceeded");
    }

    FreeAlgebraRepr X;
    X.base = &alg;
    X.generator_count = k;
    X.coord_count = static_cast<int>(coords);
    X.elements = c.elements;
    X.deriv_ = std::move(c.deriv);
    X.index_ = std::move(c.index);
    for (int j = 0; j < k; ++j)
        X.generator_indices.push_back(X.find(gens[static_cast<std::size_t>(j)]));

    // Materialize the free algebra over element indices.
    X.algebra.name = "F(" + alg.name + "," + std::to_string(k) + ")";
    X.algebra.size = static_cast<int>(X.elements.size());
    const std::size_t nx = X.elements.size();
    for (std::size_t op = 0; op < alg.ops.size(); ++op) {
        const Operation& bo = alg.ops[op];
        Operation fo;
        fo.name = bo.name;
        fo.arity = bo.arity;
        std::size_t rows = 1;
        for (int i = 0; i < bo.arity; ++i) {
            if (nx != 0 && rows > 50000000 / nx)
                throw CapError("free_algebra: operation table for '" + bo.name +
                               "' too large to materialize");
            rows *= nx;
        }
        fo.table.resize(rows);
        std::vector<int> args(static_cast<std::size_t>(bo.arity), 0);
        for (std::size_t idx = 0; idx < rows; ++idx) {
            std::size_t rest = idx;
            for (int i = bo.arity - 1; i >= 0; --i) {
                args[static_cast<std::size_t>(i)] = static_cast<int>(rest % nx);
                rest /= nx;
            }
            std::string val = apply(static_cast<int>(op), args, X.elements);
            fo.table[idx] = X.find(val);
        }
        X.algebra.ops.push_back(std::move(fo));
    }
    X.algebra.validate();
    return X;
}

} // namespace malrel
