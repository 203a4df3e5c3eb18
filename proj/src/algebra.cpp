#include "malrel/algebra.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace malrel {

namespace {

std::size_t checked_pow(std::size_t base, int exp, std::size_t limit,
                        const char* what) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base)
            throw CapError(std::string(what) + " exceeds cap " +
                           std::to_string(limit));
        r *= base;
    }
    return r;
}

} // namespace

void FiniteAlgebra::validate() const {
    if (size <= 0) throw Error("algebra '" + name + "': size must be positive");
    std::set<std::string> names;
    for (const Operation& op : ops) {
        if (!names.insert(op.name).second)
            throw Error("algebra '" + name + "': duplicate operation name '" +
                        op.name + "'");
        if (op.arity < 0)
            throw Error("operation '" + op.name + "': negative arity");
        std::size_t expect = 1;
        for (int i = 0; i < op.arity; ++i) expect *= static_cast<std::size_t>(size);
        if (op.table.size() != expect)
            throw Error("operation '" + op.name + "': table length " +
                        std::to_string(op.table.size()) + ", expected " +
                        std::to_string(expect));
        for (std::size_t i = 0; i < op.table.size(); ++i)
            if (op.table[i] < 0 || op.table[i] >= size)
                throw Error("operation '" + op.name + "': entry out of range at index " +
                            std::to_string(i) + " (value " +
                            std::to_string(op.table[i]) + ")");
    }
}

int FiniteAlgebra::op_index(const std::string& opname) const {
    for (std::size_t i = 0; i < ops.size(); ++i)
        if (ops[i].name == opname) return static_cast<int>(i);
    return -1;
}

int FiniteAlgebra::apply(int op, std::span<const int> args) const {
    const Operation& o = ops[static_cast<std::size_t>(op)];
    std::size_t idx = 0;
    for (int a : args) idx = idx * static_cast<std::size_t>(size) + static_cast<std::size_t>(a);
    return o.table[idx];
}

Term Term::apply(std::string opname, std::vector<Term> args) {
    Term t;
    t.opname = std::move(opname);
    t.args = std::move(args);
    return t;
}

int Term::max_var() const {
    if (is_variable()) return var;
    int m = -1;
    for (const Term& a : args) m = std::max(m, a.max_var());
    return m;
}

static std::string var_name(int i) {
    static const char* xyz[] = {"x", "y", "z"};
    if (i < 3) return xyz[i];
    return "v" + std::to_string(i + 1);
}

std::string Term::str() const {
    if (is_variable()) return var_name(var);
    std::string s = opname + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ",";
        s += args[i].str();
    }
    return s + ")";
}

Term rename_vars(const Term& t, std::span<const int> mapping) {
    if (t.is_variable()) return Term::variable(mapping[static_cast<std::size_t>(t.var)]);
    std::vector<Term> args;
    args.reserve(t.args.size());
    for (const Term& a : t.args) args.push_back(rename_vars(a, mapping));
    return Term::apply(t.opname, std::move(args));
}

int eval_term(const FiniteAlgebra& alg, const Term& t, const Assignment& asg) {
    if (t.is_variable()) {
        if (t.var >= static_cast<int>(asg.size()))
            throw Error("variable index " + std::to_string(t.var) +
                        " beyond assignment of length " + std::to_string(asg.size()));
        return asg[static_cast<std::size_t>(t.var)];
    }
    int op = alg.op_index(t.opname);
    if (op < 0) throw Error("unknown operation '" + t.opname + "'");
    if (static_cast<int>(t.args.size()) != alg.ops[static_cast<std::size_t>(op)].arity)
        throw Error("operation '" + t.opname + "' applied with wrong arity");
    std::vector<int> vals;
    vals.reserve(t.args.size());
    for (const Term& a : t.args) vals.push_back(eval_term(alg, a, asg));
    return alg.apply(op, vals);
}

std::size_t power_index(std::span<const int> tuple, int base) {
    std::size_t idx = 0;
    for (int v : tuple) idx = idx * static_cast<std::size_t>(base) + static_cast<std::size_t>(v);
    return idx;
}

std::vector<int> power_tuple(std::size_t index, int base, int k) {
    std::vector<int> t(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(base));
        index /= static_cast<std::size_t>(base);
    }
    return t;
}

FiniteAlgebra product_power(const FiniteAlgebra& alg, int k, std::size_t carrier_cap) {
    if (k <= 0) throw Error("product_power: k must be positive");
    std::size_t carrier =
        checked_pow(static_cast<std::size_t>(alg.size), k, carrier_cap,
                    "product power carrier");
    FiniteAlgebra p;
    p.name = alg.name + "^" + std::to_string(k);
    p.size = static_cast<int>(carrier);
    for (const Operation& op : alg.ops) {
        Operation po;
        po.name = op.name;
        po.arity = op.arity;
        std::size_t rows = 1;
        for (int i = 0; i < op.arity; ++i) {
            if (rows > 100000000 / std::max<std::size_t>(carrier, 1))
                throw CapError("product power table for '" + op.name + "' too large");
            rows *= carrier;
        }
        po.table.resize(rows);
        std::vector<std::size_t> args(static_cast<std::size_t>(op.arity), 0);
        std::vector<int> coord(static_cast<std::size_t>(op.arity));
        for (std::size_t idx = 0; idx < rows; ++idx) {
            std::size_t rest = idx;
            for (int i = op.arity - 1; i >= 0; --i) {
                args[static_cast<std::size_t>(i)] = rest % carrier;
                rest /= carrier;
            }
            std::size_t out = 0;
            for (int c = 0; c < k; ++c) {
                for (int i = 0; i < op.arity; ++i)
                    coord[static_cast<std::size_t>(i)] =
                        power_tuple(args[static_cast<std::size_t>(i)], alg.size, k)[static_cast<std::size_t>(c)];
                out = out * static_cast<std::size_t>(alg.size) +
                      static_cast<std::size_t>(alg.apply(static_cast<int>(&op - alg.ops.data()), coord));
            }
            po.table[idx] = static_cast<int>(out);
        }
        p.ops.push_back(std::move(po));
    }
    p.validate();
    return p;
}

Homomorphism Homomorphism::checked(const FiniteAlgebra& source,
                                   const FiniteAlgebra& target,
                                   std::vector<int> map) {
    if (static_cast<int>(map.size()) != source.size)
        throw Error("homomorphism map length mismatch");
    for (int v : map)
        if (v < 0 || v >= target.size) throw Error("homomorphism value out of range");
    if (!is_homomorphism(source, target, map))
        throw Error("map does not commute with the operations");
    return Homomorphism{&source, &target, std::move(map)};
}

bool is_homomorphism(const FiniteAlgebra& source, const FiniteAlgebra& target,
                     std::span<const int> map) {
    for (std::size_t op = 0; op < source.ops.size(); ++op) {
        const Operation& so = source.ops[op];
        int top = target.op_index(so.name);
        if (top < 0 || target.ops[static_cast<std::size_t>(top)].arity != so.arity)
            return false;
        std::vector<int> args(static_cast<std::size_t>(so.arity), 0);
        std::vector<int> mapped(static_cast<std::size_t>(so.arity));
        for (;;) {
            for (int i = 0; i < so.arity; ++i)
                mapped[static_cast<std::size_t>(i)] = map[static_cast<std::size_t>(args[static_cast<std::size_t>(i)])];
            if (map[static_cast<std::size_t>(source.apply(static_cast<int>(op), args))] !=
                target.apply(top, mapped))
                return false;
            int pos = so.arity - 1;
            while (pos >= 0 && args[static_cast<std::size_t>(pos)] == source.size - 1) {
                args[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++args[static_cast<std::size_t>(pos)];
        }
    }
    return true;
}

namespace {

// Partial-map consistency: every op application whose arguments are all
// assigned must agree with the assigned image of the result (when assigned).
bool partial_consistent(const FiniteAlgebra& src, const FiniteAlgebra& tgt,
                        const std::vector<int>& map, int just_set) {
    for (std::size_t op = 0; op < src.ops.size(); ++op) {
        const Operation& so = src.ops[op];
        int top = tgt.op_index(so.name);
        if (top < 0) return false;
        std::vector<int> args(static_cast<std::size_t>(so.arity), 0);
        std::vector<int> mapped(static_cast<std::size_t>(so.arity));
        for (;;) {
            bool uses = so.arity == 0 && just_set == -1;
            bool all_assigned = true;
            for (int i = 0; i < so.arity; ++i) {
                int a = args[static_cast<std::size_t>(i)];
                uses |= (a == just_set);
                all_assigned &= map[static_cast<std::size_t>(a)] >= 0;
            }
            if ((uses || just_set < 0) && all_assigned) {
                int res = src.apply(static_cast<int>(op), args);
                if (map[static_cast<std::size_t>(res)] >= 0) {
                    for (int i = 0; i < so.arity; ++i)
                        mapped[static_cast<std::size_t>(i)] =
                            map[static_cast<std::size_t>(args[static_cast<std::size_t>(i)])];
                    if (map[static_cast<std::size_t>(res)] != tgt.apply(top, mapped))
                        return false;
                }
            }
            int pos = so.arity - 1;
            while (pos >= 0 && args[static_cast<std::size_t>(pos)] == src.size - 1) {
                args[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++args[static_cast<std::size_t>(pos)];
        }
    }
    return true;
}

} // namespace

HomSearchResult enumerate_homomorphisms(const FiniteAlgebra& source,
                                        const FiniteAlgebra& target,
                                        std::size_t cap) {
    HomSearchResult out;
    std::vector<int> map(static_cast<std::size_t>(source.size), -1);
    std::size_t nodes = 0;
    bool capped = false;
    auto rec = [&](auto&& self, int pos) -> void {
        if (capped) return;
        if (pos == source.size) {
            if (is_homomorphism(source, target, map))
                out.homs.push_back(Homomorphism{&source, &target, map});
            return;
        }
        for (int v = 0; v < target.size && !capped; ++v) {
            if (++nodes > cap) {
                capped = true;
                return;
            }
            map[static_cast<std::size_t>(pos)] = v;
            if (partial_consistent(source, target, map, pos)) self(self, pos + 1);
            map[static_cast<std::size_t>(pos)] = -1;
        }
    };
    rec(rec, 0);
    out.complete = !capped;
    return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ParseError("algebra file, " + where + ": " + what);
}

} // namespace

FiniteAlgebra parse_algebra(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("algebra file: ") + e.what());
    }
    if (!doc.is_object()) bad("top level", "expected an object");
    for (auto& [key, _] : doc.items())
        if (key != "name" && key != "size" && key != "operations")
            bad("top level", "unknown field '" + key + "'");
    FiniteAlgebra alg;
    if (!doc.contains("size") || !doc["size"].is_number_integer())
        bad("top level", "missing integer field 'size'");
    alg.size = doc["size"].get<int>();
    alg.name = doc.value("name", std::string("unnamed"));
    if (doc.contains("operations")) {
        if (!doc["operations"].is_array()) bad("operations", "expected a list");
        for (std::size_t i = 0; i < doc["operations"].size(); ++i) {
            const json& jo = doc["operations"][i];
            std::string where = "operations[" + std::to_string(i) + "]";
            if (!jo.is_object()) bad(where, "expected an object");
            for (auto& [key, _] : jo.items())
                if (key != "name" && key != "arity" && key != "table")
                    bad(where, "unknown field '" + key + "'");
            Operation op;
            if (!jo.contains("name") || !jo["name"].is_string())
                bad(where, "missing text field 'name'");
            op.name = jo["name"].get<std::string>();
            if (!jo.contains("arity") || !jo["arity"].is_number_integer())
                bad(where, "missing integer field 'arity'");
            op.arity = jo["arity"].get<int>();
            if (!jo.contains("table") || !jo["table"].is_array())
                bad(where, "missing list field 'table'");
            for (const json& v : jo["table"]) {
                if (!v.is_number_integer()) bad(where, "non-integer table entry");
                op.table.push_back(v.get<int>());
            }
            alg.ops.push_back(std::move(op));
        }
    }
    try {
        alg.validate();
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    return alg;
}

FiniteAlgebra load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open algebra file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_algebra(ss.str());
}

std::string algebra_to_json(const FiniteAlgebra& alg) {
    json ops = json::array();
    for (const Operation& op : alg.ops)
        ops.push_back({{"name", op.name}, {"arity", op.arity}, {"table", op.table}});
    json doc = {{"name", alg.name}, {"size", alg.size}, {"operations", ops}};
    return doc.dump(2);
}

} // namespace malrel
