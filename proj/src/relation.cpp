#include "malrel/relation.hpp"

#include <bit>

namespace malrel {

BinaryRelation BinaryRelation::identity(int n) {
    BinaryRelation r(n);
    for (int i = 0; i < n; ++i) r.set(i, i);
    return r;
}

BinaryRelation BinaryRelation::full(int n) {
    BinaryRelation r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.set(i, j);
    return r;
}

BinaryRelation BinaryRelation::from_pairs(int n,
                                          const std::vector<std::pair<int, int>>& ps) {
    BinaryRelation r(n);
    for (auto [a, b] : ps) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw Error("relation pair (" + std::to_string(a) + "," +
                        std::to_string(b) + ") out of range for carrier " +
                        std::to_string(n));
        r.set(a, b);
    }
    return r;
}

std::size_t BinaryRelation::count() const {
    std::size_t c = 0;
    for (std::uint64_t w : bits_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::vector<std::pair<int, int>> BinaryRelation::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (at(i, j)) out.emplace_back(i, j);
    return out;
}

bool BinaryRelation::subset_of(const BinaryRelation& other) const {
    require_same_carrier(*this, other);
    for (std::size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w] & ~other.bits_[w]) return false;
    return true;
}

bool BinaryRelation::reflexive() const {
    for (int i = 0; i < n_; ++i)
        if (!at(i, i)) return false;
    return true;
}

bool BinaryRelation::symmetric() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool BinaryRelation::transitive() const {
    return compose(*this, *this).subset_of(*this);
}

BinaryRelation BinaryRelation::operator|(const BinaryRelation& o) const {
    require_same_carrier(*this, o);
    BinaryRelation r = *this;
    for (std::size_t w = 0; w < bits_.size(); ++w) r.bits_[w] |= o.bits_[w];
    return r;
}

BinaryRelation BinaryRelation::operator&(const BinaryRelation& o) const {
    require_same_carrier(*this, o);
    BinaryRelation r = *this;
    for (std::size_t w = 0; w < bits_.size(); ++w) r.bits_[w] &= o.bits_[w];
    return r;
}

std::strong_ordering BinaryRelation::operator<=>(const BinaryRelation& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    for (std::size_t w = 0; w < bits_.size(); ++w)
        if (auto c = bits_[w] <=> o.bits_[w]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::string BinaryRelation::str() const {
    std::string s = "{";
    bool first = true;
    for (auto [a, b] : pairs()) {
        if (!first) s += ",";
        first = false;
        s += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
    return s + "}";
}

void require_same_carrier(const BinaryRelation& R, const BinaryRelation& S) {
    if (R.size() != S.size())
        throw Error("carrier mismatch: " + std::to_string(R.size()) + " vs " +
                    std::to_string(S.size()));
}

BinaryRelation compose(const BinaryRelation& R, const BinaryRelation& S) {
    require_same_carrier(R, S);
    const int n = R.size();
    const int words = R.words();
    BinaryRelation out(n);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t* ri = R.row(i);
        std::uint64_t* oi = out.row(i);
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = ri[w];
            while (bits) {
                int j = (w << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                const std::uint64_t* sj = S.row(j);
                for (int v = 0; v < words; ++v) oi[v] |= sj[v];
            }
        }
    }
    return out;
}

BinaryRelation compose_n(const BinaryRelation& R, const BinaryRelation& S, int n) {
    require_same_carrier(R, S);
    if (n < 1) throw Error("compose_n: n must be >= 1");
    BinaryRelation out = R;
    for (int i = 1; i < n; ++i) out = compose(out, (i % 2 == 1) ? S : R);
    return out;
}

BinaryRelation power(const BinaryRelation& R, int n) {
    if (n < 0) throw Error("power: n must be >= 0");
    if (n == 0) return BinaryRelation::identity(R.size());
    return compose_n(R, R, n);
}

BinaryRelation converse(const BinaryRelation& R) {
    BinaryRelation out(R.size());
    for (int i = 0; i < R.size(); ++i)
        for (int j = 0; j < R.size(); ++j)
            if (R.at(i, j)) out.set(j, i);
    return out;
}

BinaryRelation transitive_closure(const BinaryRelation& R) {
    // Warshall on bit-rows.
    BinaryRelation out = R;
    const int n = R.size();
    const int words = R.words();
    for (int k = 0; k < n; ++k) {
        const std::uint64_t* rk = out.row(k);
        std::vector<std::uint64_t> krow(rk, rk + words);
        for (int i = 0; i < n; ++i)
            if (out.at(i, k)) {
                std::uint64_t* ri = out.row(i);
                for (int w = 0; w < words; ++w) ri[w] |= krow[w];
            }
    }
    return out;
}

BinaryRelation rel_sum(const BinaryRelation& R, const BinaryRelation& S) {
    require_same_carrier(R, S);
    const int n = R.size();
    BinaryRelation acc = R;
    BinaryRelation term = R;
    // Chain height on an n-element carrier is at most n^2.
    for (int i = 1; i <= n * n; ++i) {
        term = compose(term, (i % 2 == 1) ? S : R);
        acc = acc | term;
    }
    return acc;
}

} // namespace malrel
