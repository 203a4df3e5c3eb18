#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "malrel/errors.hpp"

namespace malrel {

// A binary relation on {0,...,n-1}, stored as one bit-row per element.
class BinaryRelation {
  public:
    BinaryRelation() = default;
    explicit BinaryRelation(int n)
        : n_(n), words_((n + 63) / 64),
          bits_(static_cast<std::size_t>(n) * static_cast<std::size_t>(words_), 0) {}

    static BinaryRelation identity(int n);
    static BinaryRelation full(int n);
    static BinaryRelation from_pairs(int n,
                                     const std::vector<std::pair<int, int>>& ps);

    int size() const { return n_; }

    bool at(int i, int j) const {
        return (row(i)[static_cast<std::size_t>(j >> 6)] >> (j & 63)) & 1u;
    }
    void set(int i, int j) {
        row(i)[static_cast<std::size_t>(j >> 6)] |= std::uint64_t(1) << (j & 63);
    }

    std::size_t count() const;
    std::vector<std::pair<int, int>> pairs() const;

    bool subset_of(const BinaryRelation& other) const;
    bool reflexive() const;
    bool symmetric() const;
    bool transitive() const;

    BinaryRelation operator|(const BinaryRelation& o) const;
    BinaryRelation operator&(const BinaryRelation& o) const;
    bool operator==(const BinaryRelation& o) const = default;
    // Lexicographic on the bit matrix; used for deterministic report orders.
    std::strong_ordering operator<=>(const BinaryRelation& o) const;

    std::string str() const; // e.g. "{(0,1),(1,2)}"

    const std::uint64_t* row(int i) const {
        return bits_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(words_);
    }
    std::uint64_t* row(int i) {
        return bits_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(words_);
    }
    int words() const { return words_; }

  private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

// (a,c) in result iff a R b and b S c for some b.
BinaryRelation compose(const BinaryRelation& R, const BinaryRelation& S);

// Alternating product with n factors starting at R: n=1 -> R, n=2 -> R o S,
// n=3 -> R o S o R, ...
BinaryRelation compose_n(const BinaryRelation& R, const BinaryRelation& S, int n);

// R^0 is the identity relation.
BinaryRelation power(const BinaryRelation& R, int n);

BinaryRelation converse(const BinaryRelation& R);

BinaryRelation transitive_closure(const BinaryRelation& R);

// R + S: union of the alternating compositions R, RoS, RoSoR, ... up to
// the n^2 alternation bound.
BinaryRelation rel_sum(const BinaryRelation& R, const BinaryRelation& S);

void require_same_carrier(const BinaryRelation& R, const BinaryRelation& S);

} // namespace malrel
