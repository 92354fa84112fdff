#pragma once

#include "clv/arith.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace clv::cusp {

struct NewtonPair {
    std::int64_t m, n;
    friend bool operator==(const NewtonPair&, const NewtonPair&) = default;
};

using MultiplicitySequence = std::vector<std::int64_t>;

// Unibranch plane curve singularity given by its Newton pairs.
class CuspType {
public:
    CuspType() = default;
    explicit CuspType(std::vector<NewtonPair> pairs);
    static CuspType single(std::int64_t a, std::int64_t b) { return CuspType({{a, b}}); }

    const std::vector<NewtonPair>& pairs() const { return pairs_; }
    int k() const { return static_cast<int>(pairs_.size()); }
    // 1-based, as in M_1 ... M_k; M(k+1) = 1.
    std::int64_t M(int j) const { return M_[j - 1]; }
    std::int64_t N(int j) const { return N_[j - 1]; }
    std::int64_t a() const { return M_[0]; }
    std::int64_t b1() const { return N_[0]; }
    // b_1 < b_2 < ... with b_j = b_{j-1} + N_j.
    const std::vector<std::int64_t>& char_exponents() const { return exps_; }
    // {w_1, ..., w_{k+1}}
    const std::vector<std::int64_t>& generators() const { return gens_; }

    std::string str() const;
    friend bool operator==(const CuspType& x, const CuspType& y) { return x.pairs_ == y.pairs_; }
    friend bool operator<(const CuspType& x, const CuspType& y);

private:
    std::vector<NewtonPair> pairs_;
    std::vector<std::int64_t> M_, N_, exps_, gens_;
};

std::int64_t delta_from_pairs(const CuspType& c);
MultiplicitySequence multiplicity_sequence(const CuspType& c);
std::int64_t delta_from_multiplicities(const MultiplicitySequence& m);
Rational lct(const CuspType& c);

struct Semigroup {
    std::vector<std::int64_t> generators;  // leading 0 included
    std::int64_t bound = 0;
    std::vector<bool> members;  // membership on [0, bound)
    std::int64_t conductor = 0;

    bool contains(std::int64_t t) const;
};

// Generators plus a DP membership bitmap on [0, bound). bound >= 2 delta.
Semigroup semigroup(const CuspType& c, std::int64_t bound);

// Smallest element of W in each residue class mod w_1.
std::vector<std::int64_t> apery_set(const CuspType& c);

// #(W cap [0, t)); 0 for t <= 0.
std::int64_t counting_R(const CuspType& c, std::int64_t t);

std::string to_string(const MultiplicitySequence& m);

}  // namespace clv::cusp
