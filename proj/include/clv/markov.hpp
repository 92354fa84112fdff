#pragma once

#include "clv/arith.hpp"

#include <vector>

namespace clv::markov {

// Sorted solution of a^2 + b^2 + c^2 = 3abc.
struct Triple {
    BigInt a, b, c;

    const BigInt& operator[](int i) const { return i == 0 ? a : (i == 1 ? b : c); }
    friend bool operator==(const Triple& x, const Triple& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
    friend bool operator<(const Triple& x, const Triple& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    }
    std::string str() const { return "(" + a.str() + "," + b.str() + "," + c.str() + ")"; }
};

bool is_markov_triple(const BigInt& a, const BigInt& b, const BigInt& c);

// Sorts and validates; throws InputError unless (a,b,c) solves the equation.
Triple make_triple(BigInt a, BigInt b, BigInt c);

// Replaces slot `index` by 3 * (other two) - entry and re-sorts.
Triple mutate(const Triple& t, int index);

// Number of descent steps down to (1,1,1).
int descent_steps(const Triple& t);

std::vector<Triple> markov_tree(const BigInt& max_entry);
bool is_markov_number(const BigInt& n);
bool verify_gonality_gap(const BigInt& max_entry);
std::size_t markov_count(const BigInt& n);
std::vector<BigInt> markov_numbers(const BigInt& n);

}  // namespace clv::markov
