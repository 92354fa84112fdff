#pragma once

#include "clv/cusp.hpp"

#include <optional>
#include <vector>

namespace clv::bl {

struct LevelRow {
    int j = 0;
    std::int64_t target = 0;    // j d + 1
    std::int64_t minimum = 0;   // min of sum R_i(k_i) over k_1 + ... + k_n = target
    std::int64_t required = 0;  // (j+1)(j+2)/2
    std::vector<std::int64_t> argmin;
};

struct Verdict {
    int degree = 0;
    std::vector<cusp::CuspType> cusps;
    bool pass = true;
    // set on failure: smallest violating j
    int fail_j = 0;
    std::int64_t achieved_min = 0;
    std::int64_t required = 0;
    std::vector<LevelRow> table;
};

Verdict bl_check(int d, const std::vector<cusp::CuspType>& cusps);

// Minimum of sum R_i(k_i) over k_1 + ... + k_n = target, k_i in [lo, hi] (no clamping assumption).
std::int64_t brute_min(const std::vector<cusp::CuspType>& cusps, std::int64_t target, std::int64_t lo,
                       std::int64_t hi);

enum class Reason { NotCoprime, BLFail, NewtonBoundFail };
const char* reason_name(Reason r);

struct Eliminated {
    std::vector<cusp::NewtonPair> pairs;  // empty when a whole layer is pruned
    int layer = 0;                        // number of Newton pairs
    Reason reason = Reason::NotCoprime;
    int j = 0;  // BLFail only
    std::int64_t achieved = 0, required = 0;
};

struct Survivor {
    cusp::CuspType cusp;
    Rational lct;
};

struct CandidateReport {
    int degree = 0;
    std::int64_t target_delta = 0;
    int max_pairs = 0;
    std::vector<Survivor> survivors;
    std::vector<Eliminated> eliminated;
};

// Smallest delta allowed with k Newton pairs (7 for k = 2, 29 for k = 3, 0 for k = 1).
std::int64_t remark_delta_floor(int k);

// Raw Newton pair lists (coprimality not imposed) with the given delta and k pairs.
std::vector<std::vector<cusp::NewtonPair>> pairs_with_delta(std::int64_t delta, int k);

CandidateReport unicuspidal_candidates(int d, int max_pairs);

struct DiophantinePair {
    std::int64_t a, b, gcd;
    bool coprime() const { return gcd == 1; }
};

std::vector<DiophantinePair> diophantine_pairs(std::int64_t product);

}  // namespace clv::bl
