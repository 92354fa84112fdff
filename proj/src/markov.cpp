#include "clv/markov.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace clv::markov {

namespace {

void require_positive(const BigInt& a, const BigInt& b, const BigInt& c) {
    if (a < 1 || b < 1 || c < 1) throw InputError("Markov entries must be positive");
}

Triple sorted(BigInt a, BigInt b, BigInt c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return {a, b, c};
}

}  // namespace

bool is_markov_triple(const BigInt& a, const BigInt& b, const BigInt& c) {
    require_positive(a, b, c);
    return a * a + b * b + c * c == 3 * a * b * c;
}

Triple make_triple(BigInt a, BigInt b, BigInt c) {
    if (!is_markov_triple(a, b, c))
        throw InputError("(" + a.str() + "," + b.str() + "," + c.str() + ") is not a Markov triple");
    return sorted(std::move(a), std::move(b), std::move(c));
}

Triple mutate(const Triple& t, int index) {
    if (index < 0 || index > 2) throw InputError("mutation index must be 0, 1 or 2");
    if (!is_markov_triple(t.a, t.b, t.c)) throw InputError(t.str() + " is not a Markov triple");
    const BigInt& x = t[(index + 1) % 3];
    const BigInt& y = t[(index + 2) % 3];
    return sorted(x, y, 3 * x * y - t[index]);
}

int descent_steps(const Triple& t) {
    Triple cur = t;
    int steps = 0;
    while (!(cur.a == 1 && cur.b == 1 && cur.c == 1)) {
        cur = mutate(cur, 2);
        ++steps;
        if (steps > 100000) throw std::logic_error("Markov descent did not terminate");
    }
    return steps;
}

std::vector<Triple> markov_tree(const BigInt& max_entry) {
    if (max_entry < 1) throw InputError("max_entry must be >= 1");
    std::set<Triple> seen;
    std::deque<Triple> queue{Triple{1, 1, 1}};
    seen.insert(queue.front());
    while (!queue.empty()) {
        Triple t = queue.front();
        queue.pop_front();
        for (int i = 0; i < 3; ++i) {
            Triple s = mutate(t, i);
            if (s.c > max_entry || seen.count(s)) continue;
            seen.insert(s);
            queue.push_back(s);
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<BigInt> markov_numbers(const BigInt& n) {
    std::set<BigInt> nums;
    for (const auto& t : markov_tree(std::max(n, BigInt(1))))
        for (int i = 0; i < 3; ++i)
            if (t[i] <= n) nums.insert(t[i]);
    return {nums.begin(), nums.end()};
}

bool is_markov_number(const BigInt& n) {
    if (n < 1) throw InputError("n must be >= 1");
    auto nums = markov_numbers(n);
    return std::binary_search(nums.begin(), nums.end(), n);
}

bool verify_gonality_gap(const BigInt& max_entry) {
    if (max_entry < 1) throw InputError("max_entry must be >= 1");
    for (const auto& t : markov_tree(max_entry))
        if (t.c > 2 && !(t.a * t.b < t.c - 1)) return false;
    return true;
}

std::size_t markov_count(const BigInt& n) {
    if (n < 1) throw InputError("n must be >= 1");
    return markov_numbers(n).size();
}

}  // namespace clv::markov
