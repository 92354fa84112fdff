#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace clv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Bad user input (exit code 2 at the CLI).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Newton pairs that do not describe a single branch.
class NotUnibranch : public InputError {
public:
    explicit NotUnibranch(const std::string& what) : InputError(what) {}
};

inline Rational rat(std::int64_t p, std::int64_t q = 1) { return Rational(BigInt(p), BigInt(q)); }

// Always "p/q", also for integers.
inline std::string to_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt q(s.substr(slash + 1));
        if (q == 0) throw InputError("zero denominator in '" + s + "'");
        return Rational(BigInt(s.substr(0, slash)), q);
    } catch (const std::runtime_error&) {
        throw InputError("not a rational: '" + s + "'");
    }
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace clv
