#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace stsflow {

// All linear algebra in this project is exact. Rat is an arbitrary-precision
// rational; Int an arbitrary-precision integer. Nothing here ever touches
// floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using RatVec = std::vector<Rat>;
using IntVec = std::vector<long long>;

inline Rat make_rat(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rat(Int(num), Int(den));
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string rat_to_string(const Rat& r) {
    if (is_integer(r)) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(num, den);
}

inline RatVec to_rat_vec(const IntVec& v) {
    RatVec out;
    out.reserve(v.size());
    for (long long x : v) out.emplace_back(x);
    return out;
}

inline long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace stsflow
