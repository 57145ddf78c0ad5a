#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qgrass {

// Exact rational scalar domain. cpp_rational keeps the canonical form the rest of
// the library relies on: gcd(|num|, den) = 1, den > 0, zero stored as 0/1.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace qgrass
