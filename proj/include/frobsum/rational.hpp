#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace frobsum {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& z) { return z.convert_to<double>(); }

}  // namespace frobsum
