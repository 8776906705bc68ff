#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace eplr {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace eplr
