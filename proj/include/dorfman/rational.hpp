#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

namespace dorfman {

/// Exact rational coefficients over arbitrary-precision integers.
/// Every identity in this library is checked with exact zero tests, so no
/// floating point appears anywhere.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

inline bool is_integer(const Rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

}  // namespace dorfman
