#pragma once

// 50-digit reference for the upper-tail normal integral.

#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace flqkd::oracle {

using Real50 = boost::multiprecision::cpp_bin_float_50;

inline double q_function(double x) {
  const Real50 arg = Real50(x) / boost::multiprecision::sqrt(Real50(2));
  return static_cast<double>(boost::math::erfc(arg) / 2);
}

}  // namespace flqkd::oracle
