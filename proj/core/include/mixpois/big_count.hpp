#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace mixpois {

// Exact nonnegative counts (Stirling numbers, double factorials, partition
// counts). Arbitrary precision: second-kind Stirling numbers leave the
// 64-bit range near s = 25 and polynomial identities must stay exact.
using BigCount = boost::multiprecision::cpp_int;

inline double to_double(const BigCount& v) { return v.convert_to<double>(); }

}  // namespace mixpois
