#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace halfcube {

/// Exact integer used for chain coefficients, determinants and invariant factors.
using BigInt = boost::multiprecision::cpp_int;

}  // namespace halfcube
