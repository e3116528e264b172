#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace vpf {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& value) { return value.str(); }

// Throws InputError on anything but an optional '-' followed by digits.
BigInt parse_decimal(const std::string& text);

BigInt factorial(int n);

// Exact power; exponent must be nonnegative.
BigInt ipow(const BigInt& base, unsigned exponent);

}  // namespace vpf
