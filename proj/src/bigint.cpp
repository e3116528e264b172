#include "vpf/bigint.hpp"

#include <cctype>

#include "vpf/errors.hpp"

namespace vpf {

BigInt parse_decimal(const std::string& text) {
  std::size_t start = (!text.empty() && text[0] == '-') ? 1 : 0;
  if (start == text.size()) throw InputError("not a decimal integer: '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw InputError("not a decimal integer: '" + text + "'");
  return BigInt(text);
}

BigInt factorial(int n) {
  BigInt result = 1;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

BigInt ipow(const BigInt& base, unsigned exponent) {
  BigInt result = 1;
  BigInt square = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= square;
    exponent >>= 1U;
    if (exponent != 0) square *= square;
  }
  return result;
}

}  // namespace vpf
