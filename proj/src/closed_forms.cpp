#include "vpf/closed_forms.hpp"

#include <cmath>
#include <string>

#include "vpf/errors.hpp"

namespace vpf {

QuadraticInt QuadraticInt::pow(unsigned exponent) const {
  QuadraticInt result{1, 0};
  QuadraticInt square = *this;
  while (exponent != 0) {
    if (exponent & 1U) result = result * square;
    exponent >>= 1U;
    if (exponent != 0) square = square * square;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const QuadraticInt& q) {
  os << q.x_ << (q.y_ < 0 ? " - " : " + ") << abs(q.y_) << "*sqrt2";
  return os;
}

BigInt nondec_closed_exact(int n) {
  if (n < 1) throw InputError("nondec_closed_exact needs n >= 1, got " + std::to_string(n));
  // The sqrt2 parts of (1 + sqrt2)^n and its conjugate cancel and the
  // rational parts are equal, so the half-sum is exactly x.
  return QuadraticInt{1, 1}.pow(static_cast<unsigned>(n)).x();
}

Convergent sqrt2_convergent(int n) {
  if (n < 1) throw InputError("sqrt2_convergent needs n >= 1, got " + std::to_string(n));
  Convergent prev{1, 1};
  if (n == 1) return prev;
  Convergent cur{3, 2};
  for (int m = 3; m <= n; ++m) {
    Convergent next{2 * cur.p + prev.p, 2 * cur.q + prev.q};
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<BigInt> noninc_series(int n_max) {
  if (n_max < 0) throw InputError("noninc_series needs n_max >= 0");
  // (1 - 2x - x^3) F = x + x^2  =>  c_n = 2 c_{n-1} + c_{n-3} + [n == 1] + [n == 2].
  std::vector<BigInt> c(static_cast<std::size_t>(n_max) + 1, 0);
  for (int n = 1; n <= n_max; ++n) {
    const auto idx = static_cast<std::size_t>(n);
    BigInt value = 2 * c[idx - 1];
    if (n >= 3) value += c[idx - 3];
    if (n == 1 || n == 2) value += 1;
    c[idx] = std::move(value);
  }
  return c;
}

double cubic_residual(std::complex<double> x) { return std::abs(x * x * x + 2.0 * x - 1.0); }

CubicRoots cubic_roots() {
  auto f = [](double x) { return x * x * x + 2 * x - 1; };
  // f(0) = -1 < 0 < 2 = f(1), and f is increasing, so [0, 1] brackets the
  // only real root.
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  double r = 0.5 * (lo + hi);
  for (int iter = 0; iter < 3; ++iter) r -= f(r) / (3 * r * r + 2);

  // Deflate: x^3 + 2x - 1 = (x - r)(x^2 + r x + 1/r).
  const double alpha = -r / 2;
  const double beta = std::sqrt(1 / r - r * r / 4);
  return {r, alpha, beta};
}

NumericClosedForm noninc_closed_numeric_detail(int n, int max_n) {
  if (n < 1) throw InputError("noninc_closed_numeric needs n >= 1, got " + std::to_string(n));
  if (n > max_n) {
    throw ResourceLimitError("noninc_closed_numeric is limited to n <= " + std::to_string(max_n) +
                             " by double precision; use noninc_series for exact values");
  }
  using C = std::complex<double>;
  const auto roots = cubic_roots();
  const double r = roots.r;
  const double a = roots.alpha;
  const double b = roots.beta;

  const double delta1 = (r * r * r + r * r) / (2 * r * r * r + 1);
  const C delta2 = C(a * a - b * b + a, b * (2 * a + 1)) / C(-2 * b * b, 2 * (a - r) * b);
  const C delta3 = C(a * a - b * b + a, -b * (2 * a + 1)) / C(-2 * b * b, -2 * (a - r) * b);

  const int power = n + 1;
  const C sum = delta1 * std::pow(1 / r, power) + delta2 * std::pow(C(1) / roots.upper(), power) +
                delta3 * std::pow(C(1) / roots.lower(), power);
  return {sum.real(), sum.imag()};
}

double noninc_closed_numeric(int n, int max_n) { return noninc_closed_numeric_detail(n, max_n).value; }

}  // namespace vpf
