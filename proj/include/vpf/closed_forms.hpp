#pragma once

#include <complex>
#include <ostream>
#include <vector>

#include "vpf/bigint.hpp"

namespace vpf {

// x + y*sqrt(2) with exact integer coordinates.
class QuadraticInt {
public:
  QuadraticInt() = default;
  QuadraticInt(BigInt x, BigInt y) : x_(std::move(x)), y_(std::move(y)) {}

  const BigInt& x() const { return x_; }
  const BigInt& y() const { return y_; }

  QuadraticInt conjugate() const { return {x_, -y_}; }
  // x^2 - 2y^2; multiplicative.
  BigInt norm() const { return x_ * x_ - 2 * y_ * y_; }

  QuadraticInt pow(unsigned exponent) const;

  friend QuadraticInt operator+(const QuadraticInt& a, const QuadraticInt& b) {
    return {a.x_ + b.x_, a.y_ + b.y_};
  }
  friend QuadraticInt operator*(const QuadraticInt& a, const QuadraticInt& b) {
    return {a.x_ * b.x_ + 2 * a.y_ * b.y_, a.x_ * b.y_ + b.x_ * a.y_};
  }
  friend bool operator==(const QuadraticInt&, const QuadraticInt&) = default;
  friend std::ostream& operator<<(std::ostream& os, const QuadraticInt& q);

private:
  BigInt x_ = 0;
  BigInt y_ = 0;
};

// ((1 + sqrt2)^n + (1 - sqrt2)^n) / 2, i.e. the rational part of (1 + sqrt2)^n.
BigInt nondec_closed_exact(int n);

struct Convergent {
  BigInt p;
  BigInt q;
};

// n-th convergent of sqrt2 = [1; 2, 2, 2, ...].
Convergent sqrt2_convergent(int n);

// c_0..c_{n_max} of (x + x^2) / (1 - 2x - x^3).
std::vector<BigInt> noninc_series(int n_max);

// Roots of x^3 + 2x - 1: one real root and a conjugate pair alpha +- beta i.
struct CubicRoots {
  double r;
  double alpha;
  double beta;

  std::complex<double> upper() const { return {alpha, beta}; }
  std::complex<double> lower() const { return {alpha, -beta}; }
};

CubicRoots cubic_roots();

double cubic_residual(std::complex<double> x);

struct NumericClosedForm {
  double value;     // real part of the three-term sum
  double imag;      // imaginary part left over after the conjugate terms
};

inline constexpr int kNumericClosedFormMaxN = 40;

// Evaluates the partial-fraction expression for the non-increasing count in
// double-precision complex arithmetic. Throws ResourceLimitError for
// n > max_n; use noninc_series for exact values there.
NumericClosedForm noninc_closed_numeric_detail(int n, int max_n = kNumericClosedFormMaxN);

double noninc_closed_numeric(int n, int max_n = kNumericClosedFormMaxN);

}  // namespace vpf
