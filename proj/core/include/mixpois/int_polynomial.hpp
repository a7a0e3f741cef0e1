#pragma once

#include <string>
#include <vector>

#include "mixpois/big_count.hpp"

namespace mixpois {

/// Polynomial in one variable with exact integer coefficients, stored by
/// ascending power. The zero polynomial is the empty coefficient list;
/// otherwise the highest-index coefficient is nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigCount> coefficients);

  static IntPolynomial constant(BigCount c);
  static IntPolynomial monomial(BigCount c, std::size_t power);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the polynomial; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of x^k (zero beyond the stored degree).
  const BigCount& coeff(std::size_t k) const;
  const std::vector<BigCount>& coefficients() const { return coeffs_; }

  BigCount evaluate(const BigCount& x) const;
  double evaluate(double x) const;

  IntPolynomial& operator+=(const IntPolynomial& rhs);
  IntPolynomial& operator-=(const IntPolynomial& rhs);
  IntPolynomial& operator*=(const IntPolynomial& rhs);
  IntPolynomial& operator*=(const BigCount& scalar);
  /// Multiply by x^k.
  IntPolynomial shifted_up(std::size_t k) const;

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const IntPolynomial& b) { return a *= b; }
  friend IntPolynomial operator*(IntPolynomial a, const BigCount& s) { return a *= s; }

  bool operator==(const IntPolynomial& rhs) const { return coeffs_ == rhs.coeffs_; }

  /// Human-readable form by ascending power, e.g. "x + 3x^2"; "0" when zero.
  std::string to_string() const;

 private:
  void normalize();
  std::vector<BigCount> coeffs_;
};

}  // namespace mixpois
