#include "mixpois/int_polynomial.hpp"

#include <sstream>
#include <utility>

namespace mixpois {

namespace {
const BigCount kZero = 0;
}

IntPolynomial::IntPolynomial(std::vector<BigCount> coefficients)
    : coeffs_(std::move(coefficients)) {
  normalize();
}

IntPolynomial IntPolynomial::constant(BigCount c) {
  std::vector<BigCount> v;
  v.push_back(std::move(c));
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::monomial(BigCount c, std::size_t power) {
  if (c == 0) return IntPolynomial();
  std::vector<BigCount> v(power + 1, BigCount(0));
  v[power] = std::move(c);
  return IntPolynomial(std::move(v));
}

const BigCount& IntPolynomial::coeff(std::size_t k) const {
  if (k >= coeffs_.size()) return kZero;
  return coeffs_[k];
}

BigCount IntPolynomial::evaluate(const BigCount& x) const {
  BigCount acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

double IntPolynomial::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + to_double(*it);
  }
  return acc;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), BigCount(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), BigCount(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const IntPolynomial& rhs) {
  if (coeffs_.empty() || rhs.coeffs_.empty()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<BigCount> out(coeffs_.size() + rhs.coeffs_.size() - 1, BigCount(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const BigCount& scalar) {
  if (scalar == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

IntPolynomial IntPolynomial::shifted_up(std::size_t k) const {
  if (coeffs_.empty() || k == 0) {
    IntPolynomial out = *this;
    return out;
  }
  std::vector<BigCount> v(coeffs_.size() + k, BigCount(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i + k] = coeffs_[i];
  return IntPolynomial(std::move(v));
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const BigCount& c = coeffs_[k];
    if (c == 0) continue;
    const BigCount mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (k == 0) {
      out << mag.str();
    } else {
      if (mag != 1) out << mag.str();
      out << "x";
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

}  // namespace mixpois
