#pragma once

#include <span>
#include <string>
#include <vector>

namespace mellin {

/// Degree n and exponents n_1 > ... > n_p of
///   Z^n + x_1 Z^{n_1} + ... + x_p Z^{n_p} - 1 = 0.
class Shape {
 public:
  /// Throws InvalidInput unless p >= 1 and 0 < n_p < ... < n_1 < n.
  Shape(int degree, std::vector<int> exponents);

  int degree() const noexcept { return degree_; }
  std::span<const int> exponents() const noexcept { return exponents_; }
  int exponent(std::size_t i) const { return exponents_.at(i); }
  std::size_t dim() const noexcept { return exponents_.size(); }

  /// n_i / n.
  double ratio(std::size_t i) const { return double(exponents_.at(i)) / degree_; }
  /// Sum of the exponents n_1 + ... + n_p.
  int exponent_sum() const noexcept;

  std::string describe() const;

 private:
  int degree_;
  std::vector<int> exponents_;
};

/// Shape plus nonnegative coefficients x_1, ..., x_p.
class Problem {
 public:
  /// Throws InvalidInput on length mismatch, negative or non-finite coefficients.
  Problem(Shape shape, std::vector<double> coeffs);
  Problem(int degree, std::vector<int> exponents, std::vector<double> coeffs);

  const Shape& shape() const noexcept { return shape_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double coeff(std::size_t i) const { return coeffs_.at(i); }
  std::size_t dim() const noexcept { return coeffs_.size(); }

  /// Value of Z^n + sum x_i Z^{n_i} - 1.
  double residual(double z) const noexcept;

  std::string describe() const;

 private:
  Shape shape_;
  std::vector<double> coeffs_;
};

}  // namespace mellin
