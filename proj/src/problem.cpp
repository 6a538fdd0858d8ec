#include "mellin/problem.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "mellin/error.hpp"

namespace mellin {

Shape::Shape(int degree, std::vector<int> exponents)
    : degree_(degree), exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw InvalidInput("need at least one exponent (p >= 1)");
  if (exponents_.front() >= degree_) {
    throw InvalidInput("exponents must be smaller than the degree n");
  }
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] <= 0) throw InvalidInput("exponents must be positive");
    if (i > 0 && exponents_[i] >= exponents_[i - 1]) {
      throw InvalidInput("exponents must be strictly decreasing");
    }
  }
}

int Shape::exponent_sum() const noexcept {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

std::string Shape::describe() const {
  std::ostringstream out;
  out << "n=" << degree_ << " exps=[";
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    out << (i ? "," : "") << exponents_[i];
  }
  out << "]";
  return out.str();
}

Problem::Problem(Shape shape, std::vector<double> coeffs)
    : shape_(std::move(shape)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != shape_.dim()) {
    throw InvalidInput("number of coefficients must equal number of exponents");
  }
  for (double x : coeffs_) {
    if (!std::isfinite(x)) throw InvalidInput("coefficients must be finite");
    if (x < 0.0) throw InvalidInput("coefficients must be nonnegative");
  }
}

Problem::Problem(int degree, std::vector<int> exponents, std::vector<double> coeffs)
    : Problem(Shape(degree, std::move(exponents)), std::move(coeffs)) {}

double Problem::residual(double z) const noexcept {
  double acc = std::pow(z, shape_.degree()) - 1.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    acc += coeffs_[i] * std::pow(z, shape_.exponent(i));
  }
  return acc;
}

std::string Problem::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << shape_.describe() << " coeffs=[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out << (i ? "," : "") << coeffs_[i];
  out << "]";
  return out.str();
}

}  // namespace mellin
