#include "mellin/gamma.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mellin/error.hpp"

namespace mellin {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);
const double kLogPi = std::log(std::numbers::pi);
const double kLog2 = std::log(2.0);
constexpr double kMaxLog = 709.0;

// Re z >= 0.5.
cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx series = kLanczosCoeffs[0];
  for (std::size_t k = 1; k < kLanczosCoeffs.size(); ++k) {
    series += kLanczosCoeffs[k] / (z + static_cast<double>(k));
  }
  const cplx t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

// Branch of log sin(pi z) analytic on Im z > 0 (continuous up to the real
// axis from above), normalized so that it is real on (0, 1).
cplx log_sin_pi_upper(cplx z) {
  const cplx i(0.0, 1.0);
  const cplx w = std::exp(2.0 * std::numbers::pi * i * z);
  return -kLog2 + i * std::numbers::pi * (0.5 - z) + std::log(1.0 - w);
}

[[noreturn]] void throw_pole(cplx z) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "Gamma pole at z = " << z.real() << (z.imag() < 0 ? " - " : " + ")
      << std::abs(z.imag()) << "i";
  throw PoleError(msg.str());
}

}  // namespace

bool is_gamma_pole(cplx z) noexcept {
  if (z.real() > 0.5) return false;
  const double k = std::round(z.real());
  if (k > 0.0) return false;
  return std::abs(z - cplx(k, 0.0)) < kPoleTolerance;
}

cplx log_gamma(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidInput("log_gamma: non-finite argument");
  }
  if (is_gamma_pole(z)) throw_pole(z);
  if (z.real() >= 0.5) return lanczos_log_gamma(z);

  if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
  // log Gamma(z) + log Gamma(1 - z) = log pi - log sin(pi z) holds exactly
  // (no 2 pi i offset) on the closed upper half plane with this branch.
  return kLogPi - log_sin_pi_upper(z) - lanczos_log_gamma(1.0 - z);
}

cplx checked_exp(cplx w) {
  if (w.real() > kMaxLog) {
    std::ostringstream msg;
    msg << "value exp(" << w.real() << ") exceeds the double range";
    throw OverflowError(msg.str());
  }
  return std::exp(w);
}

cplx gamma(cplx z) { return checked_exp(log_gamma(z)); }

cplx log_gamma_ratio(std::span<const cplx> numerators,
                     std::span<const cplx> denominators) {
  cplx acc = 0.0;
  for (const cplx& z : numerators) acc += log_gamma(z);
  for (const cplx& z : denominators) acc -= log_gamma(z);
  return acc;
}

cplx gamma_ratio(std::span<const cplx> numerators,
                 std::span<const cplx> denominators) {
  return checked_exp(log_gamma_ratio(numerators, denominators));
}

}  // namespace mellin
