#pragma once

#include <complex>
#include <span>

namespace mellin {

using cplx = std::complex<double>;

/// Distance below which an argument counts as a pole of Gamma.
inline constexpr double kPoleTolerance = 1e-12;

/// Principal branch of log Gamma(z): analytic on the plane slit along
/// (-inf, 0], real on the positive axis, log_gamma(conj z) = conj log_gamma(z).
/// Lanczos (g = 7) for Re z >= 0.5, reflection below.
/// Throws PoleError at nonpositive integers.
cplx log_gamma(cplx z);

/// Gamma(z), evaluated as exp(log_gamma(z)). Throws OverflowError when
/// |Gamma(z)| exceeds the double range.
cplx gamma(cplx z);

/// True when z lies within kPoleTolerance of 0, -1, -2, ...
bool is_gamma_pole(cplx z) noexcept;

/// prod Gamma(num) / prod Gamma(den), accumulated in log space.
cplx gamma_ratio(std::span<const cplx> numerators, std::span<const cplx> denominators);

/// Log-space form of gamma_ratio (no overflow check).
cplx log_gamma_ratio(std::span<const cplx> numerators, std::span<const cplx> denominators);

/// exp(w) with an OverflowError instead of inf.
cplx checked_exp(cplx w);

}  // namespace mellin
