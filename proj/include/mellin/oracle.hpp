#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mellin/problem.hpp"

namespace mellin::oracle {

using cplx = std::complex<double>;

/// All n roots of the equation; roots[principal_index] is the positive real one.
struct RootSet {
  std::vector<cplx> roots;
  std::size_t principal_index = 0;
};

/// The principal solution Z(x) in (0, 1]: the unique positive root, reached
/// from Z(0) = 1. Safeguarded Newton on a bracket inside (0, 1].
double principal_root(const Problem& problem);

/// Companion-matrix eigenvalues, each polished by Newton on the polynomial.
RootSet all_roots(const Problem& problem);

/// { eps * Zt(eps^{n_1} x_1, ..., eps^{n_p} x_p) : eps^n = 1 }, where Zt is the
/// holomorphic continuation of the principal branch. Each branch is tracked
/// along t -> t * (eps^{n_i} x_i), t in [0, 1], starting at Zt = 1.
/// Requires sum(x) < 0.5; throws ContinuationError when two branches collide.
std::vector<cplx> epsilon_family(const Problem& problem);

/// Largest distance between matched elements of two equally sized multisets
/// of complex numbers (greedy nearest matching; adequate for separated roots).
double multiset_distance(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace mellin::oracle
