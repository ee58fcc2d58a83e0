#pragma once

#include <span>

namespace parobs {

/// Fundamental solution of the heat equation in R^n, n in {1,2,3}:
/// (4 pi t)^{-n/2} exp(-|x|^2 / (4t)) for t > 0 and 0 otherwise.
/// Only the first n entries of x are read.
double heat_kernel(std::span<const double> x, double t, int n);

/// Same kernel with |x|^2 already computed.
double heat_kernel_r2(double r2, double t, int n);

}  // namespace parobs
