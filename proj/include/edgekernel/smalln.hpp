#pragma once

// Ground-truth P(lambda_max <= t) for tiny ensembles by direct integration of
// the joint eigenvalue density; independent of every kernel code path.

#include "edgekernel/kernel_types.hpp"

namespace edgekernel {

// Integrates prod_{i<j} |x_i-x_j|^beta * prod_k w(x_k) over the ordered region
// -X < x_1 < ... < x_N <= t (X = 8) with iterated Gauss-Legendre rules, and
// normalizes by the same integral up to +X. GOE: beta=1, w = e^{-x^2/2};
// GSE: beta=4, w = e^{-x^2}. N limited to 4 (GOE: 2 or 4; GSE: 1 or 3).
// Absolute error comfortably below 1e-7.
double smalln_cdf_direct(const EnsembleSpec& spec, double t);

}  // namespace edgekernel
