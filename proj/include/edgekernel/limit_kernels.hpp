#pragma once

// The Airy kernel and the limiting GSE/GOE matrix kernels at the soft edge.

#include <vector>

#include "edgekernel/kernel_types.hpp"

namespace edgekernel {

enum class LimitKernelKind { AIRY_SCALAR, GSE, GOE };

// K(x,y) = int_0^inf Ai(x+z) Ai(y+z) dz. Quotient form
// (Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x-y) away from the diagonal; on it, the
// ODE-derived K(x,x) = Ai'(x)^2 - x Ai(x)^2 with a first-order expansion.
double k_airy(double x, double y);

// d/dy K(x,y) = int_0^inf Ai(x+z) Ai'(y+z) dz (adaptive panels).
double k_airy_dy(double x, double y);

// int_x^inf K(z,y) dz, via the swapped representation
// int_0^inf Ai(y+w) * airy_tail(x+w) dw.
double k_airy_tailx(double x, double y);

// Limiting GSE kernel: (1/2) [[S, SD], [IS, S^T]] with
//   S(x,y)  = K(x,y) - (1/2) Ai(x) airy_tail(y)
//   SD(x,y) = -d/dy K(x,y) - (1/2) Ai(x) Ai(y)
//   IS(x,y) = -int_x^inf K(z,y) dz + (1/2) airy_tail(x) airy_tail(y)
MatrixKernelSample k_gse(double x, double y);

// Limiting GOE kernel (no global prefactor):
//   S(x,y)  = K(x,y) + (1/2) Ai(x) (1 - airy_tail(y))
//   SD      as in GSE
//   IS(x,y) = GSE IS + (1/2)(airy_tail(y) - airy_tail(x))
//   e21     = IS(x,y) - eps(x-y)
MatrixKernelSample k_goe(double x, double y);

// Batch blocks on a common node vector: S/SD/IS with the ensemble's
// structural pieces included (GOE S constant term, GOE IS antisymmetric
// term) but no ensemble prefactor and no eps term. Row index = first
// argument; row-major m x m.
struct LimitBlocks {
    std::vector<double> S, SD, IS;
    int m = 0;
};
LimitBlocks limit_blocks(LimitKernelKind kind, const std::vector<double>& nodes);

}  // namespace edgekernel
