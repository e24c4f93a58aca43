#pragma once

namespace edgekernel {

// Truncation point for discretizing (s, inf): the smallest T = s + 4k
// (integer k >= 2) such that the Airy-kernel diagonal K(T,T) and the Airy
// tail integral at T are both below tol, clamped so T >= max(s+8, 10).
double choose_truncation(double s, double tol);

}  // namespace edgekernel
