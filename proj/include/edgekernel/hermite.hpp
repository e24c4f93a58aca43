#pragma once

// Harmonic oscillator wave functions phi_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2}
// (orthonormal on R), their derivatives, tail integrals I_n(x) = int_x^inf phi_n,
// and the smoothing-operator images (eps phi_n)(x) = c_n - I_n(x) with
// c_n = (1/2) int phi_n.
//
// Everything runs on forward three-term recurrences. phi_0 (and I_0) underflow
// double precision long before the interesting orders are reached near the
// spectral edge (e.g. phi_0(32) ~ e^-512), so the batch evaluator carries a
// shared power-of-two exponent alongside the mantissas and renormalizes as it
// walks up in n. Single-value wrappers and the plain-double array fill are
// built on top of that.

#include <vector>

namespace edgekernel {

inline constexpr int kHermiteMaxOrder = 600;

// phi_0..phi_n and I_0..I_n at one point, as plain doubles (entries whose true
// magnitude is below ~1e-300 come out as 0, which is exact enough for every
// kernel sum). Vectors are resized to n+1.
void hermite_phi_tail_arrays(int n, double x, std::vector<double>& phi,
                             std::vector<double>& tail);

// c_n = (1/2) int_{-inf}^{inf} phi_n: zero for odd n, closed-form descending
// product for even n. Values cached up to kHermiteMaxOrder on first use.
double hermite_c(int n);

// Single-value accessors (each runs the recurrence up to n).
double hermite_phi(int n, double x);
double hermite_phi_deriv(int n, double x);  // ladder: phi_n' = -x phi_n + sqrt(2n) phi_{n-1}
double hermite_phi_tail(int n, double x);   // I_n(x)
double eps_phi(int n, double x);            // c_n - I_n(x)

}  // namespace edgekernel
