#pragma once

// Finite-N GSE/GOE matrix kernel entries, the Christoffel-Darboux sum and its
// integral representation, and the edge-scaled corner-modified kernels whose
// determinants converge to the limiting gap probabilities.

#include <vector>

#include "edgekernel/kernel_types.hpp"

namespace edgekernel {

// S_N^0(x,y) = sum_{n<N} phi_n(x) phi_n(y); N in [1, 400].
double sn0_sum(int N, double x, double y);

// The same object through the one-sided integral representation
// int_0^inf [phi(x+z) psi(y+z) + psi(x+z) phi(y+z)] dz with
// phi = (N/2)^{1/4} phi_N, psi = (N/2)^{1/4} phi_{N-1}; adaptive truncation.
double sn0_integral(int N, double x, double y);

// Raw order-M kernel entries, no ensemble mapping (exposed for tests and for
// the scaled path): S, IS (without the eps term), and SD.
double s_raw(int M, double x, double y);
double is_raw(int M, double x, double y);
double snd_raw(int M, double x, double y);

// Ensemble entries at the ensemble's kernel order (GOE: M = N; GSE: M = 2N+1).
// No ensemble prefactor here; kn_matrix applies the GSE 1/2.
double s_n(const EnsembleSpec& spec, double x, double y);
double is_n(const EnsembleSpec& spec, double x, double y);
double snd(const EnsembleSpec& spec, double x, double y);

// Unscaled matrix kernel: GSE (1/2)[[S, SD], [IS, S^T]];
// GOE [[S, SD], [IS - eps(x-y), S^T]].
MatrixKernelSample kn_matrix(const EnsembleSpec& spec, double x, double y);

// Edge-scaled kernel in the variables of tau: e11 = tau' S(tau x, tau y),
// e12 = tau'^2 SD, e21 = IS (the corner divisions by tau' cancel the change
// of variables; GOE keeps -eps(x-y) unscaled), e22 = e11 with arguments
// swapped. GSE carries its 1/2.
MatrixKernelSample scaled_kernel(const EnsembleSpec& spec, double x, double y);

// Scaled blocks S/SD/IS on a common node vector (scaled coordinates), with
// corner scalings applied but no ensemble prefactor and no eps term. Row
// index = first argument. Row-major m x m.
struct ScaledBlocks {
    std::vector<double> S, SD, IS;
    int m = 0;
};
ScaledBlocks scaled_blocks(const EnsembleSpec& spec, const std::vector<double>& nodes);

}  // namespace edgekernel
