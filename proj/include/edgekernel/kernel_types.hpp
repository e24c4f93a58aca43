#pragma once

// Shared domain types for the finite-N and limiting matrix kernels.

#include <cmath>

namespace edgekernel {

enum class Ensemble { GOE, GSE };

// N counts eigenvalues (it is also the tridiagonal model size in the sampling
// oracle). GOE requires N even, GSE requires N odd.
struct EnsembleSpec {
    Ensemble ensemble = Ensemble::GOE;
    int N = 2;
};

// Validates positivity and parity; throws std::invalid_argument otherwise.
EnsembleSpec make_spec(Ensemble ensemble, int N);

// Order of the matrix kernel backing a spec. The symplectic kernel of order M
// describes (M-1)/2 eigenvalues (the order-1 kernel vanishes identically), so
// GSE maps N -> 2N+1; the orthogonal kernel order is N itself.
int kernel_order(const EnsembleSpec& spec);

// Edge map tau(x) = sqrt(2N) + x/(sqrt2 N^{1/6}) for a kernel order N.
struct ScalingMap {
    int N = 0;
    double tau_shift = 0;  // sqrt(2N)
    double tau_scale = 0;  // 1/(sqrt2 N^{1/6})
    double tau_prime = 0;  // == tau_scale; d tau / dx

    double operator()(double x) const { return tau_shift + tau_scale * x; }
    double inverse(double t) const { return (t - tau_shift) / tau_scale; }
};

ScalingMap make_scaling(int order);

// One 2x2 kernel sample: entries (S, SD, IS [minus eps for GOE], S
// transposed), with any ensemble prefactor already applied.
struct MatrixKernelSample {
    double e11 = 0;
    double e12 = 0;
    double e21 = 0;
    double e22 = 0;
};

// eps(x) = (1/2) sgn x with eps(0) = 0.
inline double eps_sign(double d) { return d > 0 ? 0.5 : (d < 0 ? -0.5 : 0.0); }

}  // namespace edgekernel
