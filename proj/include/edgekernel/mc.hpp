#pragma once

// Tridiagonal beta-Hermite Monte Carlo oracle: samples lambda_max of the
// GOE/GSE joint densities (matched to the kernel weight conventions) and
// reports empirical edge-scaled CDFs with binomial standard errors.

#include <cstdint>
#include <vector>

#include "edgekernel/kernel_types.hpp"

namespace edgekernel {

struct McConfig {
    long samples = 10000;
    int N = 2;
    Ensemble ensemble = Ensemble::GOE;
    std::uint64_t seed = 1;
};

struct McResult {
    std::vector<double> s_eval;  // evaluation points (edge-scaled)
    std::vector<double> cdf;     // empirical P(tau^{-1}(lambda_max) <= s)
    std::vector<double> se;      // binomial standard errors
    long samples = 0;
};

// Raw largest eigenvalues in the weight convention of the ensemble
// (GOE: x = mu; GSE: x = mu/sqrt(2) for the tridiagonal model's mu),
// unscaled. Deterministic for a fixed seed regardless of thread count.
std::vector<double> mc_lmax_samples(const McConfig& cfg);

// Edge-scaled empirical CDF: samples mapped by tau^{-1} built from the
// spec's kernel order (GOE: N; GSE: 2N+1).
McResult mc_edge_cdf(const McConfig& cfg, const std::vector<double>& s_eval);

}  // namespace edgekernel
