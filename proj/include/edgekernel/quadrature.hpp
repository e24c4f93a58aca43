#pragma once

// Gauss-Legendre rules, affine interval mapping, and composite panels for
// semi-infinite integrals with superexponentially decaying integrands.

#include <cstddef>
#include <functional>
#include <vector>

namespace edgekernel {

struct QuadratureGrid {
    double s = 0;                 // left endpoint
    double T = 0;                 // truncation point
    std::vector<double> nodes;    // strictly increasing, inside (s, T)
    std::vector<double> weights;  // positive, sum = T - s
    int m = 0;                    // node count
};

// Nodes/weights of the m-point rule on [-1, 1]. Newton iteration on P_m with
// the analytic derivative; 1 <= m <= 512.
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

// Affine image of gauss_legendre(m) on (s, T), weights scaled by (T-s)/2.
QuadratureGrid map_to_interval(int m, double s, double T);

// Composite Gauss-Legendre panels of fixed width starting at `a`, extended
// panel by panel while `significant(panel_start)` stays true (checked at the
// start of each new panel), with a hard cap. Returns flattened nodes/weights.
struct PanelRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
PanelRule composite_panels(double a, double width, int pts_per_panel, int max_panels,
                           const std::function<bool(double)>& significant);

// Exact application of the smoothing operator (eps f)(x) = (1/2) int_s^T
// sgn(x-y) f(y) dy to the degree-(m-1) Legendre expansion fitted through the
// grid's Gauss nodes. Returns row-major m x m E with (eps f)(x_i) =
// sum_j E[i*m+j] f(x_j); the quadrature weights are folded in. Spectrally
// accurate, unlike sampling the sgn kernel pointwise.
std::vector<double> eps_interpolant_matrix(const QuadratureGrid& grid);

}  // namespace edgekernel
