#pragma once

// Limiting edge distributions through the Painleve II route: an independent
// oracle for the determinant pipeline. q'' = s q + 2 q^3 on the branch with
// q ~ Ai at +inf, integrated inward with an adaptive embedded Runge-Kutta
// stepper alongside the accumulated integrals the distribution formulas need.

#include <vector>

namespace edgekernel {

struct PainleveValues {
    double s = 0;
    double q = 0;     // Hastings-McLeod solution
    double f2 = 1;    // exp(-int_s^inf (x-s) q^2)
    double f1 = 1;    // sqrt(f2) * exp(-R/2), R = int_s^inf q
    double f4 = 1;    // sqrt(f2) * cosh(R/2)
};

// Valid for s >= -10 (acceptance range); throws std::domain_error outside,
// std::runtime_error if the solution leaves the decaying branch.
PainleveValues painleve_eval(double s);

// Batched: one inward integration pass serving all points.
std::vector<PainleveValues> painleve_eval(const std::vector<double>& s);

double painleve_f2(double s);
double painleve_f1(double s);
double painleve_f4(double s);

// Pins the argument convention relating the GSE matrix-kernel gap to F4.
// Each candidate scale c is scored by max_s |gap_gse(s) - F4(c*s)| over the
// grid; exactly one candidate is expected to land within tol.
struct F4Calibration {
    double scale = 0;          // matched convention: gap_gse(s) = F4(scale*s)
    double residual = 0;       // worst-case mismatch of the matched scale
    int match_count = 0;       // candidates within tol (must be exactly 1)
    std::vector<double> candidate_scales;
    std::vector<double> candidate_residuals;
};

F4Calibration calibrate_f4(const std::vector<double>& s_grid, double tol);

}  // namespace edgekernel
