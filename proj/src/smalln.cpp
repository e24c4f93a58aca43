#include "edgekernel/smalln.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "edgekernel/quadrature.hpp"

namespace edgekernel {

namespace {

constexpr double kBox = 8.0;  // integration box half-width
constexpr int kNodes = 48;    // per-level Gauss rule

struct Level {
    bool gse = false;
    std::vector<double> u, w;  // reference rule on [-1, 1]

    double weight(double x) const { return std::exp(gse ? -x * x : -0.5 * x * x); }

    // Integral over -kBox < x_1 < ... < x_remaining <= upper of the density,
    // with `outer` the already-fixed larger eigenvalues. Ordered nesting keeps
    // the |x_i - x_j| factors smooth, so the nested Gauss rules converge
    // spectrally.
    double run(int remaining, double upper, std::vector<double>& outer) const {
        const double a = -kBox, b = upper;
        if (!(b > a)) return 0.0;
        const double h = 0.5 * (b - a), mid = 0.5 * (b + a);
        double acc = 0;
        for (int i = 0; i < kNodes; ++i) {
            const double x = mid + h * u[i];
            double f = weight(x);
            for (double q : outer) {
                const double d = q - x;
                f *= gse ? (d * d) * (d * d) : d;
            }
            if (remaining == 1) {
                acc += h * w[i] * f;
            } else {
                outer.push_back(x);
                acc += h * w[i] * f * run(remaining - 1, x, outer);
                outer.pop_back();
            }
        }
        return acc;
    }
};

}  // namespace

double smalln_cdf_direct(const EnsembleSpec& spec, double t) {
    const bool gse = spec.ensemble == Ensemble::GSE;
    if (spec.N > 4 || spec.N < 1 || (gse ? spec.N % 2 == 0 : spec.N % 2 == 1))
        throw std::invalid_argument("smalln_cdf_direct: N must be 2/4 (GOE) or 1/3 (GSE)");
    if (t <= -kBox) return 0.0;

    Level lv;
    lv.gse = gse;
    gauss_legendre(kNodes, lv.u, lv.w);
    std::vector<double> outer;
    outer.reserve(spec.N);
    const double num = lv.run(spec.N, std::min(t, kBox), outer);
    const double den = lv.run(spec.N, kBox, outer);
    return num / den;
}

}  // namespace edgekernel
