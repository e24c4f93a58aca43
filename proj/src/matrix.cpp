#include "edgekernel/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace edgekernel {

SquareMatrix identity(int n) {
    SquareMatrix M(n);
    for (int i = 0; i < n; ++i) M.at(i, i) = 1.0;
    return M;
}

double det_lu(const SquareMatrix& M) {
    const int n = M.order;
    if (n < 1 || n > 4096) throw std::invalid_argument("det_lu: order out of range");
    for (double v : M.entries)
        if (!std::isfinite(v)) throw std::invalid_argument("det_lu: non-finite entry");

    std::vector<double> a = M.entries;
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };

    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::fabs(at(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::fabs(at(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return 0.0;  // exactly singular
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(k, j));
            det = -det;
        }
        const double d = at(k, k);
        det *= d;
        const double inv = 1.0 / d;
        for (int i = k + 1; i < n; ++i) {
            const double f = at(i, k) * inv;
            if (f == 0.0) continue;
            at(i, k) = 0.0;
            for (int j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
        }
    }
    return det;
}

}  // namespace edgekernel
