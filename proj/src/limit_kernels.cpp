#include "edgekernel/limit_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "edgekernel/airy.hpp"
#include "edgekernel/quadrature.hpp"

namespace edgekernel {

namespace {

constexpr double kDiagBand = 1e-4;

// K(x,x) = Ai'(x)^2 - x Ai(x)^2.
inline double k_airy_diag(double a, double ap, double x) { return ap * ap - x * a * a; }

// Curvature of the kernel across the diagonal at fixed midpoint:
// K(u+d, u-d) = K(u,u) + d^2 G(u) + O(d^4) with
// G = (Ai Ai' + 2u Ai'^2 - 2u^2 Ai^2)/3 (antiderivative of v Ai^2 - Ai'^2).
inline double diag_curvature(double a, double ap, double u) {
    return (a * ap + 2.0 * u * ap * ap - 2.0 * u * u * a * a) / 3.0;
}

inline double quotient(double ax, double apx, double ay, double apy, double x, double y) {
    return (ax * apy - apx * ay) / (x - y);
}

double near_diag(double x, double y) {
    const double u = 0.5 * (x + y), d = 0.5 * (x - y);
    const double a = airy_ai(u), ap = airy_ai_prime(u);
    return k_airy_diag(a, ap, u) + d * d * diag_curvature(a, ap, u);
}

// z-panels shared by the semi-infinite integrals: width 4, 64 points,
// extended while Ai at the slowest-decaying shift is still significant.
PanelRule z_panels(double xmin) {
    return composite_panels(0.0, 4.0, 64, 12,
                            [xmin](double a) { return std::fabs(airy_ai(xmin + a)) > 1e-19; });
}

}  // namespace

double k_airy(double x, double y) {
    if (std::fabs(x - y) <= kDiagBand) return near_diag(x, y);
    return quotient(airy_ai(x), airy_ai_prime(x), airy_ai(y), airy_ai_prime(y), x, y);
}

double k_airy_dy(double x, double y) {
    const PanelRule r = z_panels(std::min(x, y));
    double acc = 0;
    for (size_t k = 0; k < r.nodes.size(); ++k)
        acc += r.weights[k] * airy_ai(x + r.nodes[k]) * airy_ai_prime(y + r.nodes[k]);
    return acc;
}

double k_airy_tailx(double x, double y) {
    const PanelRule r = z_panels(y);  // the Ai factor controls the decay
    double acc = 0;
    for (size_t k = 0; k < r.nodes.size(); ++k)
        acc += r.weights[k] * airy_ai(y + r.nodes[k]) * airy_tail(x + r.nodes[k]);
    return acc;
}

MatrixKernelSample k_gse(double x, double y) {
    const double ax = airy_ai(x), ay = airy_ai(y);
    const double tx = airy_tail(x), ty = airy_tail(y);
    MatrixKernelSample k;
    k.e11 = 0.5 * (k_airy(x, y) - 0.5 * ax * ty);
    k.e12 = 0.5 * (-k_airy_dy(x, y) - 0.5 * ax * ay);
    k.e21 = 0.5 * (-k_airy_tailx(x, y) + 0.5 * tx * ty);
    k.e22 = 0.5 * (k_airy(y, x) - 0.5 * ay * tx);
    return k;
}

MatrixKernelSample k_goe(double x, double y) {
    const double ax = airy_ai(x), ay = airy_ai(y);
    const double tx = airy_tail(x), ty = airy_tail(y);
    MatrixKernelSample k;
    k.e11 = k_airy(x, y) + 0.5 * ax * (1.0 - ty);
    k.e12 = -k_airy_dy(x, y) - 0.5 * ax * ay;
    k.e21 = -k_airy_tailx(x, y) + 0.5 * tx * ty + 0.5 * (ty - tx) - eps_sign(x - y);
    k.e22 = k_airy(y, x) + 0.5 * ay * (1.0 - tx);
    return k;
}

LimitBlocks limit_blocks(LimitKernelKind kind, const std::vector<double>& nodes) {
    const int m = static_cast<int>(nodes.size());
    LimitBlocks b;
    b.m = m;

    std::vector<double> A(m), Ap(m), Tl(m);
    for (int i = 0; i < m; ++i) {
        A[i] = airy_ai(nodes[i]);
        Ap[i] = airy_ai_prime(nodes[i]);
        Tl[i] = airy_tail(nodes[i]);
    }

    // Airy kernel on the grid, quotient form with the diagonal branch.
    std::vector<double> KA(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const size_t idx = static_cast<size_t>(i) * m + j;
            if (std::fabs(nodes[i] - nodes[j]) <= kDiagBand)
                KA[idx] = near_diag(nodes[i], nodes[j]);
            else
                KA[idx] = quotient(A[i], Ap[i], A[j], Ap[j], nodes[i], nodes[j]);
        }

    if (kind == LimitKernelKind::AIRY_SCALAR) {
        b.S = std::move(KA);
        return b;
    }

    // Shifted-argument tables over the z-panels for the two integral entries.
    const double xmin = *std::min_element(nodes.begin(), nodes.end());
    const PanelRule r = z_panels(xmin);
    const int nz = static_cast<int>(r.nodes.size());
    std::vector<double> PA(static_cast<size_t>(m) * nz), PAp(PA.size()), PT(PA.size());
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < nz; ++k) {
            const double sq = std::sqrt(r.weights[k]);
            const size_t idx = static_cast<size_t>(i) * nz + k;
            PA[idx] = sq * airy_ai(nodes[i] + r.nodes[k]);
            PAp[idx] = sq * airy_ai_prime(nodes[i] + r.nodes[k]);
            PT[idx] = sq * airy_tail(nodes[i] + r.nodes[k]);
        }

    const bool goe = kind == LimitKernelKind::GOE;
    b.S.assign(static_cast<size_t>(m) * m, 0.0);
    b.SD.assign(static_cast<size_t>(m) * m, 0.0);
    b.IS.assign(static_cast<size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const size_t idx = static_cast<size_t>(i) * m + j;
            double dyKA = 0, KT = 0;
            const size_t ri = static_cast<size_t>(i) * nz, rj = static_cast<size_t>(j) * nz;
            for (int k = 0; k < nz; ++k) {
                dyKA += PA[ri + k] * PAp[rj + k];
                KT += PT[ri + k] * PA[rj + k];
            }
            b.S[idx] = KA[idx] + (goe ? 0.5 * A[i] * (1.0 - Tl[j]) : -0.5 * A[i] * Tl[j]);
            b.SD[idx] = -dyKA - 0.5 * A[i] * A[j];
            b.IS[idx] = -KT + 0.5 * Tl[i] * Tl[j] + (goe ? 0.5 * (Tl[j] - Tl[i]) : 0.0);
        }
    return b;
}

}  // namespace edgekernel
