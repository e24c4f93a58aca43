#include "edgekernel/finite_kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "edgekernel/hermite.hpp"
#include "edgekernel/quadrature.hpp"

namespace edgekernel {

EnsembleSpec make_spec(Ensemble ensemble, int N) {
    if (N < 1) throw std::invalid_argument("make_spec: N must be positive");
    if (ensemble == Ensemble::GOE && N % 2 != 0)
        throw std::invalid_argument("make_spec: GOE requires even N (weight e^{-x^2/2})");
    if (ensemble == Ensemble::GSE && N % 2 != 1)
        throw std::invalid_argument("make_spec: GSE requires odd N (weight e^{-x^2})");
    EnsembleSpec s;
    s.ensemble = ensemble;
    s.N = N;
    if (kernel_order(s) >= kHermiteMaxOrder)
        throw std::invalid_argument("make_spec: N too large for the wave-function recurrences");
    return s;
}

int kernel_order(const EnsembleSpec& spec) {
    return spec.ensemble == Ensemble::GSE ? 2 * spec.N + 1 : spec.N;
}

ScalingMap make_scaling(int order) {
    if (order < 1) throw std::invalid_argument("make_scaling: order must be positive");
    ScalingMap sm;
    sm.N = order;
    sm.tau_shift = std::sqrt(2.0 * order);
    sm.tau_scale = std::pow(2.0, -0.5) * std::pow(static_cast<double>(order), -1.0 / 6.0);
    sm.tau_prime = sm.tau_scale;
    return sm;
}

namespace {

void check_order(int M, int maxn) {
    if (M < 1 || M > maxn)
        throw std::invalid_argument("kernel order out of range [1, " + std::to_string(maxn) + "]");
}

// phi_n'(y) from the ladder relation, given phi_{n-1}, phi_n at y.
inline double phi_deriv_from(int n, double y, double phn, double phnm1) {
    return -y * phn + (n > 0 ? std::sqrt(2.0 * n) * phnm1 : 0.0);
}

struct PointData {
    std::vector<double> phi;   // phi_0..phi_M
    std::vector<double> tail;  // I_0..I_M
    std::vector<double> eps;   // c_n - I_n
};

PointData point_data(int M, double x) {
    PointData d;
    hermite_phi_tail_arrays(M, x, d.phi, d.tail);
    d.eps.resize(M + 1);
    for (int n = 0; n <= M; ++n) d.eps[n] = hermite_c(n) - d.tail[n];
    return d;
}

}  // namespace

double sn0_sum(int N, double x, double y) {
    check_order(N, 400);
    std::vector<double> px, tx, py, ty;
    hermite_phi_tail_arrays(N - 1, x, px, tx);
    hermite_phi_tail_arrays(N - 1, y, py, ty);
    double acc = 0;
    for (int n = 0; n < N; ++n) acc += px[n] * py[n];
    return acc;
}

double sn0_integral(int N, double x, double y) {
    check_order(N, 400);
    const double rt = std::sqrt(N / 2.0);
    auto significant = [&](double a) {
        const double g = std::fabs(hermite_phi(N, x + a)) * std::fabs(hermite_phi(N - 1, y + a)) +
                         std::fabs(hermite_phi(N - 1, x + a)) * std::fabs(hermite_phi(N, y + a));
        return g > 1e-18;
    };
    const PanelRule rule = composite_panels(0.0, 4.0, 64, 20, significant);
    double acc = 0;
    for (size_t k = 0; k < rule.nodes.size(); ++k) {
        const double z = rule.nodes[k];
        acc += rule.weights[k] * (hermite_phi(N, x + z) * hermite_phi(N - 1, y + z) +
                                  hermite_phi(N - 1, x + z) * hermite_phi(N, y + z));
    }
    return rt * acc;
}

double s_raw(int M, double x, double y) {
    check_order(M, kHermiteMaxOrder - 1);
    const PointData dx = point_data(M, x), dy = point_data(M, y);
    double acc = 0;
    for (int n = 0; n < M; ++n) acc += dx.phi[n] * dy.phi[n];
    return acc + std::sqrt(M / 2.0) * dx.phi[M - 1] * dy.eps[M];
}

double is_raw(int M, double x, double y) {
    check_order(M, kHermiteMaxOrder - 1);
    const PointData dx = point_data(M, x), dy = point_data(M, y);
    double acc = 0;
    for (int n = 0; n < M; ++n) acc += dx.eps[n] * dy.phi[n];
    return acc + std::sqrt(M / 2.0) * dx.eps[M - 1] * dy.eps[M];
}

double snd_raw(int M, double x, double y) {
    check_order(M, kHermiteMaxOrder - 1);
    const PointData dx = point_data(M, x), dy = point_data(M, y);
    double acc = 0;
    for (int n = 0; n < M; ++n)
        acc += dx.phi[n] * phi_deriv_from(n, y, dy.phi[n], n > 0 ? dy.phi[n - 1] : 0.0);
    return -acc - std::sqrt(M / 2.0) * dx.phi[M - 1] * dy.phi[M];
}

double s_n(const EnsembleSpec& spec, double x, double y) { return s_raw(kernel_order(spec), x, y); }
double is_n(const EnsembleSpec& spec, double x, double y) { return is_raw(kernel_order(spec), x, y); }
double snd(const EnsembleSpec& spec, double x, double y) { return snd_raw(kernel_order(spec), x, y); }

MatrixKernelSample kn_matrix(const EnsembleSpec& spec, double x, double y) {
    const int M = kernel_order(spec);
    MatrixKernelSample k;
    k.e11 = s_raw(M, x, y);
    k.e12 = snd_raw(M, x, y);
    k.e21 = is_raw(M, x, y);
    k.e22 = s_raw(M, y, x);
    if (spec.ensemble == Ensemble::GSE) {
        k.e11 *= 0.5;
        k.e12 *= 0.5;
        k.e21 *= 0.5;
        k.e22 *= 0.5;
    } else {
        k.e21 -= eps_sign(x - y);
    }
    return k;
}

MatrixKernelSample scaled_kernel(const EnsembleSpec& spec, double x, double y) {
    const int M = kernel_order(spec);
    const ScalingMap sm = make_scaling(M);
    const double tx = sm(x), ty = sm(y), tp = sm.tau_prime;
    MatrixKernelSample k;
    k.e11 = tp * s_raw(M, tx, ty);
    k.e12 = tp * tp * snd_raw(M, tx, ty);
    k.e21 = is_raw(M, tx, ty);
    k.e22 = tp * s_raw(M, ty, tx);
    if (spec.ensemble == Ensemble::GSE) {
        k.e11 *= 0.5;
        k.e12 *= 0.5;
        k.e21 *= 0.5;
        k.e22 *= 0.5;
    } else {
        k.e21 -= eps_sign(x - y);
    }
    return k;
}

ScaledBlocks scaled_blocks(const EnsembleSpec& spec, const std::vector<double>& nodes) {
    const int M = kernel_order(spec);
    const ScalingMap sm = make_scaling(M);
    const double tp = sm.tau_prime;
    const double rt = std::sqrt(M / 2.0);
    const int m = static_cast<int>(nodes.size());

    // Per-node wave-function data at the mapped points, plus derivative rows.
    std::vector<PointData> pd;
    pd.reserve(m);
    std::vector<std::vector<double>> dphi(m, std::vector<double>(M + 1));
    for (int i = 0; i < m; ++i) {
        const double t = sm(nodes[i]);
        pd.push_back(point_data(M, t));
        for (int n = 0; n <= M; ++n)
            dphi[i][n] = phi_deriv_from(n, t, pd[i].phi[n], n > 0 ? pd[i].phi[n - 1] : 0.0);
    }

    ScaledBlocks b;
    b.m = m;
    b.S.assign(static_cast<size_t>(m) * m, 0.0);
    b.SD.assign(static_cast<size_t>(m) * m, 0.0);
    b.IS.assign(static_cast<size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) {
        const PointData& di = pd[i];
        for (int j = 0; j < m; ++j) {
            const PointData& dj = pd[j];
            double s = 0, sd = 0, is = 0;
            for (int n = 0; n < M; ++n) {
                s += di.phi[n] * dj.phi[n];
                sd += di.phi[n] * dphi[j][n];
                is += di.eps[n] * dj.phi[n];
            }
            s += rt * di.phi[M - 1] * dj.eps[M];
            sd = -sd - rt * di.phi[M - 1] * dj.phi[M];
            is += rt * di.eps[M - 1] * dj.eps[M];
            const size_t idx = static_cast<size_t>(i) * m + j;
            b.S[idx] = tp * s;
            b.SD[idx] = tp * tp * sd;
            b.IS[idx] = is;
        }
    }
    return b;
}

}  // namespace edgekernel
