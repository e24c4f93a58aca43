#include "edgekernel/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace edgekernel {

namespace {

constexpr double kPi = 3.14159265358979323846;

void compute_gl(int m, std::vector<double>& x, std::vector<double>& w) {
    x.assign(m, 0.0);
    w.assign(m, 0.0);
    // roots come in +/- pairs; solve for the non-negative half
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi-style initial guess, then Newton on P_m
        double t = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double p0, p1;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = t;
            for (int k = 1; k < m; ++k) {
                const double p2 = ((2.0 * k + 1.0) * t * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            // P_m'(t) = m (t P_m - P_{m-1}) / (t^2 - 1)
            const double dp = m * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::fabs(dt) < 1e-15) {
                // one extra pass after convergence for full precision
                if (std::fabs(dt) < 1e-17) break;
            }
        }
        p0 = 1.0;
        p1 = t;
        for (int k = 1; k < m; ++k) {
            const double p2 = ((2.0 * k + 1.0) * t * p1 - k * p0) / (k + 1.0);
            p0 = p1;
            p1 = p2;
        }
        const double dp = m * (t * p1 - p0) / (t * t - 1.0);
        const double weight = 2.0 / ((1.0 - t * t) * dp * dp);
        x[m - 1 - i] = t;
        x[i] = -t;
        w[i] = weight;
        w[m - 1 - i] = weight;
    }
    if (m % 2 == 1) x[m / 2] = 0.0;  // exact middle root
    if (m == 1) {
        x[0] = 0.0;
        w[0] = 2.0;
    }
}

struct RuleCache {
    std::mutex mu;
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> rules;
};
RuleCache& cache() {
    static RuleCache c;
    return c;
}

}  // namespace

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
    if (m < 1 || m > 512) throw std::invalid_argument("gauss_legendre: m out of range [1, 512]");
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.rules.find(m);
    if (it == c.rules.end()) {
        std::vector<double> x, w;
        compute_gl(m, x, w);
        it = c.rules.emplace(m, std::make_pair(std::move(x), std::move(w))).first;
    }
    nodes = it->second.first;
    weights = it->second.second;
}

QuadratureGrid map_to_interval(int m, double s, double T) {
    if (!(T > s)) throw std::invalid_argument("map_to_interval: need T > s");
    QuadratureGrid g;
    g.s = s;
    g.T = T;
    g.m = m;
    std::vector<double> x, w;
    gauss_legendre(m, x, w);
    g.nodes.resize(m);
    g.weights.resize(m);
    const double h = 0.5 * (T - s), mid = 0.5 * (T + s);
    for (int i = 0; i < m; ++i) {
        g.nodes[i] = mid + h * x[i];
        g.weights[i] = h * w[i];
    }
    return g;
}

PanelRule composite_panels(double a, double width, int pts_per_panel, int max_panels,
                           const std::function<bool(double)>& significant) {
    PanelRule r;
    std::vector<double> x, w;
    gauss_legendre(pts_per_panel, x, w);
    for (int p = 0; p < max_panels; ++p) {
        const double lo = a + p * width;
        if (p > 0 && !significant(lo)) break;
        const double h = 0.5 * width, mid = lo + h;
        for (int i = 0; i < pts_per_panel; ++i) {
            r.nodes.push_back(mid + h * x[i]);
            r.weights.push_back(h * w[i]);
        }
    }
    return r;
}

std::vector<double> eps_interpolant_matrix(const QuadratureGrid& grid) {
    const int m = grid.m;
    const double s = grid.s, T = grid.T, half = 0.5 * (T - s);
    // Legendre values P_0..P_m at the mapped nodes u_j in (-1, 1); P_m is
    // needed for the antiderivative of P_{m-1}.
    std::vector<double> u(m);
    for (int j = 0; j < m; ++j) u[j] = (grid.nodes[j] - 0.5 * (T + s)) / half;
    std::vector<double> P(static_cast<size_t>(m + 1) * m);
    for (int j = 0; j < m; ++j) {
        P[j] = 1.0;
        if (m > 1) P[static_cast<size_t>(m) + j] = u[j];
    }
    for (int k = 1; k < m; ++k)
        for (int j = 0; j < m; ++j)
            P[static_cast<size_t>(k + 1) * m + j] =
                ((2 * k + 1) * u[j] * P[static_cast<size_t>(k) * m + j] -
                 k * P[static_cast<size_t>(k - 1) * m + j]) /
                (k + 1);
    // Antiderivatives Q_k(u) = int_{-1}^u P_k: Q_0 = u+1,
    // Q_k = (P_{k+1} - P_{k-1})/(2k+1).
    std::vector<double> Q(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) Q[i] = u[i] + 1.0;
    for (int k = 1; k < m; ++k)
        for (int i = 0; i < m; ++i)
            Q[static_cast<size_t>(k) * m + i] = (P[static_cast<size_t>(k + 1) * m + i] -
                                                 P[static_cast<size_t>(k - 1) * m + i]) /
                                                (2 * k + 1);
    // Expansion coefficients from the Gauss rule: c_k(f) = sum_j C[k][j] f_j.
    std::vector<double> C(static_cast<size_t>(m) * m);
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j)
            C[static_cast<size_t>(k) * m + j] =
                (2 * k + 1) * 0.5 * P[static_cast<size_t>(k) * m + j] * grid.weights[j] / half;
    // (eps f)(x_i) = half * (sum_k Q_k(u_i) c_k - c_0), the -c_0 being the
    // -(1/2) int f part (int_{-1}^1 P_k = 0 for k >= 1).
    std::vector<double> E(static_cast<size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double acc = -C[j];
            for (int k = 0; k < m; ++k)
                acc += Q[static_cast<size_t>(k) * m + i] * C[static_cast<size_t>(k) * m + j];
            E[static_cast<size_t>(i) * m + j] = half * acc;
        }
    return E;
}

}  // namespace edgekernel
