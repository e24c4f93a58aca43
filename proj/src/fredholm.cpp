#include "edgekernel/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edgekernel/finite_kernels.hpp"
#include "edgekernel/limit_kernels.hpp"
#include "edgekernel/parallel.hpp"
#include "edgekernel/quadrature.hpp"
#include "edgekernel/truncation.hpp"

namespace edgekernel {

namespace {

void check_cfg(const DetConfig& cfg) {
    if (cfg.m < 8 || cfg.m > 512)
        throw std::invalid_argument("DetConfig: m out of range [8, 512]");
    if (!(cfg.tol > 0)) throw std::invalid_argument("DetConfig: tol must be positive");
}

// Kernel-magnitude threshold feeding choose_truncation; far below any
// determinant tolerance so that T -> T+4 moves the result at noise level.
constexpr double kTruncTol = 1e-16;

double resolve_T(double s, const DetConfig& cfg) {
    if (cfg.T != DetConfig::kAutoT) {
        if (!(cfg.T > s)) throw std::invalid_argument("DetConfig: T must exceed s");
        return cfg.T;
    }
    return choose_truncation(s, kTruncTol);
}

// sqrt(rho(x_i)) for the block similarity.
std::vector<double> rho_root(RhoMode mode, double s, const std::vector<double>& nodes) {
    std::vector<double> r(nodes.size(), 1.0);
    if (mode == RhoMode::EXP)
        for (size_t i = 0; i < nodes.size(); ++i) r[i] = std::exp(0.5 * (nodes[i] - s));
    else if (mode == RhoMode::POLY)
        for (size_t i = 0; i < nodes.size(); ++i) r[i] = 1.0 + nodes[i] - s;
    return r;
}

SquareMatrix build_matrix(const MatrixKernelHandle& kernel, double s, double T, int m,
                          RhoMode rho_mode) {
    const QuadratureGrid grid = map_to_interval(m, s, T);
    const bool goe = kernel.ensemble == Ensemble::GOE;
    const double pref = goe ? 1.0 : 0.5;

    std::vector<double> S, SD, IS;
    if (kernel.finite_N > 0) {
        ScaledBlocks b = scaled_blocks(make_spec(kernel.ensemble, kernel.finite_N), grid.nodes);
        S = std::move(b.S);
        SD = std::move(b.SD);
        IS = std::move(b.IS);
    } else {
        LimitBlocks b = limit_blocks(goe ? LimitKernelKind::GOE : LimitKernelKind::GSE, grid.nodes);
        S = std::move(b.S);
        SD = std::move(b.SD);
        IS = std::move(b.IS);
    }

    std::vector<double> E;
    if (goe) E = eps_interpolant_matrix(grid);

    std::vector<double> sw(m);
    for (int i = 0; i < m; ++i) sw[i] = std::sqrt(grid.weights[i]);
    const std::vector<double> rr = rho_root(rho_mode, s, grid.nodes);

    SquareMatrix M(2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const size_t ij = static_cast<size_t>(i) * m + j;
            const size_t ji = static_cast<size_t>(j) * m + i;
            const double w = sw[i] * sw[j];
            double a21 = pref * IS[ij] * w;
            if (goe) a21 -= sw[i] / sw[j] * E[ij];
            M.at(i, j) = pref * S[ij] * w * (rr[i] / rr[j]);
            M.at(i, m + j) = pref * SD[ij] * w * (rr[i] * rr[j]);
            M.at(m + i, j) = a21 / (rr[i] * rr[j]);
            M.at(m + i, m + j) = pref * S[ji] * w * (rr[j] / rr[i]);
        }
    return M;
}

double det_of(const SquareMatrix& M) {
    SquareMatrix A = identity(M.order);
    for (size_t k = 0; k < M.entries.size(); ++k) A.entries[k] -= M.entries[k];
    return det_lu(A);
}

// Shared m-doubling driver: eval(m) -> det.
GapResult doubling_loop(double s, double T, const DetConfig& cfg,
                        const std::function<double(int)>& eval) {
    int m = std::max(cfg.m, 16);
    double d_prev = eval(m / 2);
    double d_cur = eval(m);
    double err = std::fabs(d_cur - d_prev);
    while (err > cfg.tol && m < 512) {
        m = std::min(2 * m, 512);
        d_prev = d_cur;
        d_cur = eval(m);
        err = std::fabs(d_cur - d_prev);
    }
    GapResult r;
    r.s = s;
    r.det_value = d_cur;
    r.err_est = err;
    r.m_used = m;
    r.T_used = T;
    r.converged = err <= cfg.tol;
    if (r.det_value < -1e-9)
        throw std::runtime_error("gap determinant below -1e-9: discretization failure");
    r.sqrt_value = std::sqrt(std::max(r.det_value, 0.0));
    return r;
}

}  // namespace

GapResult gap_scalar(const ScalarKernel& kernel, double s, const DetConfig& cfg) {
    check_cfg(cfg);
    const double T = resolve_T(s, cfg);
    auto eval = [&](int m) {
        const QuadratureGrid grid = map_to_interval(m, s, T);
        SquareMatrix A = identity(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                A.at(i, j) -= std::sqrt(grid.weights[i] * grid.weights[j]) *
                              kernel(grid.nodes[i], grid.nodes[j]);
        return det_lu(A);
    };
    GapResult r = doubling_loop(s, T, cfg, eval);
    r.sqrt_value = r.det_value;  // scalar case: no square-root semantics
    return r;
}

GapResult gap_matrix(const MatrixKernelHandle& kernel, double s, const DetConfig& cfg) {
    check_cfg(cfg);
    if (kernel.finite_N > 0) make_spec(kernel.ensemble, kernel.finite_N);  // parity check
    const double T = resolve_T(s, cfg);
    auto eval = [&](int m) { return det_of(build_matrix(kernel, s, T, m, cfg.rho_mode)); };
    return doubling_loop(s, T, cfg, eval);
}

GapResult gap_finite_t(const EnsembleSpec& spec, double t, const DetConfig& cfg) {
    const EnsembleSpec checked = make_spec(spec.ensemble, spec.N);
    const ScalingMap sm = make_scaling(kernel_order(checked));
    GapResult r = gap_matrix(finite_kernel(checked), sm.inverse(t), cfg);
    r.s = t;
    return r;
}

SquareMatrix discretize_matrix(const MatrixKernelHandle& kernel, double s, int m,
                               const DetConfig& cfg) {
    if (m < 1 || m > 512) throw std::invalid_argument("discretize_matrix: m out of range");
    return build_matrix(kernel, s, resolve_T(s, cfg), m, cfg.rho_mode);
}

DistributionTable cdf_table(TableKind kind, const std::vector<double>& grid,
                            const DetConfig& cfg, const EnsembleSpec* spec) {
    check_cfg(cfg);
    if (kind == TableKind::FINITE && spec == nullptr)
        throw std::invalid_argument("cdf_table: FINITE needs an EnsembleSpec");
    DistributionTable table;
    table.kind = kind;
    table.rows.assign(grid.size(), GapResult{});
    table.row_ok.assign(grid.size(), true);
    parallel_for(grid.size(), [&](size_t i) {
        const double v = grid[i];
        try {
            switch (kind) {
                case TableKind::AIRY_F2:
                    table.rows[i] =
                        gap_scalar([](double x, double y) { return k_airy(x, y); }, v, cfg);
                    break;
                case TableKind::GOE_LIMIT:
                    table.rows[i] = gap_matrix(limit_kernel(Ensemble::GOE), v, cfg);
                    break;
                case TableKind::GSE_LIMIT:
                    table.rows[i] = gap_matrix(limit_kernel(Ensemble::GSE), v, cfg);
                    break;
                case TableKind::FINITE:
                    table.rows[i] = gap_finite_t(*spec, v, cfg);
                    break;
            }
            if (!table.rows[i].converged) table.row_ok[i] = false;
        } catch (const std::exception&) {
            table.rows[i] = GapResult{};
            table.rows[i].s = v;
            table.rows[i].converged = false;
            table.row_ok[i] = false;
        }
    });
    return table;
}

}  // namespace edgekernel
