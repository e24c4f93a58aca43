#include "edgekernel/mc.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "edgekernel/finite_kernels.hpp"
#include "edgekernel/parallel.hpp"

namespace edgekernel {

namespace {

constexpr int kShards = 64;  // fixed shard count keeps results thread-count independent

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct Rng {
    std::mt19937_64 eng;
    bool has_spare = false;
    double spare = 0;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double uniform() {  // (0, 1)
        return (static_cast<double>(eng() >> 11) + 0.5) * 0x1p-53;
    }

    double normal() {  // polar method; portable across standard libraries
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        double u, v, r2;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            r2 = u * u + v * v;
        } while (r2 >= 1.0 || r2 == 0.0);
        const double f = std::sqrt(-2.0 * std::log(r2) / r2);
        spare = v * f;
        has_spare = true;
        return u * f;
    }

    double gamma(double alpha) {  // Marsaglia-Tsang
        if (alpha < 1.0) {
            return gamma(alpha + 1.0) * std::pow(uniform(), 1.0 / alpha);
        }
        const double d = alpha - 1.0 / 3.0, c = 1.0 / (3.0 * std::sqrt(d));
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double chi(double k) { return std::sqrt(2.0 * gamma(0.5 * k)); }
};

// Eigenvalue count below sigma via the Sturm/LDL^T pivot signs.
int count_below(const std::vector<double>& d, const std::vector<double>& e, double sigma) {
    const int n = static_cast<int>(d.size());
    int cnt = 0;
    double t = d[0] - sigma;
    if (t < 0) ++cnt;
    for (int i = 1; i < n; ++i) {
        double denom = t;
        if (std::fabs(denom) < 1e-300) denom = denom < 0 ? -1e-300 : 1e-300;
        t = d[i] - sigma - e[i - 1] * e[i - 1] / denom;
        if (t < 0) ++cnt;
    }
    return cnt;
}

double lambda_max(const std::vector<double>& d, const std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    double lo = d[0], hi = d[0];
    for (int i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::fabs(e[i - 1]) : 0.0) +
                         (i + 1 < n ? std::fabs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    while (hi - lo > 1e-10 * std::max(1.0, std::fabs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(d, e, mid) >= n)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> mc_lmax_samples(const McConfig& cfg) {
    const EnsembleSpec spec = make_spec(cfg.ensemble, cfg.N);
    if (cfg.N > 400) throw std::invalid_argument("mc: N must be <= 400");
    if (cfg.samples < 1 || cfg.samples > 1000000)
        throw std::invalid_argument("mc: samples must be in [1, 1e6]");
    const double beta = spec.ensemble == Ensemble::GSE ? 4.0 : 1.0;
    // The tridiagonal model's density is |Delta(mu)|^beta e^{-sum mu^2/2};
    // the GSE weight convention e^{-x^2} needs x = mu/sqrt(2).
    const double unit = spec.ensemble == Ensemble::GSE ? 1.0 / std::sqrt(2.0) : 1.0;
    const int n = cfg.N;

    std::vector<long> offset(kShards + 1, 0);
    for (int k = 0; k < kShards; ++k)
        offset[k + 1] = offset[k] + cfg.samples / kShards + (k < cfg.samples % kShards ? 1 : 0);

    std::vector<double> out(cfg.samples);
    parallel_for(kShards, [&](size_t k) {
        Rng rng(mix64(cfg.seed + 0x9E3779B97F4A7C15ULL * (k + 1)));
        std::vector<double> d(n), e(n > 1 ? n - 1 : 0);
        for (long i = offset[k]; i < offset[k + 1]; ++i) {
            for (int j = 0; j < n; ++j) d[j] = rng.normal();
            for (int j = 1; j < n; ++j) e[j - 1] = rng.chi(beta * (n - j)) / std::sqrt(2.0);
            out[i] = unit * lambda_max(d, e);
        }
    });
    return out;
}

McResult mc_edge_cdf(const McConfig& cfg, const std::vector<double>& s_eval) {
    const std::vector<double> lmax = mc_lmax_samples(cfg);
    const EnsembleSpec spec = make_spec(cfg.ensemble, cfg.N);
    const ScalingMap sm = make_scaling(kernel_order(spec));

    McResult r;
    r.s_eval = s_eval;
    r.samples = cfg.samples;
    r.cdf.resize(s_eval.size());
    r.se.resize(s_eval.size());
    const double n = static_cast<double>(cfg.samples);
    for (size_t j = 0; j < s_eval.size(); ++j) {
        long cnt = 0;
        for (double x : lmax)
            if (sm.inverse(x) <= s_eval[j]) ++cnt;
        const double p = cnt / n;
        r.cdf[j] = p;
        r.se[j] = std::sqrt(p * (1.0 - p) / n);
    }
    return r;
}

}  // namespace edgekernel
