#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "edgekernel/matrix.hpp"
#include "edgekernel/parallel.hpp"
#include "edgekernel/quadrature.hpp"
#include "edgekernel/truncation.hpp"

using namespace edgekernel;

namespace {

// small deterministic LCG for reproducible pseudo-random matrices
struct Lcg {
    std::uint64_t state = 0x2545F4914F6CDD1Dull;
    double next() {  // in [-1, 1]
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return 2.0 * double(state >> 11) / 9007199254740992.0 - 1.0;
    }
};

// cofactor expansion along the first row; fine as an oracle for tiny orders
double det_cofactor(const SquareMatrix& M) {
    const int n = M.order;
    if (n == 1) return M.at(0, 0);
    double acc = 0, sign = 1;
    for (int c = 0; c < n; ++c) {
        SquareMatrix minor(n - 1);
        for (int i = 1; i < n; ++i)
            for (int j = 0, jj = 0; j < n; ++j)
                if (j != c) minor.at(i - 1, jj++) = M.at(i, j);
        acc += sign * M.at(0, c) * det_cofactor(minor);
        sign = -sign;
    }
    return acc;
}

SquareMatrix random_matrix(int n, Lcg& rng) {
    SquareMatrix M(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M.at(i, j) = rng.next();
    return M;
}

double integrate(const QuadratureGrid& g, double (*f)(double)) {
    double acc = 0;
    for (int i = 0; i < g.m; ++i) acc += g.weights[i] * f(g.nodes[i]);
    return acc;
}

}  // namespace

TEST_CASE("gauss_legendre closed forms at tiny orders") {
    std::vector<double> x, w;
    gauss_legendre(1, x, w);
    CHECK(x[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(w[0] == doctest::Approx(2.0).epsilon(1e-15));

    gauss_legendre(2, x, w);
    CHECK(x[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(1.0).epsilon(1e-15));

    gauss_legendre(3, x, w);
    CHECK(x[0] == doctest::Approx(-std::sqrt(0.6)).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(x[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
    CHECK(w[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre polynomial exactness to degree 2m-1") {
    for (int m : {2, 8, 32}) {
        std::vector<double> x, w;
        gauss_legendre(m, x, w);
        // odd monomial: zero by node/weight symmetry
        double odd = 0;
        for (int i = 0; i < m; ++i) odd += w[i] * std::pow(x[i], 2 * m - 1);
        CHECK(std::fabs(odd) < 1e-14);
        // highest even monomial inside the exactness degree
        double even = 0;
        for (int i = 0; i < m; ++i) even += w[i] * std::pow(x[i], 2 * m - 2);
        CHECK(even == doctest::Approx(2.0 / (2 * m - 1)).epsilon(1e-13));
    }
}

TEST_CASE("gauss_legendre structure: ordering, symmetry, weight sum") {
    std::vector<double> x, w;
    gauss_legendre(64, x, w);
    double sum = 0;
    for (int i = 0; i < 64; ++i) {
        sum += w[i];
        CHECK(w[i] > 0.0);
        if (i) CHECK(x[i] > x[i - 1]);
        CHECK(x[i] == doctest::Approx(-x[63 - i]).scale(1.0).epsilon(1e-15));
    }
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gauss_legendre rejects out-of-range orders") {
    std::vector<double> x, w;
    CHECK_THROWS_AS(gauss_legendre(0, x, w), std::invalid_argument);
    CHECK_THROWS_AS(gauss_legendre(513, x, w), std::invalid_argument);
}

TEST_CASE("map_to_interval: affine image and grid invariants") {
    const QuadratureGrid one = map_to_interval(1, 0.0, 2.0);
    CHECK(one.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    const QuadratureGrid g = map_to_interval(32, -3.0, 17.0);
    double sum = 0;
    for (int i = 0; i < g.m; ++i) {
        sum += g.weights[i];
        CHECK(g.weights[i] > 0.0);
        CHECK(g.nodes[i] > g.s);
        CHECK(g.nodes[i] < g.T);
        if (i) CHECK(g.nodes[i] > g.nodes[i - 1]);
    }
    CHECK(sum == doctest::Approx(g.T - g.s).epsilon(1e-12));

    const QuadratureGrid lin = map_to_interval(2, 0.0, 2.0);
    CHECK(integrate(lin, [](double x) { return x; }) == doctest::Approx(2.0).epsilon(1e-14));

    CHECK_THROWS_AS(map_to_interval(8, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("grid refinement: doubling m is inert once m >= 32") {
    auto gauss_int = [](int m) {
        const QuadratureGrid g = map_to_interval(m, 0.0, 10.0);
        double acc = 0;
        for (int i = 0; i < g.m; ++i) acc += g.weights[i] * std::exp(-g.nodes[i] * g.nodes[i]);
        return acc;
    };
    CHECK(std::fabs(gauss_int(64) - gauss_int(32)) < 1e-14);
    CHECK(gauss_int(64) == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-14));
}

TEST_CASE("composite_panels covers a semi-infinite decaying integral") {
    const PanelRule r = composite_panels(0.0, 4.0, 64, 20,
                                         [](double a) { return std::exp(-a) > 1e-18; });
    double acc = 0;
    for (size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * std::exp(-r.nodes[i]);
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("det_lu closed forms") {
    CHECK(det_lu(identity(5)) == doctest::Approx(1.0).epsilon(1e-15));

    SquareMatrix M(2);
    M.at(0, 0) = 1;
    M.at(0, 1) = 2;
    M.at(1, 0) = 3;
    M.at(1, 1) = 4;
    CHECK(det_lu(M) == doctest::Approx(-2.0).epsilon(1e-15));

    // exactly singular: repeated row
    SquareMatrix S(3);
    for (int j = 0; j < 3; ++j) {
        S.at(0, j) = j + 1.0;
        S.at(1, j) = j + 1.0;
        S.at(2, j) = j * j + 0.5;
    }
    CHECK(det_lu(S) == 0.0);

    SquareMatrix bad(2);
    bad.at(0, 0) = std::nan("");
    CHECK_THROWS_AS(det_lu(bad), std::invalid_argument);
}

TEST_CASE("det_lu matches the cofactor oracle on random matrices") {
    Lcg rng;
    for (int trial = 0; trial < 6; ++trial) {
        const SquareMatrix M = random_matrix(4, rng);
        const double ref = det_cofactor(M);
        CHECK(det_lu(M) == doctest::Approx(ref).epsilon(1e-12));
    }
    for (int trial = 0; trial < 3; ++trial) {
        const SquareMatrix M = random_matrix(5, rng);
        CHECK(det_lu(M) == doctest::Approx(det_cofactor(M)).epsilon(1e-11));
    }
}

TEST_CASE("det_lu multiplicativity on random 6x6 pairs") {
    Lcg rng;
    for (int trial = 0; trial < 4; ++trial) {
        const SquareMatrix A = random_matrix(6, rng);
        const SquareMatrix B = random_matrix(6, rng);
        SquareMatrix AB(6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                double acc = 0;
                for (int k = 0; k < 6; ++k) acc += A.at(i, k) * B.at(k, j);
                AB.at(i, j) = acc;
            }
        CHECK(det_lu(AB) == doctest::Approx(det_lu(A) * det_lu(B)).epsilon(1e-9));
    }
}

TEST_CASE("choose_truncation: anchor value, clamps, monotonicity") {
    CHECK(choose_truncation(0.0, 1e-16) == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(choose_truncation(0.0, 1e-16) <= 16.0 + 1e-12);

    const double Tm10 = choose_truncation(-10.0, 1e-16);
    CHECK(Tm10 >= 10.0);
    CHECK(Tm10 > 0.0);

    // clamp region: a huge tolerance still keeps T >= max(s+8, 10)
    CHECK(choose_truncation(5.0, 1e-1) >= 13.0);
    CHECK(choose_truncation(-30.0, 1e-1) >= 10.0);

    // tighter tolerance never shrinks T
    for (double s : {-8.0, -2.0, 0.0, 3.0})
        CHECK(choose_truncation(s, 1e-20) >= choose_truncation(s, 1e-16));
}

TEST_CASE("eps_interpolant_matrix applies the smoothing operator exactly on polynomials") {
    const double s = -3.0, T = 5.0;
    const QuadratureGrid g = map_to_interval(32, s, T);
    const std::vector<double> E = eps_interpolant_matrix(g);
    const int m = g.m;

    // (eps f)(x) = (1/2)[int_s^x f - int_x^T f], closed forms for 1, y, y^2
    for (int i = 0; i < m; ++i) {
        const double x = g.nodes[i];
        double r0 = 0, r1 = 0, r2 = 0;
        for (int j = 0; j < m; ++j) {
            const double y = g.nodes[j];
            r0 += E[i * m + j];
            r1 += E[i * m + j] * y;
            r2 += E[i * m + j] * y * y;
        }
        CHECK(r0 == doctest::Approx(x - 0.5 * (s + T)).epsilon(1e-12));
        CHECK(r1 == doctest::Approx(0.25 * (2 * x * x - s * s - T * T)).epsilon(1e-12));
        CHECK(r2 == doctest::Approx((2 * x * x * x - s * s * s - T * T * T) / 6.0)
                        .scale(1.0)
                        .epsilon(1e-11));
    }
}

TEST_CASE("eps_interpolant_matrix is accurate on a smooth non-polynomial") {
    const double s = 0.0, T = 12.0;
    const QuadratureGrid g = map_to_interval(48, s, T);
    const std::vector<double> E = eps_interpolant_matrix(g);
    // f = e^{-y}: (eps f)(x) = (1/2)[(e^{-s} - e^{-x}) - (e^{-x} - e^{-T})]
    for (int i = 0; i < g.m; i += 7) {
        double acc = 0;
        for (int j = 0; j < g.m; ++j) acc += E[i * g.m + j] * std::exp(-g.nodes[j]);
        const double x = g.nodes[i];
        const double exact =
            0.5 * (std::exp(-s) - 2.0 * std::exp(-x) + std::exp(-T));
        CHECK(acc == doctest::Approx(exact).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("parallel_for covers the index range and rethrows") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](size_t i) { hits[i] = int(i) * 2; });
    for (size_t i = 0; i < hits.size(); ++i) CHECK(hits[i] == int(i) * 2);

    CHECK_THROWS_AS(parallel_for(8, [](size_t i) {
        if (i == 3) throw std::runtime_error("boom");
    }), std::runtime_error);
}
