#include "edgekernel/hermite.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace edgekernel {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;

void check_order(int n) {
    if (n < 0 || n > kHermiteMaxOrder) throw std::invalid_argument("hermite: unsupported order");
}

// log of erfc(z) for z >= 0 without underflow.
double log_erfc(double z) {
    if (z <= 25.5) return std::log(std::erfc(z));
    // asymptotic erfc(z) = e^{-z^2}/(z sqrt(pi)) (1 - 1/(2z^2) + 3/(4z^4) - ...)
    const double iz2 = 1.0 / (2.0 * z * z);
    double term = 1.0, s = 1.0;
    for (int k = 1; k <= 8; ++k) {
        term *= -(2.0 * k - 1.0) * iz2;
        s += term;
    }
    return -z * z - std::log(z * std::sqrt(kPi)) + std::log(s);
}

// Joint forward recurrence at x >= 0 with a shared power-of-two exponent.
// Fills phi[0..n], tail[0..n] as plain doubles (underflow -> 0).
void recurrence_nonneg(int n, double x, std::vector<double>& phi, std::vector<double>& tail) {
    const double lphi0 = -0.5 * x * x - 0.25 * std::log(kPi);
    long e = static_cast<long>(std::floor(lphi0 / kLn2));
    double mp_prev = std::exp(lphi0 - e * kLn2);  // phi_0 mantissa
    const double z = x / std::sqrt(2.0);
    const double lI0 = std::log(std::pow(kPi, 0.25) / std::sqrt(2.0)) + log_erfc(z);
    double mt_prev = std::exp(lI0 - e * kLn2);    // I_0 mantissa (same exponent)

    auto emit = [&](int k, double mp, double mt) {
        const double s = (e > -1065 && e < 1024) ? std::ldexp(1.0, static_cast<int>(e)) : 0.0;
        phi[k] = mp * s;
        tail[k] = mt * s;
    };
    emit(0, mp_prev, mt_prev);
    if (n == 0) return;

    double mp_cur = std::sqrt(2.0) * x * mp_prev;  // phi_1
    double mt_cur = std::sqrt(2.0) * mp_prev;      // I_1 = sqrt(2) phi_0
    emit(1, mp_cur, mt_cur);

    for (int k = 1; k < n; ++k) {
        const double a = std::sqrt(2.0 / (k + 1.0));
        const double b = std::sqrt(k / (k + 1.0));
        const double mp_next = a * x * mp_cur - b * mp_prev;
        const double mt_next = a * mp_cur + b * mt_prev;
        mp_prev = mp_cur;
        mp_cur = mp_next;
        mt_prev = mt_cur;
        mt_cur = mt_next;
        double mag = std::fabs(mp_cur);
        mag = std::max(mag, std::fabs(mp_prev));
        mag = std::max(mag, std::fabs(mt_cur));
        if (mag > 0x1p100 || (mag > 0 && mag < 0x1p-100)) {
            const int adj = std::ilogb(mag);
            const double sc = std::ldexp(1.0, -adj);
            mp_cur *= sc;
            mp_prev *= sc;
            mt_cur *= sc;
            mt_prev *= sc;
            e += adj;
        }
        emit(k + 1, mp_cur, mt_cur);
    }
}

const std::vector<double>& c_table() {
    static std::vector<double> c;
    static std::once_flag once;
    std::call_once(once, [] {
        c.resize(kHermiteMaxOrder + 1, 0.0);
        c[0] = 0.5 * std::sqrt(2.0 * kPi) * std::pow(kPi, -0.25);
        for (int k = 2; k <= kHermiteMaxOrder; k += 2)
            c[k] = c[k - 2] * std::sqrt((k - 1.0) / k);
    });
    return c;
}

}  // namespace

void hermite_phi_tail_arrays(int n, double x, std::vector<double>& phi,
                             std::vector<double>& tail) {
    check_order(n);
    if (!std::isfinite(x)) throw std::domain_error("hermite: non-finite argument");
    phi.resize(n + 1);
    tail.resize(n + 1);
    recurrence_nonneg(n, std::fabs(x), phi, tail);
    if (x < 0) {
        // phi_k(-x) = (-1)^k phi_k(x);  I_k(-x) = 2 c_k - (-1)^k I_k(x)
        const auto& c = c_table();
        for (int k = 0; k <= n; ++k) {
            const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            phi[k] *= sgn;
            tail[k] = 2.0 * c[k] - sgn * tail[k];
        }
    }
}

double hermite_c(int n) {
    check_order(n);
    return c_table()[n];
}

double hermite_phi(int n, double x) {
    std::vector<double> p, t;
    hermite_phi_tail_arrays(n, x, p, t);
    return p[n];
}

double hermite_phi_deriv(int n, double x) {
    std::vector<double> p, t;
    hermite_phi_tail_arrays(n, x, p, t);
    return -x * p[n] + (n > 0 ? std::sqrt(2.0 * n) * p[n - 1] : 0.0);
}

double hermite_phi_tail(int n, double x) {
    std::vector<double> p, t;
    hermite_phi_tail_arrays(n, x, p, t);
    return t[n];
}

double eps_phi(int n, double x) {
    std::vector<double> p, t;
    hermite_phi_tail_arrays(n, x, p, t);
    return hermite_c(n) - t[n];
}

}  // namespace edgekernel
