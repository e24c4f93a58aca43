#include "edgekernel/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edgekernel/airy.hpp"

namespace edgekernel {

double choose_truncation(double s, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("choose_truncation: tol must be positive");
    const double floor_T = std::max(s + 8.0, 10.0);
    for (int k = 2; k < 64; ++k) {
        const double T = s + 4.0 * k;
        if (T < floor_T) continue;
        const double a = airy_ai(T), ap = airy_ai_prime(T);
        const double diag = ap * ap - T * a * a;  // K_Airy(T, T)
        if (std::fabs(diag) < tol && std::fabs(airy_tail(T)) < tol) return T;
    }
    return s + 4.0 * 64;  // decay guarantees we never get here for sane tol
}

}  // namespace edgekernel
