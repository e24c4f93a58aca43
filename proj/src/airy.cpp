#include "edgekernel/airy.hpp"

#include <cmath>
#include <stdexcept>

namespace edgekernel {

namespace {

#include "edgekernel/airy_table.inc"

constexpr double kPi = 3.14159265358979323846;

// u_k coefficients of the standard Airy asymptotic series:
// u_0 = 1, u_k = (6k-5)(6k-3)(6k-1)/(216 k) * u_{k-1} ... in the usual
// normalized form u_k = Gamma(3k+1/2)/(54^k k! Gamma(k+1/2)).
constexpr int kNU = 8;
const double kU[kNU] = {
    1.0,
    5.0 / 72.0,
    385.0 / 10368.0,
    85085.0 / 2239488.0,
    37182145.0 / 644972544.0,
    5391411025.0 / 46438023168.0,
    5849680962125.0 / 20061226008576.0,
    1267866891312625.0 / 1445378564456448.0,
};
// v_k for Ai': v_0 = 1, v_k = -(6k+1)/(6k-1) * u_k.
struct VInit {
    double v[kNU];
    VInit() {
        v[0] = 1.0;
        for (int k = 1; k < kNU; ++k) v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * kU[k];
    }
};
const VInit kVi;

// Taylor evaluation around anchor i: returns Ai, Ai' and int_{x0}^{x} Ai.
struct Local {
    double ai, aip, seg;
};

Local taylor_from_anchor(int i, double d) {
    // coefficients a_k of Ai(x0 + t): a_{k+2} = (x0*a_k + a_{k-1})/((k+1)(k+2))
    const double x0 = kAiryTableX0 + i * kAiryTableStep;
    double a0 = kAiryTableAi[i], a1 = kAiryTableAip[i];
    double ai = 0, aip = 0, seg = 0;
    double ak2 = a0, ak1 = a1;  // a_{k}, a_{k+1} rolling
    double tp = 1.0;            // t^k
    double prev = 0.0;          // a_{k-1}
    for (int k = 0; k < 28; ++k) {
        ai += ak2 * tp;
        aip += (k + 1) * ak1 * tp;          // d/dt sum a_k t^k = sum (k+1) a_{k+1} t^k
        seg += ak2 * tp * d / (k + 1);      // antiderivative term a_k t^{k+1}/(k+1)
        const double next = (x0 * ak2 + prev) / ((k + 1.0) * (k + 2.0));
        prev = ak2;
        ak2 = ak1;
        ak1 = next;
        tp *= d;
        if (k > 6 && std::fabs(ak2 * tp) < 1e-20 && std::fabs(prev) * std::fabs(tp) < 1e-20) break;
    }
    return {ai, aip, seg};
}

Local eval_table(double x) {
    const int i = static_cast<int>(std::lround((x - kAiryTableX0) / kAiryTableStep));
    const double d = x - (kAiryTableX0 + i * kAiryTableStep);
    return taylor_from_anchor(i, d);
}

bool in_table(double x) {
    return x >= kAiryTableX0 && x <= kAiryTableX0 + (kAiryTableSize - 1) * kAiryTableStep;
}

// Oscillatory asymptotics for x <= -60 (t = -x):
//   Ai(-t)  = pi^{-1/2} t^{-1/4} [ cos(z - pi/4) P(z) + sin(z - pi/4) Q(z) ]
//   Ai'(-t) = pi^{-1/2} t^{+1/4} [ sin(z - pi/4) R(z) - cos(z - pi/4) S(z) ]
// with z = (2/3) t^{3/2}, P = sum (-1)^k u_{2k} z^{-2k}, Q = sum (-1)^k u_{2k+1} z^{-2k-1},
// R, S likewise with v_k.
void asym_neg(double t, double* ai, double* aip, double* tail) {
    const double z = 2.0 / 3.0 * t * std::sqrt(t);
    const double zi = 1.0 / z;
    double P = 0, Q = 0, R = 0, S = 0;
    double zp = 1.0;
    for (int k = 0; k < kNU; ++k) {
        const double sgn = (k / 2) % 2 == 0 ? 1.0 : -1.0;
        if (k % 2 == 0) {
            P += sgn * kU[k] * zp;
            R += sgn * kVi.v[k] * zp;
        } else {
            Q += sgn * kU[k] * zp;
            S += sgn * kVi.v[k] * zp;
        }
        zp *= zi;
    }
    const double c = std::cos(z - kPi / 4.0), s = std::sin(z - kPi / 4.0);
    const double f = 1.0 / std::sqrt(kPi);
    if (ai) *ai = f * std::pow(t, -0.25) * (c * P + s * Q);
    if (aip) *aip = f * std::pow(t, 0.25) * (s * R - c * S);
    if (tail) {
        // tail(-t) = 1 - pi^{-1/2} t^{-3/4} [ cc(z) cos(z-pi/4) + ss(z) sin(z-pi/4) ],
        // cc = c1/z + c3/z^3, ss = -1 + s2/z^2 (derived by matching d/dt against Ai(-t)).
        const double c1 = 41.0 / 72.0;
        const double s2 = kU[2] + 1.5 * c1;
        const double c3 = -2.5 * s2 - kU[3];
        const double cc = c1 * zi + c3 * zi * zi * zi;
        const double ss = -1.0 + s2 * zi * zi;
        *tail = 1.0 - f * std::pow(t, -0.75) * (cc * c + ss * s);
    }
}

// Decaying asymptotics for x beyond the table (x > 38): leading terms only,
// values are < 1e-68 there so anything beyond the prefactor is noise.
void asym_pos(double x, double* ai, double* aip, double* tail) {
    const double z = 2.0 / 3.0 * x * std::sqrt(x);
    const double e = std::exp(-z);  // underflows to 0 for x > ~660^(2/3)
    const double f = 0.5 / std::sqrt(kPi);
    if (ai) *ai = f * std::pow(x, -0.25) * e;
    if (aip) *aip = -f * std::pow(x, 0.25) * e;
    if (tail) *tail = f * std::pow(x, -0.75) * e;
}

void check_finite(double x) {
    if (!std::isfinite(x)) throw std::domain_error("airy: non-finite argument");
}

}  // namespace

double airy_ai(double x) {
    check_finite(x);
    if (in_table(x)) return eval_table(x).ai;
    double v;
    if (x < 0) {
        asym_neg(-x, &v, nullptr, nullptr);
    } else {
        asym_pos(x, &v, nullptr, nullptr);
    }
    return v;
}

double airy_ai_prime(double x) {
    check_finite(x);
    if (in_table(x)) return eval_table(x).aip;
    double v;
    if (x < 0) {
        asym_neg(-x, nullptr, &v, nullptr);
    } else {
        asym_pos(x, nullptr, &v, nullptr);
    }
    return v;
}

double airy_tail(double x) {
    check_finite(x);
    if (in_table(x)) {
        const int i = static_cast<int>(std::lround((x - kAiryTableX0) / kAiryTableStep));
        const double d = x - (kAiryTableX0 + i * kAiryTableStep);
        // tail(x) = tail(anchor) - int_{anchor}^{x} Ai
        return kAiryTableTail[i] - taylor_from_anchor(i, d).seg;
    }
    double v;
    if (x < 0) {
        asym_neg(-x, nullptr, nullptr, &v);
    } else {
        asym_pos(x, nullptr, nullptr, &v);
    }
    return v;
}

}  // namespace edgekernel
