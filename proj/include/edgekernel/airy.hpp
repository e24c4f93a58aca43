#pragma once

// Airy function Ai, its derivative, and the tail integral int_x^inf Ai(t) dt.
//
// Strategy: a precomputed anchor table on [-60, 38] with 0.5 spacing (values
// generated at 50-digit precision, see tools/gen_airy_table.py) plus a local
// Taylor expansion driven by the Airy ODE y'' = x*y around the nearest anchor.
// The Taylor step is at most 0.25, so ~20 terms reach full double precision.
// Outside the table: classical asymptotic expansions (oscillatory side) or
// the superexponentially small leading term (positive side).

namespace edgekernel {

// Ai(x). Absolute error well under 1e-13 on [-20, 20]; relative error ~1e-14
// over the anchored range. Throws std::domain_error for non-finite input.
double airy_ai(double x);

// Ai'(x), same accuracy contract as airy_ai.
double airy_ai_prime(double x);

// int_x^inf Ai(t) dt. Positive, with global max ~1.2744 near x=-2.34; -> 1 as
// x -> -inf (total integral of Ai is 1) and -> 0 superexponentially as
// x -> +inf.
double airy_tail(double x);

}  // namespace edgekernel
