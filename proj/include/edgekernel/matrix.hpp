#pragma once

// Dense row-major matrices and an LU determinant -- the only linear algebra
// the determinant pipeline needs.

#include <vector>

namespace edgekernel {

struct SquareMatrix {
    int order = 0;
    std::vector<double> entries;  // row-major, order*order

    SquareMatrix() = default;
    explicit SquareMatrix(int n) : order(n), entries(static_cast<size_t>(n) * n, 0.0) {}

    double& at(int i, int j) { return entries[static_cast<size_t>(i) * order + j]; }
    double at(int i, int j) const { return entries[static_cast<size_t>(i) * order + j]; }
};

// Identity matrix of given order.
SquareMatrix identity(int n);

// Determinant by LU with partial pivoting; returns 0 for exactly singular
// input. The input is copied; order is capped at 4096. Throws on non-finite
// entries.
double det_lu(const SquareMatrix& M);

}  // namespace edgekernel
