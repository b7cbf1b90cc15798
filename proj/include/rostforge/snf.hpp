#pragma once

#include <vector>

#include "rostforge/bigint.hpp"

namespace rostforge {

using IntMatrix = std::vector<std::vector<BigInt>>;  // row-major

/// Smith normal form A = U . D . V with U, V unimodular and D diagonal
/// with d_1 | d_2 | ... ; diag holds the nonzero invariant factors.
struct SmithResult {
    std::vector<BigInt> diag;
    IntMatrix U, V;            // m = U.D.V
    IntMatrix U_inv, V_inv;    // D = U_inv.m.V_inv
    size_t rows = 0, cols = 0;
};

SmithResult smith_normal_form(const IntMatrix& m);

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix identity_matrix(size_t n);
bool mat_equal(const IntMatrix& a, const IntMatrix& b);

/// Kernel of an integer matrix as a basis of columns.
std::vector<std::vector<BigInt>> integer_kernel(const IntMatrix& m);

/// Invariant factors (> 1) and free rank of the cokernel of m acting on
/// Z^rows.
struct CokernelShape {
    std::vector<BigInt> invariant_factors;
    int free_rank = 0;
};
CokernelShape cokernel_shape(const IntMatrix& m);

/// Shape of ker(m) / image(relations), the relation columns lying in the
/// kernel.
CokernelShape subquotient_shape(const IntMatrix& m, const IntMatrix& relations);

}  // namespace rostforge
