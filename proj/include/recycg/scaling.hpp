/// @file scaling.hpp
/// @brief Symmetric two-sided diagonal scaling of an SPD matrix.
#pragma once

#include <utility>

#include "recycg/csr_matrix.hpp"

namespace recycg {

/// Holds d_inv_sqrt[i] = 1/sqrt(a_ii) of the matrix that was scaled.
/// Maps the right-hand side and solution between original and scaled
/// variables:  A x = b  <=>  (D^-1/2 A D^-1/2)(D^1/2 x) = D^-1/2 b.
struct ScalingVector {
    Vector d_inv_sqrt;

    /// b_scaled = D^-1/2 b_orig.
    Vector scale_rhs(const Vector& b) const;

    /// x_orig = D^-1/2 x_scaled.
    Vector recover_solution(const Vector& x_scaled) const;
};

/// Returns (A_scaled, scaling) with a_scaled(i,j) = a(i,j)/sqrt(a_ii a_jj).
/// The scaled diagonal is 1 to rounding. The sparsity pattern is unchanged.
std::pair<CsrMatrix, ScalingVector> diagonal_scale(const CsrMatrix& a);

}  // namespace recycg
