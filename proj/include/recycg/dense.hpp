/// @file dense.hpp
/// @brief Small dense kernels: tall skinny blocks, symmetric eigensolve,
///        Cholesky. Everything here is O(k^2 n) or O(k^3) with k << n.
#pragma once

#include "recycg/types.hpp"

namespace recycg {

/// @brief Column-major n x k dense block; each column is one contiguous vector.
struct TallDense {
    index_t n = 0;
    std::vector<Vector> cols;

    TallDense() = default;
    explicit TallDense(index_t rows) : n(rows) {}

    index_t k() const { return static_cast<index_t>(cols.size()); }

    /// Appends a column; its length must equal n.
    void push_col(Vector c);
};

/// @brief Dense symmetric k x k matrix, row-major.
///
/// Construction rejects k above the cap (default 128) and entries that are
/// asymmetric beyond 1e-12 relative.
struct SmallSym {
    int k = 0;
    std::vector<double> a;  // row-major k*k

    SmallSym() = default;
    SmallSym(int dim, std::vector<double> data, int cap = 128);

    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * k + j]; }
};

/// @brief Lower-triangular Cholesky factor of a SmallSym, row-major k x k.
struct SmallChol {
    int k = 0;
    std::vector<double> l;  // row-major, upper part unused
};

/// @brief Single-pass modified Gram-Schmidt with a relative drop tolerance.
///
/// Columns whose post-orthogonalization norm does not exceed
/// drop_tol * (original norm) are dropped; survivors are normalized. The
/// result satisfies E^T E = I to roughly 1e-10 for numerically independent
/// inputs.
TallDense mgs_orthonormalize(const TallDense& v, double drop_tol = 1e-12);

/// Eigenvalues ascending with matching orthonormal eigenvectors.
struct SymEig {
    std::vector<double> values;
    std::vector<Vector> vectors;
};

/// @brief Cyclic Jacobi eigensolver for SmallSym.
///
/// Sweeps until the off-diagonal Frobenius norm falls below 1e-12 * ||S||_F,
/// with a hard cap of 100 sweeps (BreakdownError beyond the cap; never
/// reached for k <= 128). Eigenvectors are unit norm with the sign fixed so
/// the entry of largest magnitude is positive (first such entry on ties),
/// which makes the output deterministic.
SymEig sym_eig(const SmallSym& s);

/// Dense Cholesky S = L L^T. A non-positive pivot raises BreakdownError
/// naming the row; for projected systems this signals a rank-deficient or
/// non-SPD W^T A W.
SmallChol chol_factor(const SmallSym& s);

/// Solves L L^T u = f.
Vector chol_solve(const SmallChol& c, const Vector& f);

/// y = W u with u of length k.
Vector tall_apply(const TallDense& w, const Vector& u);

/// f = W^T y with y of length n.
Vector tall_t_apply(const TallDense& w, const Vector& y);

}  // namespace recycg
