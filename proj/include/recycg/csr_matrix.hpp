/// @file csr_matrix.hpp
/// @brief Symmetric sparse matrix in CSR layout with full (two-sided) storage.
#pragma once

#include <cstdint>

#include "recycg/types.hpp"

namespace recycg {

/// @brief Square symmetric sparse matrix, CSR, both triangles stored.
///
/// Construction validates the storage invariants and throws ParseError when
/// they are violated:
///  - row_start has n+1 monotone entries, row_start[0] == 0,
///    row_start[n] == nnz,
///  - column indices are strictly increasing within each row and in [0, n),
///  - every diagonal entry is present and positive,
///  - the value at (i, j) matches the value at (j, i) within 1e-12 relative.
class CsrMatrix {
public:
    CsrMatrix() = default;

    /// Validating constructor; arrays are moved in.
    CsrMatrix(index_t n, std::vector<index_t> row_start,
              std::vector<index_t> col_idx, std::vector<double> values);

    index_t n() const { return n_; }
    std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }

    /// Average nonzeros per row (nnz / n).
    double nnz_av() const;

    const std::vector<index_t>& row_start() const { return row_start_; }
    const std::vector<index_t>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return values_; }

    /// Value at (i, j), 0.0 when the entry is not stored.
    double at(index_t i, index_t j) const;

    /// Largest absolute entry, 0.0 for an empty matrix.
    double max_abs() const;

private:
    void validate() const;

    index_t n_ = 0;
    std::vector<index_t> row_start_{0};
    std::vector<index_t> col_idx_;
    std::vector<double> values_;
};

/// y = A x. Sizes must match A.n().
void spmv(const CsrMatrix& a, const Vector& x, Vector& y);

/// Fused pair product: y1 = A x1 and y2 = A x2 in a single pass over the
/// entries of A. Each output is bit-identical to the corresponding spmv call.
void spmv_dual(const CsrMatrix& a, const Vector& x1, const Vector& x2,
               Vector& y1, Vector& y2);

/// Five-point finite-difference Laplacian on an N x N interior grid with
/// Dirichlet boundary: n = N^2, diagonal 4, neighbor entries -1.
CsrMatrix gen_laplacian_2d(index_t grid_n);

}  // namespace recycg
