/// @file ic_preconditioner.hpp
/// @brief Incomplete Cholesky IC(0) in L D L^T form with optional
///        block-Jacobi structure.
#pragma once

#include "recycg/csr_matrix.hpp"
#include "recycg/preconditioner.hpp"

namespace recycg {

/// @brief Zero-fill incomplete factorization A ~ L D L^T.
///
/// L is unit lower triangular; only its strict lower part is stored and its
/// pattern is a subset of the strict lower pattern of A. d holds the pivots,
/// all positive. With num_blocks > 1 the rows are split into contiguous
/// equal-size ranges and couplings between different blocks are dropped, so
/// the factor (and its application) is block diagonal.
struct IcFactor {
    index_t n = 0;
    std::vector<index_t> block_bounds;  // num_blocks+1 offsets, first 0, last n

    // strict lower factor, row-wise CSR
    std::vector<index_t> l_row_start;
    std::vector<index_t> l_col;
    std::vector<double> l_val;
    Vector d;

    // the same factor stored column-wise (strict upper CSR) for the backward sweep
    std::vector<index_t> u_row_start;
    std::vector<index_t> u_col;
    std::vector<double> u_val;

    /// Diagonal shift that produced the successful factorization.
    double shift_used = 0.0;

    int num_blocks() const { return static_cast<int>(block_bounds.size()) - 1; }
};

/// @brief Factorize A + shift * diag(A) with zero fill-in.
///
/// On a non-positive pivot the factorization restarts with a larger shift:
/// 0.01 after a zero-shift failure, doubling on each further failure, up to
/// 20 retries, after which BreakdownError("IC breakdown ...") is raised.
IcFactor ic0_factorize(const CsrMatrix& a, double shift = 0.0, int num_blocks = 1);

/// z = (L D L^T)^-1 r, computed per block: forward substitution, diagonal
/// scaling, backward substitution.
void ic_apply(const IcFactor& f, const Vector& r, Vector& z);

/// Preconditioner adapter owning an IcFactor.
class IcPreconditioner : public Preconditioner {
public:
    explicit IcPreconditioner(IcFactor f) : f_(std::move(f)) {}
    void apply(const Vector& r, Vector& z) const override { ic_apply(f_, r, z); }
    const IcFactor& factor() const { return f_; }

private:
    IcFactor f_;
};

}  // namespace recycg
