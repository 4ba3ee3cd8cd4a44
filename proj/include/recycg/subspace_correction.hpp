/// @file subspace_correction.hpp
/// @brief Additive subspace-correction preconditioner built from an
///        auxiliary basis W.
#pragma once

#include <memory>

#include "recycg/csr_matrix.hpp"
#include "recycg/dense.hpp"
#include "recycg/preconditioner.hpp"

namespace recycg {

/// @brief M_sc^-1 r = M^-1 r + W (W^T A W)^-1 W^T r.
///
/// The coarse term shifts the eigenvalues of M_sc^-1 A along the W
/// directions without touching the A-orthogonal complement, so a W spanning
/// the smallest eigenvectors removes them from the effective spectrum.
/// Construction computes AW = A W column by column and factorizes W^T A W;
/// a factorization failure reports "W^T A W not SPD". With an empty W the
/// apply is exactly the inner preconditioner.
class ScPreconditioner : public Preconditioner {
public:
    ScPreconditioner(std::shared_ptr<const Preconditioner> inner,
                     const CsrMatrix& a, TallDense w);

    void apply(const Vector& r, Vector& z) const override;

    const TallDense& w() const { return w_; }
    const TallDense& aw() const { return aw_; }
    index_t subspace_dim() const { return w_.k(); }

private:
    std::shared_ptr<const Preconditioner> inner_;
    TallDense w_;
    TallDense aw_;
    SmallChol waw_chol_;
};

}  // namespace recycg
