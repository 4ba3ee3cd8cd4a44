/// @file deflation.hpp
/// @brief Deflation projector built from an auxiliary basis W.
#pragma once

#include "recycg/csr_matrix.hpp"
#include "recycg/dense.hpp"

namespace recycg {

/// @brief Projector pair for deflated CG.
///
/// P = I - W (W^T A W)^-1 (A W)^T is never formed; both applications go
/// through the small Cholesky factor:
///   P^T y = y - A W (W^T A W)^-1 W^T y
///   P  x  = x -  W  (W^T A W)^-1 (A W)^T x
/// With an empty W every method is the identity / zero as appropriate.
struct DeflationOperator {
    TallDense w;
    TallDense aw;
    SmallChol waw_chol;

    index_t k() const { return w.k(); }
    bool empty() const { return w.k() == 0; }

    /// P^T y.
    Vector project_pt(const Vector& y) const;

    /// P x.
    Vector project_p(const Vector& x) const;

    /// W (W^T A W)^-1 W^T b, the component of the solution carried by W.
    Vector direct_component(const Vector& b) const;
};

/// Computes AW and the Cholesky factor of W^T A W; a factorization failure
/// reports "W^T A W not SPD".
DeflationOperator build_deflation_operator(const CsrMatrix& a, TallDense w);

}  // namespace recycg
