#include "recycg/subspace_correction.hpp"

namespace recycg {

namespace {

/// W^T A W as a SmallSym; the product is symmetrized explicitly so tiny
/// rounding asymmetries cannot trip the SmallSym check.
SmallSym projected_matrix(const TallDense& w, const TallDense& aw) {
    const int k = static_cast<int>(w.k());
    std::vector<double> s(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j <= i; ++j) {
            double acc = 0.0;
            const Vector& wi = w.cols[i];
            const Vector& awj = aw.cols[j];
            for (std::size_t r = 0; r < wi.size(); ++r) acc += wi[r] * awj[r];
            s[static_cast<std::size_t>(i) * k + j] = acc;
            s[static_cast<std::size_t>(j) * k + i] = acc;
        }
    }
    return SmallSym(k, std::move(s));
}

}  // namespace

ScPreconditioner::ScPreconditioner(std::shared_ptr<const Preconditioner> inner,
                                   const CsrMatrix& a, TallDense w)
    : inner_(std::move(inner)), w_(std::move(w)), aw_(w_.n) {
    if (!inner_) throw std::invalid_argument("ScPreconditioner: inner preconditioner is null");
    if (w_.k() > 0 && w_.n != a.n())
        throw std::invalid_argument("ScPreconditioner: W row count does not match A");
    for (index_t j = 0; j < w_.k(); ++j) {
        Vector col;
        spmv(a, w_.cols[j], col);
        aw_.cols.push_back(std::move(col));
    }
    if (w_.k() > 0) {
        try {
            waw_chol_ = chol_factor(projected_matrix(w_, aw_));
        } catch (const BreakdownError&) {
            throw BreakdownError("ScPreconditioner: W^T A W not SPD");
        }
    }
}

void ScPreconditioner::apply(const Vector& r, Vector& z) const {
    inner_->apply(r, z);
    if (w_.k() == 0) return;
    const Vector f = tall_t_apply(w_, r);
    const Vector u = chol_solve(waw_chol_, f);
    for (index_t j = 0; j < w_.k(); ++j) {
        const double uj = u[j];
        const Vector& col = w_.cols[j];
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += uj * col[i];
    }
}

}  // namespace recycg
