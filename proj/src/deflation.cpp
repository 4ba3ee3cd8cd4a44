#include "recycg/deflation.hpp"

namespace recycg {

namespace {

void subtract_combination(Vector& y, const TallDense& basis, const Vector& coeff) {
    for (index_t j = 0; j < basis.k(); ++j) {
        const double c = coeff[j];
        const Vector& col = basis.cols[j];
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= c * col[i];
    }
}

}  // namespace

Vector DeflationOperator::project_pt(const Vector& y) const {
    Vector out = y;
    if (empty()) return out;
    const Vector u = chol_solve(waw_chol, tall_t_apply(w, y));
    subtract_combination(out, aw, u);
    return out;
}

Vector DeflationOperator::project_p(const Vector& x) const {
    Vector out = x;
    if (empty()) return out;
    const Vector u = chol_solve(waw_chol, tall_t_apply(aw, x));
    subtract_combination(out, w, u);
    return out;
}

Vector DeflationOperator::direct_component(const Vector& b) const {
    Vector out(b.size(), 0.0);
    if (empty()) return out;
    const Vector u = chol_solve(waw_chol, tall_t_apply(w, b));
    for (index_t j = 0; j < w.k(); ++j) {
        const double c = u[j];
        const Vector& col = w.cols[j];
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * col[i];
    }
    return out;
}

DeflationOperator build_deflation_operator(const CsrMatrix& a, TallDense w) {
    if (w.k() > 0 && w.n != a.n())
        throw std::invalid_argument("build_deflation_operator: W row count does not match A");
    DeflationOperator op;
    op.w = std::move(w);
    op.aw = TallDense(op.w.n);
    for (index_t j = 0; j < op.w.k(); ++j) {
        Vector col;
        spmv(a, op.w.cols[j], col);
        op.aw.cols.push_back(std::move(col));
    }
    if (op.w.k() > 0) {
        const int k = static_cast<int>(op.w.k());
        std::vector<double> s(static_cast<std::size_t>(k) * k, 0.0);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j <= i; ++j) {
                double acc = 0.0;
                const Vector& wi = op.w.cols[i];
                const Vector& awj = op.aw.cols[j];
                for (std::size_t r = 0; r < wi.size(); ++r) acc += wi[r] * awj[r];
                s[static_cast<std::size_t>(i) * k + j] = acc;
                s[static_cast<std::size_t>(j) * k + i] = acc;
            }
        }
        try {
            op.waw_chol = chol_factor(SmallSym(k, std::move(s)));
        } catch (const BreakdownError&) {
            throw BreakdownError("build_deflation_operator: W^T A W not SPD");
        }
    }
    return op;
}

}  // namespace recycg
