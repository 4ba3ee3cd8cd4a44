#include "recycg/scaling.hpp"

#include <cmath>
#include <string>

namespace recycg {

Vector ScalingVector::scale_rhs(const Vector& b) const {
    Vector out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = d_inv_sqrt[i] * b[i];
    return out;
}

Vector ScalingVector::recover_solution(const Vector& x_scaled) const {
    Vector out(x_scaled.size());
    for (std::size_t i = 0; i < x_scaled.size(); ++i) out[i] = d_inv_sqrt[i] * x_scaled[i];
    return out;
}

std::pair<CsrMatrix, ScalingVector> diagonal_scale(const CsrMatrix& a) {
    const index_t n = a.n();
    ScalingVector sv;
    sv.d_inv_sqrt.resize(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) {
        const double d = a.at(i, i);
        if (d <= 0.0)
            throw ParseError("diagonal_scale: non-positive diagonal at row " + std::to_string(i));
        sv.d_inv_sqrt[i] = 1.0 / std::sqrt(d);
    }
    std::vector<index_t> rs = a.row_start();
    std::vector<index_t> ci = a.col_idx();
    std::vector<double> va(a.values().size());
    for (index_t i = 0; i < n; ++i)
        for (index_t k = rs[i]; k < rs[i + 1]; ++k)
            va[k] = a.values()[k] * sv.d_inv_sqrt[i] * sv.d_inv_sqrt[ci[k]];
    CsrMatrix scaled(n, std::move(rs), std::move(ci), std::move(va));
    return {std::move(scaled), std::move(sv)};
}

}  // namespace recycg
