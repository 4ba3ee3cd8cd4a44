#include "recycg/csr_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace recycg {

CsrMatrix::CsrMatrix(index_t n, std::vector<index_t> row_start,
                     std::vector<index_t> col_idx, std::vector<double> values)
    : n_(n),
      row_start_(std::move(row_start)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
    validate();
}

double CsrMatrix::nnz_av() const {
    return n_ == 0 ? 0.0 : static_cast<double>(nnz()) / static_cast<double>(n_);
}

double CsrMatrix::at(index_t i, index_t j) const {
    const auto begin = col_idx_.begin() + row_start_[i];
    const auto end = col_idx_.begin() + row_start_[i + 1];
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

double CsrMatrix::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void CsrMatrix::validate() const {
    if (n_ < 0) throw ParseError("csr: negative dimension");
    if (row_start_.size() != static_cast<std::size_t>(n_) + 1)
        throw ParseError("csr: row_start must have n+1 entries");
    if (row_start_.front() != 0)
        throw ParseError("csr: row_start[0] must be 0");
    if (col_idx_.size() != values_.size())
        throw ParseError("csr: col_idx/values length mismatch");
    if (static_cast<std::size_t>(row_start_.back()) != values_.size())
        throw ParseError("csr: row_start[n] must equal nnz");

    for (index_t i = 0; i < n_; ++i) {
        if (row_start_[i] > row_start_[i + 1])
            throw ParseError("csr: row_start not monotone at row " + std::to_string(i));
        bool has_diag = false;
        for (index_t k = row_start_[i]; k < row_start_[i + 1]; ++k) {
            const index_t c = col_idx_[k];
            if (c < 0 || c >= n_)
                throw ParseError("csr: column out of range in row " + std::to_string(i));
            if (k > row_start_[i] && col_idx_[k - 1] >= c)
                throw ParseError("csr: columns not strictly increasing in row " +
                                 std::to_string(i));
            if (c == i) {
                has_diag = true;
                if (values_[k] <= 0.0)
                    throw ParseError("csr: non-positive diagonal at row " + std::to_string(i));
            }
        }
        if (!has_diag)
            throw ParseError("csr: missing diagonal at row " + std::to_string(i));
    }

    // Two-sided storage: each entry must have a matching transpose entry.
    for (index_t i = 0; i < n_; ++i) {
        for (index_t k = row_start_[i]; k < row_start_[i + 1]; ++k) {
            const index_t j = col_idx_[k];
            if (j <= i) continue;
            const auto begin = col_idx_.begin() + row_start_[j];
            const auto end = col_idx_.begin() + row_start_[j + 1];
            const auto it = std::lower_bound(begin, end, i);
            if (it == end || *it != i)
                throw ParseError("csr: entry (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") has no transpose entry");
            const double v = values_[k];
            const double w = values_[static_cast<std::size_t>(it - col_idx_.begin())];
            const double tol = 1e-12 * std::max(std::abs(v), std::abs(w));
            if (std::abs(v - w) > tol)
                throw ParseError("csr: asymmetric value at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
        }
    }
}

void spmv(const CsrMatrix& a, const Vector& x, Vector& y) {
    const index_t n = a.n();
    y.resize(static_cast<std::size_t>(n));
    const auto& rs = a.row_start();
    const auto& ci = a.col_idx();
    const auto& va = a.values();
    for (index_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (index_t k = rs[i]; k < rs[i + 1]; ++k) sum += va[k] * x[ci[k]];
        y[i] = sum;
    }
}

void spmv_dual(const CsrMatrix& a, const Vector& x1, const Vector& x2,
               Vector& y1, Vector& y2) {
    const index_t n = a.n();
    y1.resize(static_cast<std::size_t>(n));
    y2.resize(static_cast<std::size_t>(n));
    const auto& rs = a.row_start();
    const auto& ci = a.col_idx();
    const auto& va = a.values();
    for (index_t i = 0; i < n; ++i) {
        double s1 = 0.0;
        double s2 = 0.0;
        for (index_t k = rs[i]; k < rs[i + 1]; ++k) {
            const double v = va[k];
            const index_t c = ci[k];
            s1 += v * x1[c];
            s2 += v * x2[c];
        }
        y1[i] = s1;
        y2[i] = s2;
    }
}

CsrMatrix gen_laplacian_2d(index_t grid_n) {
    if (grid_n < 1) throw ParseError("gen_laplacian_2d: grid size must be >= 1");
    const index_t n = grid_n * grid_n;
    std::vector<index_t> rs(static_cast<std::size_t>(n) + 1, 0);
    std::vector<index_t> ci;
    std::vector<double> va;
    ci.reserve(static_cast<std::size_t>(5) * n);
    va.reserve(static_cast<std::size_t>(5) * n);
    for (index_t y = 0; y < grid_n; ++y) {
        for (index_t x = 0; x < grid_n; ++x) {
            const index_t p = y * grid_n + x;
            if (y > 0) { ci.push_back(p - grid_n); va.push_back(-1.0); }
            if (x > 0) { ci.push_back(p - 1); va.push_back(-1.0); }
            ci.push_back(p); va.push_back(4.0);
            if (x < grid_n - 1) { ci.push_back(p + 1); va.push_back(-1.0); }
            if (y < grid_n - 1) { ci.push_back(p + grid_n); va.push_back(-1.0); }
            rs[p + 1] = static_cast<index_t>(ci.size());
        }
    }
    return CsrMatrix(n, std::move(rs), std::move(ci), std::move(va));
}

}  // namespace recycg
