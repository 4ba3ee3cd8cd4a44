#include "recycg/ic_preconditioner.hpp"

#include <cmath>
#include <string>

namespace recycg {

namespace {

/// One factorization attempt at a fixed shift. Returns false on a
/// non-positive pivot, leaving f in an unspecified state.
bool try_factorize(const CsrMatrix& a, double shift,
                   const std::vector<index_t>& bounds, IcFactor& f) {
    const index_t n = a.n();
    const auto& rs = a.row_start();
    const auto& ci = a.col_idx();
    const auto& va = a.values();

    f.n = n;
    f.block_bounds = bounds;
    f.l_row_start.assign(static_cast<std::size_t>(n) + 1, 0);
    f.l_col.clear();
    f.l_val.clear();
    f.d.assign(static_cast<std::size_t>(n), 0.0);
    f.shift_used = shift;

    std::size_t block = 0;
    for (index_t i = 0; i < n; ++i) {
        while (i >= bounds[block + 1]) ++block;
        const index_t lo = bounds[block];

        const index_t row_begin = f.l_row_start[i] = static_cast<index_t>(f.l_col.size());
        double diag = 0.0;
        for (index_t k = rs[i]; k < rs[i + 1]; ++k) {
            const index_t j = ci[k];
            if (j > i) break;  // columns are sorted
            if (j == i) {
                diag = va[k];
                break;
            }
            if (j < lo) continue;  // coupling to an earlier block, dropped

            // l_ij = (a_ij - sum_{p < j} l_ip d_p l_jp) / d_j over the shared pattern
            double sum = va[k];
            index_t pi = row_begin;
            index_t pj = f.l_row_start[j];
            const index_t pi_end = static_cast<index_t>(f.l_col.size());
            const index_t pj_end = f.l_row_start[j + 1];
            while (pi < pi_end && pj < pj_end) {
                const index_t cpi = f.l_col[pi];
                const index_t cpj = f.l_col[pj];
                if (cpi == cpj) {
                    sum -= f.l_val[pi] * f.d[cpi] * f.l_val[pj];
                    ++pi;
                    ++pj;
                } else if (cpi < cpj) {
                    ++pi;
                } else {
                    ++pj;
                }
            }
            f.l_col.push_back(j);
            f.l_val.push_back(sum / f.d[j]);
        }

        double pivot = diag * (1.0 + shift);
        for (index_t p = row_begin; p < static_cast<index_t>(f.l_col.size()); ++p)
            pivot -= f.l_val[p] * f.l_val[p] * f.d[f.l_col[p]];
        if (pivot <= 0.0) return false;
        f.d[i] = pivot;
        f.l_row_start[i + 1] = static_cast<index_t>(f.l_col.size());
    }
    return true;
}

/// Builds the column-wise (strict upper) copy used by the backward sweep.
void build_transpose(IcFactor& f) {
    const index_t n = f.n;
    f.u_row_start.assign(static_cast<std::size_t>(n) + 1, 0);
    f.u_col.assign(f.l_col.size(), 0);
    f.u_val.assign(f.l_val.size(), 0.0);
    for (index_t c : f.l_col) ++f.u_row_start[c + 1];
    for (index_t i = 0; i < n; ++i) f.u_row_start[i + 1] += f.u_row_start[i];
    std::vector<index_t> next(f.u_row_start.begin(), f.u_row_start.end() - 1);
    for (index_t i = 0; i < n; ++i) {
        for (index_t k = f.l_row_start[i]; k < f.l_row_start[i + 1]; ++k) {
            const index_t j = f.l_col[k];  // entry l(i, j): row j of the transpose
            const index_t dst = next[j]++;
            f.u_col[dst] = i;
            f.u_val[dst] = f.l_val[k];
        }
    }
}

}  // namespace

IcFactor ic0_factorize(const CsrMatrix& a, double shift, int num_blocks) {
    const index_t n = a.n();
    if (num_blocks < 1 || num_blocks > std::max<index_t>(n, 1))
        throw std::invalid_argument("ic0_factorize: num_blocks must be in [1, n]");
    if (shift < 0.0)
        throw std::invalid_argument("ic0_factorize: shift must be >= 0");

    std::vector<index_t> bounds(static_cast<std::size_t>(num_blocks) + 1);
    for (int b = 0; b <= num_blocks; ++b)
        bounds[b] = static_cast<index_t>((static_cast<std::int64_t>(b) * n) / num_blocks);

    IcFactor f;
    double s = shift;
    const int max_retries = 20;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        if (try_factorize(a, s, bounds, f)) {
            build_transpose(f);
            return f;
        }
        s = (s == 0.0) ? 0.01 : 2.0 * s;
    }
    throw BreakdownError("IC breakdown: no positive-pivot factorization after " +
                         std::to_string(max_retries) + " shift retries (last shift " +
                         std::to_string(s) + ")");
}

void ic_apply(const IcFactor& f, const Vector& r, Vector& z) {
    const index_t n = f.n;
    if (r.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("ic_apply: size mismatch");
    z.resize(static_cast<std::size_t>(n));

    // forward: y = L^-1 r (unit diagonal), then scale by 1/d in place
    for (index_t i = 0; i < n; ++i) {
        double s = r[i];
        for (index_t k = f.l_row_start[i]; k < f.l_row_start[i + 1]; ++k)
            s -= f.l_val[k] * z[f.l_col[k]];
        z[i] = s;
    }
    for (index_t i = 0; i < n; ++i) z[i] /= f.d[i];
    // backward: z = L^-T z using the column-wise copy
    for (index_t i = n - 1; i >= 0; --i) {
        double s = z[i];
        for (index_t k = f.u_row_start[i]; k < f.u_row_start[i + 1]; ++k)
            s -= f.u_val[k] * z[f.u_col[k]];
        z[i] = s;
    }
}

}  // namespace recycg
