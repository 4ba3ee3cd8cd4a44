/// Shared fixtures for the test suite: a dense SPD matrix with a handful of
/// isolated small eigenvalues (known spectrum by construction), and a random
/// sparse diagonally dominant SPD generator for property tests.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "recycg/csr_matrix.hpp"
#include "recycg/dense.hpp"
#include "recycg/rng.hpp"

namespace testsup {

struct SpectralFixture {
    recycg::CsrMatrix a;
    std::vector<double> lambda;  ///< eigenvalues, the small ones first
    recycg::TallDense q;         ///< matching orthonormal eigenvectors
};

/// A = Q diag(lambda) Q^T with Q orthonormalized from a seeded random block
/// and lambda = smalls followed by uniform draws in [0.5, 1.5). Dense, exactly
/// symmetric (upper triangle mirrored), positive diagonal.
inline SpectralFixture make_spectral_fixture(recycg::index_t n = 400,
                                             std::vector<double> smalls = {1e-4, 3e-4, 1e-3},
                                             std::uint64_t seed = 12345) {
    using recycg::index_t;
    const std::size_t sz = static_cast<std::size_t>(n);

    recycg::UniformPm1 rng(seed);
    recycg::TallDense raw(n);
    for (index_t j = 0; j < n; ++j) raw.push_col(rng.draw(sz));
    recycg::TallDense q = recycg::mgs_orthonormalize(raw, 1e-12);
    if (q.k() != n) throw std::runtime_error("fixture: random block lost rank");

    std::vector<double> lam = smalls;
    while (lam.size() < sz) lam.push_back(1.0 + 0.5 * rng.next());

    std::vector<double> dense(sz * sz, 0.0);
    for (std::size_t k = 0; k < sz; ++k) {
        const recycg::Vector& qk = q.cols[k];
        const double lk = lam[k];
        for (std::size_t i = 0; i < sz; ++i) {
            const double f = lk * qk[i];
            for (std::size_t j = i; j < sz; ++j) dense[i * sz + j] += f * qk[j];
        }
    }

    std::vector<index_t> row_start(sz + 1);
    std::vector<index_t> col_idx(sz * sz);
    std::vector<double> values(sz * sz);
    for (std::size_t i = 0; i < sz; ++i) {
        row_start[i] = static_cast<index_t>(i * sz);
        for (std::size_t j = 0; j < sz; ++j) {
            col_idx[i * sz + j] = static_cast<index_t>(j);
            values[i * sz + j] = i <= j ? dense[i * sz + j] : dense[j * sz + i];
        }
    }
    row_start[sz] = static_cast<index_t>(sz * sz);

    SpectralFixture f{recycg::CsrMatrix(n, std::move(row_start), std::move(col_idx),
                                        std::move(values)),
                      std::move(lam), std::move(q)};
    return f;
}

/// Random sparse SPD matrix: symmetric off-diagonal pattern with the given
/// density, values in [-1, 1), diagonal = row absolute sum + 1 + uniform[0,1)
/// (strictly diagonally dominant, hence SPD).
inline recycg::CsrMatrix random_sdd_spd(recycg::index_t n, double density, std::uint64_t seed) {
    using recycg::index_t;
    recycg::UniformPm1 rng(seed);
    std::vector<std::map<index_t, double>> rows(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i)
        for (index_t j = i + 1; j < n; ++j) {
            const double u01 = 0.5 * (rng.next() + 1.0);
            if (u01 < density) {
                const double v = rng.next();
                rows[static_cast<std::size_t>(i)][j] = v;
                rows[static_cast<std::size_t>(j)][i] = v;
            }
        }
    for (index_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (const auto& [j, v] : rows[static_cast<std::size_t>(i)]) s += std::abs(v);
        rows[static_cast<std::size_t>(i)][i] = s + 1.0 + 0.5 * (rng.next() + 1.0);
    }
    std::vector<index_t> row_start{0};
    std::vector<index_t> col_idx;
    std::vector<double> values;
    for (index_t i = 0; i < n; ++i) {
        for (const auto& [j, v] : rows[static_cast<std::size_t>(i)]) {
            col_idx.push_back(j);
            values.push_back(v);
        }
        row_start.push_back(static_cast<index_t>(col_idx.size()));
    }
    return recycg::CsrMatrix(n, std::move(row_start), std::move(col_idx), std::move(values));
}

inline double dot(const recycg::Vector& a, const recycg::Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const recycg::Vector& a) { return std::sqrt(dot(a, a)); }

inline double true_relres(const recycg::CsrMatrix& a, const recycg::Vector& b,
                          const recycg::Vector& x) {
    recycg::Vector ax;
    recycg::spmv(a, x, ax);
    double rr = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i) {
        const double d = b[i] - ax[i];
        rr += d * d;
    }
    return std::sqrt(rr) / norm(b);
}

}  // namespace testsup
