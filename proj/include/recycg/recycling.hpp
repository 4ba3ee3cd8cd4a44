/// @file recycling.hpp
/// @brief From sampled iterates to an auxiliary spectral basis W:
///        error harvesting, Rayleigh-Ritz projection, Ritz-value selection.
#pragma once

#include "recycg/csr_matrix.hpp"
#include "recycg/dense.hpp"
#include "recycg/sampling.hpp"

namespace recycg {

/// Error vectors x_final - x_tilde^(s) in slot order; unoccupied slots and
/// exactly zero columns are skipped.
TallDense harvest_errors(const Vector& x_final, const SamplerState& s);

/// Raw stored payloads in slot order (residual-sampling variant); unoccupied
/// slots and exactly zero columns are skipped.
TallDense harvest_stored(const SamplerState& s);

/// Ritz values ascending with matching unit-norm Ritz vectors (columns).
struct RitzSpectrum {
    std::vector<double> values;
    TallDense vectors;

    int k() const { return static_cast<int>(values.size()); }
};

/// @brief Rayleigh-Ritz projection of A onto span(E).
///
/// E must be orthonormal (output of mgs_orthonormalize). Forms the k x k
/// projected matrix E^T A E with k SpMV passes, symmetrizes it against
/// rounding, and solves the small eigenproblem. Ritz values of an SPD A lie
/// within its spectrum.
RitzSpectrum rayleigh_ritz(const CsrMatrix& a, const TallDense& e);

/// Result of build_aux_matrix: the selected basis plus the full spectrum it
/// was selected from. m_bar is the orthonormalized sample count, w.k() the
/// number of retained (Ritz value < theta) directions.
struct AuxBasis {
    TallDense w;
    RitzSpectrum spectrum;
    int m_bar = 0;
};

/// Orthonormalizes the error block, projects, and keeps the Ritz vectors
/// whose Ritz value is strictly below theta (ascending order).
AuxBasis build_aux_matrix(const CsrMatrix& a, const TallDense& errors, double theta);

}  // namespace recycg
