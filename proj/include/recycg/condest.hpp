/// @file condest.hpp
/// @brief Condition number estimation embedded in a PCG solve.
#pragma once

#include <cstdint>

#include "recycg/pcg.hpp"

namespace recycg {

/// @brief Spectral bounds harvested from one PCG solve.
///
/// lambda_max comes from a power iteration that rides along the CG loop (its
/// SpMV is fused with the CG SpMV, one pass over A per iteration) and is
/// evaluated as the Rayleigh quotient of the final power vector. lambda_min
/// is the smallest Ritz value of sampled solution errors. kappa is their
/// ratio. When no error samples survive (m_bar = 0, e.g. the solve converged
/// before any snapshot), lambda_min_available is false and lambda_min/kappa
/// are NaN.
struct CondEstimate {
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    double kappa = 0.0;
    int power_iterations = 0;

    /// True when the power Rayleigh quotient still moved by more than 1e-4
    /// relative over the last 5 iterations (or fewer than 5 ran).
    bool power_unsettled = true;

    bool lambda_min_available = false;
    std::vector<double> ritz_values;  ///< full harvested spectrum, ascending
};

struct CondestResult {
    SolveReport solve;
    CondEstimate estimate;
};

/// @brief PCG solve with a piggybacked condition estimate.
///
/// Runs the same recurrence as pcg_solve (the returned x is bit-identical
/// for identical inputs; the power iteration never feeds back into CG),
/// sampling iterates with a method-A sampler of m_samples slots. The power
/// start vector is uniform in [-1, 1) from v0_seed, normalized. One extra
/// SpMV after the loop evaluates lambda_max.
CondestResult pcg_with_condest(const CsrMatrix& a, const Vector& b, const Preconditioner& m,
                               Vector& x, const SolverConfig& cfg, int m_samples,
                               std::uint64_t v0_seed = 42);

}  // namespace recycg
