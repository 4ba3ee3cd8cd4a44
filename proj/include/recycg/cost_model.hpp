/// @file cost_model.hpp
/// @brief Memory-traffic iteration cost model and predicted/measured
///        per-iteration time ratios.
#pragma once

#include "recycg/pcg.hpp"

namespace recycg {

/// Problem size and machine parameters for one solver iteration.
/// bandwidth is the sustained memory bandwidth; 1.0 gives normalized times.
struct CostParams {
    double n = 0.0;
    double nnz = 0.0;
    double m_tilde = 0.0;
    double bandwidth = 1.0;
};

/// Plain CG: (76 n + 12 nnz) / bandwidth.
double t_cg(const CostParams& p);

/// IC-preconditioned CG: (100 n + 24 nnz) / bandwidth.
double t_iccg(const CostParams& p);

/// Subspace-corrected ICCG: (116 n + 16 m_tilde n + 24 nnz) / bandwidth.
double t_sciccg(const CostParams& p);

/// Predicted per-iteration slowdown of the corrected solver over ICCG:
/// (116 + 16 m_tilde + 24 nnz_av) / (100 + 24 nnz_av). Also applies to the
/// deflated solver, whose per-iteration work is the same.
double gamma_sciccg(double m_tilde, double nnz_av);

struct CostComparison {
    double predicted = 0.0;
    double measured = 0.0;
    double rel_error = 0.0;  ///< (measured - predicted) / predicted
};

/// Measured gamma from two solve reports: the accelerated per-iteration time
/// over the baseline per-iteration time. Either report with zero iterations
/// or zero baseline time is rejected.
CostComparison compare_measured(const SolveReport& baseline, const SolveReport& accelerated,
                                double m_tilde, double nnz_av);

}  // namespace recycg
