/// @file pcg.hpp
/// @brief Preconditioned conjugate gradient, plain and deflated.
#pragma once

#include <functional>

#include "recycg/csr_matrix.hpp"
#include "recycg/deflation.hpp"
#include "recycg/preconditioner.hpp"

namespace recycg {

struct SolverConfig {
    double eps = 1e-8;     ///< relative residual tolerance, must be in (0, 1)
    int max_iter = 1000;   ///< iteration cap, >= 1
    bool record_history = false;  ///< keep per-iteration relres in the report
};

struct SolveReport {
    int iterations = 0;           ///< completed iterations (updates of x)
    std::vector<double> history;  ///< ||r_i|| / ||b||, one entry per iteration
    bool converged = false;
    double wall_time = 0.0;       ///< seconds around the iteration loop only
};

/// Called after each non-final iteration with the current iterate and
/// recurrence residual. Used to feed samplers; must not modify the solve.
using IterationObserver =
    std::function<void(int iter, double relres, const Vector& x, const Vector& r)>;

/// @brief PCG for SPD A: terminates when ||r_i||_2 <= eps ||b||_2.
///
/// x carries the initial guess in and the solution out. The residual is the
/// recurrence residual. A zero right-hand side returns x = 0 immediately.
/// Non-convergence within max_iter is reported, not thrown; a non-positive
/// (p, A p) or (r, z) raises BreakdownError. The observer, when given, is
/// invoked after the convergence test of each continuing iteration, so the
/// final iterate is never offered.
SolveReport pcg_solve(const CsrMatrix& a, const Vector& b, const Preconditioner& m,
                      Vector& x, const SolverConfig& cfg,
                      const IterationObserver& observer = {});

/// @brief Deflated PCG over the projected operator P^T A.
///
/// Runs the PCG recurrence on r_0 = P^T (b - A x_0) with every A p projected
/// through P^T, then recombines x = P x_i + W (W^T A W)^-1 W^T b. The
/// convergence test compares the deflated residual against eps ||b||_2 with
/// the original b. With an empty W this reproduces pcg_solve iterate for
/// iterate, bit for bit.
SolveReport deflated_pcg_solve(const CsrMatrix& a, const Vector& b,
                               const Preconditioner& m, const DeflationOperator& defl,
                               Vector& x, const SolverConfig& cfg);

}  // namespace recycg
