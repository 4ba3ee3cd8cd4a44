/// @file driver.hpp
/// @brief Batch sequence runner: k_t solves of A x = b_k with one matrix,
///        recycling the sampled subspace from the first solve.
#pragma once

#include <cstdint>
#include <string>

#include "recycg/cost_model.hpp"
#include "recycg/csr_matrix.hpp"
#include "recycg/pcg.hpp"

namespace recycg {

/// Configuration of one sequence run. Defaults mirror the CLI defaults.
struct RunConfig {
    std::string matrix_path;
    std::string method = "iccg";  ///< iccg | es-sc-iccg | es-d-iccg | cg
    int m = 20;                   ///< sampler slots
    double theta = 1e-3;          ///< Ritz-value selection threshold
    char sampling = 'A';          ///< 'A' or 'B'
    std::string rhs = "ones";     ///< "ones" or "random:<seed>"
    double eps = 1e-8;
    int max_iter = 1000;
    int k_t = 6;    ///< number of solves in the sequence
    int blocks = 1; ///< IC block count (1 = global factorization)
    std::string out_dir;
    bool history = false;
    bool serial = true;  ///< deterministic serial execution (always on)
    bool strict = false; ///< CLI exits 4 when any solve fails to converge
};

/// Per-solve record, solution measured in the original (unscaled) variables.
struct SolveEntry {
    int k = 0;  ///< 1-based solve index
    int iterations = 0;
    bool converged = false;
    double wall_time_s = 0.0;
    double true_relres = 0.0;  ///< ||b - A x|| / ||b|| with the original A, b
};

/// Everything emit_reports writes, plus per-solve histories for the CSVs.
struct SequenceReport {
    RunConfig config;
    index_t n = 0;
    std::int64_t nnz = 0;
    double nnz_av = 0.0;
    int m_bar = 0;    ///< orthonormalized error samples from solve 1
    int m_tilde = 0;  ///< retained Ritz directions (W columns)
    std::vector<double> ritz_values;  ///< full spectrum from solve 1, ascending
    std::vector<SolveEntry> solves;
    std::vector<std::vector<double>> histories;  ///< per solve, when recorded
    double avg_iterations = 0.0;  ///< mean over solves 2..k_t
    double avg_wall_time = 0.0;
    bool has_cost = false;   ///< false when a per-iteration ratio is undefined
    CostComparison cost;     ///< solve-1 baseline vs solves 2..k_t
    double w_build_time_s = 0.0;
    bool acceleration_inactive = false;  ///< es-* method fell back (m_tilde = 0)
};

/// @brief Right-hand side generator.
///
/// kind "ones" ignores the seed. kind "random" draws component-wise uniform
/// [-1, 1) doubles from a mt19937_64 stream; call_index selects the vector
/// within the stream (vector k of a sequence), so (seed, call_index, n)
/// reproduces bitwise and every method sees identical right-hand sides.
Vector make_rhs(const std::string& kind, std::uint64_t seed, index_t n, int call_index = 0);

/// Runs the full sequence on an in-memory matrix (original variables; the
/// driver scales internally and reports solutions in original variables).
SequenceReport run_sequence(const RunConfig& cfg, const CsrMatrix& a_orig);

/// Loads cfg.matrix_path, then runs the sequence.
SequenceReport run_sequence(const RunConfig& cfg);

/// Writes <out_dir>/summary.json and, when cfg.history is set,
/// <out_dir>/solve_<k>.csv with one "iter,relres" line per iteration.
void emit_reports(const SequenceReport& rep, const std::string& out_dir);

}  // namespace recycg
