#include "recycg/cost_model.hpp"

namespace recycg {

namespace {

void check(const CostParams& p) {
    if (p.n < 0 || p.nnz < 0 || p.m_tilde < 0 || p.bandwidth <= 0)
        throw std::invalid_argument("CostParams: sizes must be >= 0, bandwidth > 0");
}

}  // namespace

double t_cg(const CostParams& p) {
    check(p);
    return (76.0 * p.n + 12.0 * p.nnz) / p.bandwidth;
}

double t_iccg(const CostParams& p) {
    check(p);
    return (100.0 * p.n + 24.0 * p.nnz) / p.bandwidth;
}

double t_sciccg(const CostParams& p) {
    check(p);
    return (116.0 * p.n + 16.0 * p.m_tilde * p.n + 24.0 * p.nnz) / p.bandwidth;
}

double gamma_sciccg(double m_tilde, double nnz_av) {
    if (m_tilde < 0 || nnz_av < 0)
        throw std::invalid_argument("gamma_sciccg: arguments must be >= 0");
    return (116.0 + 16.0 * m_tilde + 24.0 * nnz_av) / (100.0 + 24.0 * nnz_av);
}

CostComparison compare_measured(const SolveReport& baseline, const SolveReport& accelerated,
                                double m_tilde, double nnz_av) {
    if (baseline.iterations <= 0 || accelerated.iterations <= 0)
        throw std::invalid_argument("compare_measured: reports need at least one iteration");
    if (baseline.wall_time <= 0.0)
        throw std::invalid_argument("compare_measured: baseline wall time must be positive");
    CostComparison c;
    c.predicted = gamma_sciccg(m_tilde, nnz_av);
    const double per_base = baseline.wall_time / baseline.iterations;
    const double per_acc = accelerated.wall_time / accelerated.iterations;
    c.measured = per_acc / per_base;
    c.rel_error = (c.measured - c.predicted) / c.predicted;
    return c;
}

}  // namespace recycg
