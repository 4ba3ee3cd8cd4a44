#include "recycg/pcg.hpp"

#include <chrono>
#include <cmath>

namespace recycg {

namespace {

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double nrm2(const Vector& a) { return std::sqrt(dot(a, a)); }

void check_inputs(const CsrMatrix& a, const Vector& b, const Vector& x,
                  const SolverConfig& cfg) {
    if (!(cfg.eps > 0.0 && cfg.eps < 1.0))
        throw std::invalid_argument("SolverConfig: eps must be in (0, 1)");
    if (cfg.max_iter < 1)
        throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
    const std::size_t n = static_cast<std::size_t>(a.n());
    if (b.size() != n || x.size() != n)
        throw std::invalid_argument("pcg: vector size does not match matrix");
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

SolveReport pcg_solve(const CsrMatrix& a, const Vector& b, const Preconditioner& m,
                      Vector& x, const SolverConfig& cfg,
                      const IterationObserver& observer) {
    check_inputs(a, b, x, cfg);
    SolveReport rep;

    const double bnorm = nrm2(b);
    if (bnorm == 0.0) {  // x = 0 solves exactly
        x.assign(x.size(), 0.0);
        rep.converged = true;
        return rep;
    }

    Vector r;
    spmv(a, x, r);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];

    const auto t0 = Clock::now();
    if (nrm2(r) <= cfg.eps * bnorm) {
        rep.converged = true;
        rep.wall_time = seconds_since(t0);
        return rep;
    }

    Vector z(x.size()), p(x.size()), q(x.size());
    double rho_prev = 0.0;
    for (int i = 1; i <= cfg.max_iter; ++i) {
        m.apply(r, z);
        const double rho = dot(r, z);
        if (rho <= 0.0) throw BreakdownError("pcg: preconditioner not SPD ((r, z) <= 0)");
        if (i == 1) {
            p = z;
        } else {
            const double beta = rho / rho_prev;
            for (std::size_t j = 0; j < p.size(); ++j) p[j] = z[j] + beta * p[j];
        }
        spmv(a, p, q);
        const double pq = dot(p, q);
        if (pq <= 0.0) throw BreakdownError("pcg: matrix not SPD ((p, A p) <= 0)");
        const double alpha = rho / pq;
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += alpha * p[j];
        for (std::size_t j = 0; j < r.size(); ++j) r[j] -= alpha * q[j];
        rho_prev = rho;

        const double relres = nrm2(r) / bnorm;
        if (cfg.record_history) rep.history.push_back(relres);
        rep.iterations = i;
        if (relres <= cfg.eps) {
            rep.converged = true;
            break;
        }
        if (observer) observer(i, relres, x, r);
    }
    rep.wall_time = seconds_since(t0);
    return rep;
}

SolveReport deflated_pcg_solve(const CsrMatrix& a, const Vector& b,
                               const Preconditioner& m, const DeflationOperator& defl,
                               Vector& x, const SolverConfig& cfg) {
    check_inputs(a, b, x, cfg);
    if (!defl.empty() && defl.w.n != a.n())
        throw std::invalid_argument("deflated_pcg_solve: W row count does not match A");
    SolveReport rep;

    const double bnorm = nrm2(b);
    if (bnorm == 0.0) {
        x.assign(x.size(), 0.0);
        rep.converged = true;
        return rep;
    }

    Vector r;
    spmv(a, x, r);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    r = defl.project_pt(r);

    const auto t0 = Clock::now();
    bool done = nrm2(r) <= cfg.eps * bnorm;
    if (!done) {
        Vector z(x.size()), p(x.size()), q(x.size());
        double rho_prev = 0.0;
        for (int i = 1; i <= cfg.max_iter; ++i) {
            m.apply(r, z);
            const double rho = dot(r, z);
            if (rho <= 0.0)
                throw BreakdownError("deflated pcg: preconditioner not SPD ((r, z) <= 0)");
            if (i == 1) {
                p = z;
            } else {
                const double beta = rho / rho_prev;
                for (std::size_t j = 0; j < p.size(); ++j) p[j] = z[j] + beta * p[j];
            }
            spmv(a, p, q);
            q = defl.project_pt(q);
            const double pq = dot(p, q);
            if (pq <= 0.0)
                throw BreakdownError("deflated pcg: projected operator not SPD ((p, P^T A p) <= 0)");
            const double alpha = rho / pq;
            for (std::size_t j = 0; j < x.size(); ++j) x[j] += alpha * p[j];
            for (std::size_t j = 0; j < r.size(); ++j) r[j] -= alpha * q[j];
            rho_prev = rho;

            const double relres = nrm2(r) / bnorm;
            if (cfg.record_history) rep.history.push_back(relres);
            rep.iterations = i;
            if (relres <= cfg.eps) {
                rep.converged = true;
                break;
            }
        }
    } else {
        rep.converged = true;
    }

    if (!defl.empty()) {
        // x = P x + W (W^T A W)^-1 W^T b
        x = defl.project_p(x);
        const Vector wb = defl.direct_component(b);
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += wb[j];
    }
    rep.wall_time = seconds_since(t0);
    return rep;
}

}  // namespace recycg
