#include "recycg/condest.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <limits>

#include "recycg/recycling.hpp"
#include "recycg/rng.hpp"
#include "recycg/sampling.hpp"

namespace recycg {

namespace {

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double nrm2(const Vector& a) { return std::sqrt(dot(a, a)); }

using Clock = std::chrono::steady_clock;

}  // namespace

CondestResult pcg_with_condest(const CsrMatrix& a, const Vector& b, const Preconditioner& m,
                               Vector& x, const SolverConfig& cfg, int m_samples,
                               std::uint64_t v0_seed) {
    if (!(cfg.eps > 0.0 && cfg.eps < 1.0))
        throw std::invalid_argument("SolverConfig: eps must be in (0, 1)");
    if (cfg.max_iter < 1)
        throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
    const std::size_t n = static_cast<std::size_t>(a.n());
    if (b.size() != n || x.size() != n)
        throw std::invalid_argument("pcg_with_condest: vector size does not match matrix");

    CondestResult out;
    out.estimate.lambda_min = std::numeric_limits<double>::quiet_NaN();
    out.estimate.kappa = std::numeric_limits<double>::quiet_NaN();

    SamplerState sampler = SamplerState::method_a(m_samples, cfg.max_iter);

    // power start vector: uniform in [-1, 1), normalized
    UniformPm1 rng(v0_seed);
    Vector v = rng.draw(n);
    {
        const double nv = nrm2(v);
        for (double& e : v) e /= nv;
    }

    const double bnorm = nrm2(b);
    if (bnorm == 0.0) {
        x.assign(x.size(), 0.0);
        out.solve.converged = true;
        Vector av;
        spmv(a, v, av);
        out.estimate.lambda_max = dot(v, av);
        return out;
    }

    Vector r;
    spmv(a, x, r);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];

    std::deque<double> quotients;  // power Rayleigh quotients, last 5 kept

    const auto t0 = Clock::now();
    const bool already = nrm2(r) <= cfg.eps * bnorm;
    if (!already) {
        Vector z(n), p(n), q(n), v_next(n);
        double rho_prev = 0.0;
        for (int i = 1; i <= cfg.max_iter; ++i) {
            m.apply(r, z);
            const double rho = dot(r, z);
            if (rho <= 0.0)
                throw BreakdownError("pcg_with_condest: preconditioner not SPD ((r, z) <= 0)");
            if (i == 1) {
                p = z;
            } else {
                const double beta = rho / rho_prev;
                for (std::size_t j = 0; j < p.size(); ++j) p[j] = z[j] + beta * p[j];
            }
            // one pass over A feeds both the CG step and the power step
            spmv_dual(a, p, v, q, v_next);
            const double quotient = dot(v, v_next);  // Rayleigh quotient of the unit v
            quotients.push_back(quotient);
            if (quotients.size() > 5) quotients.pop_front();
            const double vn = nrm2(v_next);
            if (vn == 0.0) throw BreakdownError("pcg_with_condest: power vector vanished");
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = v_next[j] / vn;

            const double pq = dot(p, q);
            if (pq <= 0.0)
                throw BreakdownError("pcg_with_condest: matrix not SPD ((p, A p) <= 0)");
            const double alpha = rho / pq;
            for (std::size_t j = 0; j < x.size(); ++j) x[j] += alpha * p[j];
            for (std::size_t j = 0; j < r.size(); ++j) r[j] -= alpha * q[j];
            rho_prev = rho;

            const double relres = nrm2(r) / bnorm;
            if (cfg.record_history) out.solve.history.push_back(relres);
            out.solve.iterations = i;
            if (relres <= cfg.eps) {
                out.solve.converged = true;
                break;
            }
            sampler.offer(i, relres, x);
        }
    } else {
        out.solve.converged = true;
    }
    out.solve.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();

    // lambda_max: Rayleigh quotient of the final unit power vector
    {
        Vector av;
        spmv(a, v, av);
        out.estimate.lambda_max = dot(v, av);
    }
    out.estimate.power_iterations = out.solve.iterations;
    if (quotients.size() >= 5) {
        double lo = quotients.front(), hi = quotients.front();
        for (double qv : quotients) {
            lo = std::min(lo, qv);
            hi = std::max(hi, qv);
        }
        out.estimate.power_unsettled = (hi - lo) > 1e-4 * std::abs(quotients.back());
    }

    // lambda_min: smallest Ritz value of the harvested errors
    const TallDense errors = harvest_errors(x, sampler);
    const TallDense e = mgs_orthonormalize(errors);
    if (e.k() > 0) {
        const RitzSpectrum spec = rayleigh_ritz(a, e);
        out.estimate.ritz_values = spec.values;
        out.estimate.lambda_min = spec.values.front();
        out.estimate.lambda_min_available = true;
        out.estimate.kappa = out.estimate.lambda_max / out.estimate.lambda_min;
    }
    return out;
}

}  // namespace recycg
