#include "recycg/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace recycg {

namespace {

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double nrm2(const Vector& a) { return std::sqrt(dot(a, a)); }

}  // namespace

void TallDense::push_col(Vector c) {
    if (static_cast<index_t>(c.size()) != n)
        throw std::invalid_argument("TallDense: column length mismatch");
    cols.push_back(std::move(c));
}

SmallSym::SmallSym(int dim, std::vector<double> data, int cap) : k(dim), a(std::move(data)) {
    if (k < 0 || k > cap)
        throw std::invalid_argument("SmallSym: dimension " + std::to_string(k) +
                                    " outside [0, " + std::to_string(cap) + "]");
    if (a.size() != static_cast<std::size_t>(k) * k)
        throw std::invalid_argument("SmallSym: data size mismatch");
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const double v = at(i, j);
            const double w = at(j, i);
            if (std::abs(v - w) > 1e-12 * std::max(std::abs(v), std::abs(w)))
                throw std::invalid_argument("SmallSym: asymmetric at (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
        }
    }
}

TallDense mgs_orthonormalize(const TallDense& v, double drop_tol) {
    TallDense e(v.n);
    for (const Vector& src : v.cols) {
        Vector w = src;
        const double norm0 = nrm2(w);
        if (norm0 == 0.0) continue;
        for (const Vector& q : e.cols) {
            const double c = dot(q, w);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
        }
        const double norm1 = nrm2(w);
        if (norm1 <= drop_tol * norm0) continue;  // numerically dependent, drop
        for (double& x : w) x /= norm1;
        e.cols.push_back(std::move(w));
    }
    return e;
}

SymEig sym_eig(const SmallSym& s) {
    const int k = s.k;
    SymEig out;
    if (k == 0) return out;

    std::vector<double> b = s.a;                    // working copy, row-major
    std::vector<double> v(static_cast<std::size_t>(k) * k, 0.0);  // accumulated rotations
    for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i) * k + i] = 1.0;
    auto B = [&](int i, int j) -> double& { return b[static_cast<std::size_t>(i) * k + j]; };
    auto V = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * k + j]; };

    double norm_s = 0.0;
    for (double x : b) norm_s += x * x;
    norm_s = std::sqrt(norm_s);

    const int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q) off += 2.0 * B(p, q) * B(p, q);
        off = std::sqrt(off);
        if (off <= 1e-12 * norm_s) break;

        for (int p = 0; p < k - 1; ++p) {
            for (int q = p + 1; q < k; ++q) {
                const double apq = B(p, q);
                if (apq == 0.0) continue;
                const double theta = (B(q, q) - B(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;

                const double bpp = B(p, p);
                const double bqq = B(q, q);
                B(p, p) = c * c * bpp - 2.0 * sn * c * apq + sn * sn * bqq;
                B(q, q) = sn * sn * bpp + 2.0 * sn * c * apq + c * c * bqq;
                B(p, q) = 0.0;
                B(q, p) = 0.0;
                for (int r = 0; r < k; ++r) {
                    if (r == p || r == q) continue;
                    const double brp = B(r, p);
                    const double brq = B(r, q);
                    B(r, p) = c * brp - sn * brq;
                    B(p, r) = B(r, p);
                    B(r, q) = sn * brp + c * brq;
                    B(q, r) = B(r, q);
                }
                for (int r = 0; r < k; ++r) {
                    const double vrp = V(r, p);
                    const double vrq = V(r, q);
                    V(r, p) = c * vrp - sn * vrq;
                    V(r, q) = sn * vrp + c * vrq;
                }
            }
        }
    }
    if (sweep == max_sweeps)
        throw BreakdownError("sym_eig: Jacobi sweeps did not converge");

    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return B(i, i) < B(j, j); });

    out.values.resize(static_cast<std::size_t>(k));
    out.vectors.resize(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        const int src = order[c];
        out.values[c] = B(src, src);
        Vector vec(static_cast<std::size_t>(k));
        for (int r = 0; r < k; ++r) vec[r] = V(r, src);
        int imax = 0;
        for (int r = 1; r < k; ++r)
            if (std::abs(vec[r]) > std::abs(vec[imax])) imax = r;
        if (vec[imax] < 0.0)
            for (double& x : vec) x = -x;
        out.vectors[c] = std::move(vec);
    }
    return out;
}

SmallChol chol_factor(const SmallSym& s) {
    const int k = s.k;
    SmallChol c;
    c.k = k;
    c.l.assign(static_cast<std::size_t>(k) * k, 0.0);
    auto L = [&](int i, int j) -> double& { return c.l[static_cast<std::size_t>(i) * k + j]; };
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = s.at(i, j);
            for (int p = 0; p < j; ++p) sum -= L(i, p) * L(j, p);
            if (i == j) {
                if (sum <= 0.0)
                    throw BreakdownError("chol_factor: non-positive pivot at row " +
                                         std::to_string(i) + " (matrix not SPD)");
                L(i, i) = std::sqrt(sum);
            } else {
                L(i, j) = sum / L(j, j);
            }
        }
    }
    return c;
}

Vector chol_solve(const SmallChol& c, const Vector& f) {
    const int k = c.k;
    if (f.size() != static_cast<std::size_t>(k))
        throw std::invalid_argument("chol_solve: size mismatch");
    auto L = [&](int i, int j) { return c.l[static_cast<std::size_t>(i) * k + j]; };
    Vector y(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        double s = f[i];
        for (int j = 0; j < i; ++j) s -= L(i, j) * y[j];
        y[i] = s / L(i, i);
    }
    Vector u(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
        double s = y[i];
        for (int j = i + 1; j < k; ++j) s -= L(j, i) * u[j];
        u[i] = s / L(i, i);
    }
    return u;
}

Vector tall_apply(const TallDense& w, const Vector& u) {
    if (u.size() != static_cast<std::size_t>(w.k()))
        throw std::invalid_argument("tall_apply: size mismatch");
    Vector y(static_cast<std::size_t>(w.n), 0.0);
    for (index_t j = 0; j < w.k(); ++j) {
        const double uj = u[j];
        const Vector& col = w.cols[j];
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += uj * col[i];
    }
    return y;
}

Vector tall_t_apply(const TallDense& w, const Vector& y) {
    if (y.size() != static_cast<std::size_t>(w.n))
        throw std::invalid_argument("tall_t_apply: size mismatch");
    Vector f(static_cast<std::size_t>(w.k()));
    for (index_t j = 0; j < w.k(); ++j) f[j] = dot(w.cols[j], y);
    return f;
}

}  // namespace recycg
