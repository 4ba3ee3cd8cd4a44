#include "recycg/recycling.hpp"

#include <cmath>

namespace recycg {

namespace {

bool is_zero(const Vector& v) {
    for (double x : v)
        if (x != 0.0) return false;
    return true;
}

}  // namespace

TallDense harvest_errors(const Vector& x_final, const SamplerState& s) {
    TallDense e(static_cast<index_t>(x_final.size()));
    for (int slot = 0; slot < s.m(); ++slot) {
        if (!s.occupied(slot)) continue;
        const Vector& xs = s.slot(slot);
        Vector col(x_final.size());
        for (std::size_t i = 0; i < col.size(); ++i) col[i] = x_final[i] - xs[i];
        if (is_zero(col)) continue;
        e.cols.push_back(std::move(col));
    }
    return e;
}

TallDense harvest_stored(const SamplerState& s) {
    TallDense e(0);
    for (int slot = 0; slot < s.m(); ++slot) {
        if (!s.occupied(slot)) continue;
        const Vector& v = s.slot(slot);
        if (is_zero(v)) continue;
        if (e.cols.empty()) e.n = static_cast<index_t>(v.size());
        e.cols.push_back(v);
    }
    return e;
}

RitzSpectrum rayleigh_ritz(const CsrMatrix& a, const TallDense& e) {
    RitzSpectrum out;
    out.vectors = TallDense(e.n);
    const int k = static_cast<int>(e.k());
    if (k == 0) return out;

    TallDense ae(e.n);
    for (index_t j = 0; j < e.k(); ++j) {
        Vector col;
        spmv(a, e.cols[j], col);
        ae.cols.push_back(std::move(col));
    }

    std::vector<double> s(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j <= i; ++j) {
            double acc = 0.0;
            const Vector& ei = e.cols[i];
            const Vector& aej = ae.cols[j];
            for (std::size_t r = 0; r < ei.size(); ++r) acc += ei[r] * aej[r];
            s[static_cast<std::size_t>(i) * k + j] = acc;
            s[static_cast<std::size_t>(j) * k + i] = acc;
        }
    }

    const SymEig eig = sym_eig(SmallSym(k, std::move(s)));
    out.values = eig.values;
    for (int c = 0; c < k; ++c) {
        Vector ritz(static_cast<std::size_t>(e.n), 0.0);
        for (int j = 0; j < k; ++j) {
            const double t = eig.vectors[c][j];
            const Vector& ej = e.cols[j];
            for (std::size_t r = 0; r < ritz.size(); ++r) ritz[r] += t * ej[r];
        }
        out.vectors.cols.push_back(std::move(ritz));
    }
    return out;
}

AuxBasis build_aux_matrix(const CsrMatrix& a, const TallDense& errors, double theta) {
    AuxBasis out;
    out.w = TallDense(a.n());
    out.spectrum.vectors = TallDense(a.n());

    const TallDense e = mgs_orthonormalize(errors);
    out.m_bar = static_cast<int>(e.k());
    if (out.m_bar == 0) return out;

    out.spectrum = rayleigh_ritz(a, e);
    for (int i = 0; i < out.spectrum.k(); ++i) {
        if (out.spectrum.values[i] < theta)
            out.w.cols.push_back(out.spectrum.vectors.cols[i]);
    }
    return out;
}

}  // namespace recycg
