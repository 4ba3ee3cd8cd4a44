#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracle_eig.hpp"
#include "recycg/deflation.hpp"
#include "recycg/recycling.hpp"
#include "recycg/rng.hpp"
#include "test_support.hpp"

using namespace recycg;

TEST_CASE("error harvesting subtracts stored iterates from the final one") {
    SamplerState s = SamplerState::method_a(3, 100);
    s.offer(1, 0.0, Vector{1.0, 0.0});
    s.offer(2, 0.0, Vector{0.0, 1.0});
    s.offer(3, 0.0, Vector{2.0, 2.0});
    const Vector x_final{2.0, 2.0};
    const TallDense e = harvest_errors(x_final, s);
    // the slot holding x_final itself yields an exactly zero error: skipped
    REQUIRE(e.k() == 2);
    for (int j = 0; j < e.k(); ++j) CHECK(testsup::norm(e.cols[static_cast<std::size_t>(j)]) > 0.0);
}

TEST_CASE("harvesting an empty sampler yields an empty block") {
    SamplerState s = SamplerState::method_a(3, 100);
    const TallDense e = harvest_errors(Vector{1.0, 2.0}, s);
    CHECK(e.k() == 0);
    const TallDense raw = harvest_stored(s);
    CHECK(raw.k() == 0);
}

TEST_CASE("raw harvesting returns payloads untouched") {
    SamplerState s = SamplerState::method_b(2, 1e-8);
    s.offer(5, 1e-4, Vector{3.0, 4.0});
    const TallDense raw = harvest_stored(s);
    REQUIRE(raw.k() == 1);
    CHECK(raw.cols[0] == Vector{3.0, 4.0});
}

TEST_CASE("projection onto leading unit vectors reproduces the leading submatrix spectrum") {
    const CsrMatrix a = testsup::random_sdd_spd(40, 0.2, 101);
    const int k = 5;
    TallDense e(40);
    for (int j = 0; j < k; ++j) {
        Vector col(40, 0.0);
        col[static_cast<std::size_t>(j)] = 1.0;
        e.push_col(col);
    }
    const RitzSpectrum rs = rayleigh_ritz(a, e);
    REQUIRE(rs.k() == k);

    // reference: dense eigenvalues of the leading k x k block
    std::vector<double> sub(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub[static_cast<std::size_t>(i) * k + j] = a.at(i, j);
    const std::vector<double> ref = oracle::sym_eigenvalues(sub, k);
    for (int i = 0; i < k; ++i)
        CHECK(rs.values[static_cast<std::size_t>(i)] ==
              doctest::Approx(ref[static_cast<std::size_t>(i)]).epsilon(1e-12));

    // projected vectors stay in the span of the basis: entries beyond k vanish
    for (int j = 0; j < k; ++j)
        for (std::size_t r = static_cast<std::size_t>(k); r < 40; ++r)
            CHECK(rs.vectors.cols[static_cast<std::size_t>(j)][r] == 0.0);
}

TEST_CASE("projected eigenvalues of an SPD matrix stay inside its spectrum") {
    const CsrMatrix a = testsup::random_sdd_spd(60, 0.1, 103);
    const std::vector<double> full = oracle::sym_eigenvalues(a);
    UniformPm1 rng(9);
    TallDense v(60);
    for (int j = 0; j < 6; ++j) v.push_col(rng.draw(60));
    const TallDense e = mgs_orthonormalize(v);
    const RitzSpectrum rs = rayleigh_ritz(a, e);
    for (double val : rs.values) {
        CHECK(val >= full.front() * (1.0 - 1e-12));
        CHECK(val <= full.back() * (1.0 + 1e-12));
    }
}

TEST_CASE("basis construction keeps exactly the directions below the threshold") {
    const testsup::SpectralFixture fx =
        testsup::make_spectral_fixture(50, {1e-4, 5e-4, 2e-3}, 107);
    // feed the exact eigenvectors as "errors": Ritz values become eigenvalues
    TallDense errors(50);
    for (int j = 0; j < 3; ++j) errors.push_col(fx.q.cols[static_cast<std::size_t>(j)]);
    const AuxBasis basis = build_aux_matrix(fx.a, errors, 1e-3);
    CHECK(basis.m_bar == 3);
    CHECK(basis.spectrum.k() == 3);
    CHECK(basis.w.k() == 2);  // 1e-4 and 5e-4 pass, 2e-3 does not
    CHECK(basis.spectrum.values[0] == doctest::Approx(1e-4).epsilon(1e-8));
    CHECK(basis.spectrum.values[1] == doctest::Approx(5e-4).epsilon(1e-8));
    CHECK(basis.spectrum.values[2] == doctest::Approx(2e-3).epsilon(1e-8));
}

TEST_CASE("threshold selection is strict") {
    const testsup::SpectralFixture fx = testsup::make_spectral_fixture(30, {1e-3}, 109);
    TallDense errors(30);
    errors.push_col(fx.q.cols[0]);
    // theta equal to the Ritz value: strictly-below keeps nothing... up to
    // rounding of the Ritz value itself, so place theta just below and above
    const AuxBasis below = build_aux_matrix(fx.a, errors, 0.999e-3);
    CHECK(below.w.k() == 0);
    const AuxBasis above = build_aux_matrix(fx.a, errors, 1.001e-3);
    CHECK(above.w.k() == 1);
}

TEST_CASE("a vanishing threshold deactivates the basis but keeps the spectrum report") {
    const testsup::SpectralFixture fx = testsup::make_spectral_fixture(30, {1e-4}, 113);
    UniformPm1 rng(10);
    TallDense errors(30);
    errors.push_col(rng.draw(30));
    errors.push_col(rng.draw(30));
    const AuxBasis basis = build_aux_matrix(fx.a, errors, 1e-30);
    CHECK(basis.w.k() == 0);
    CHECK(basis.m_bar == 2);
    CHECK(basis.spectrum.k() == 2);
}

TEST_CASE("empty error block produces an empty basis") {
    const CsrMatrix a = testsup::random_sdd_spd(20, 0.2, 127);
    const AuxBasis basis = build_aux_matrix(a, TallDense(20), 1e-2);
    CHECK(basis.w.k() == 0);
    CHECK(basis.m_bar == 0);
    CHECK(basis.spectrum.k() == 0);
}

TEST_CASE("deflation projector annihilates the basis image") {
    const CsrMatrix a = testsup::random_sdd_spd(80, 0.08, 131);
    UniformPm1 rng(11);
    TallDense w(80);
    for (int j = 0; j < 4; ++j) w.push_col(rng.draw(80));
    const DeflationOperator op = build_deflation_operator(a, w);
    REQUIRE(op.k() == 4);

    // P^T (A W u) = 0 for any coefficient vector u
    const Vector u{0.3, -1.2, 0.5, 2.0};
    const Vector awu = tall_apply(op.aw, u);
    const Vector projected = op.project_pt(awu);
    const double scale = a.max_abs();
    for (double v : projected) CHECK(std::abs(v) <= 1e-10 * scale);
}

TEST_CASE("deflation projector is idempotent") {
    const CsrMatrix a = testsup::random_sdd_spd(60, 0.1, 137);
    UniformPm1 rng(12);
    TallDense w(60);
    for (int j = 0; j < 3; ++j) w.push_col(rng.draw(60));
    const DeflationOperator op = build_deflation_operator(a, w);
    const Vector y = rng.draw(60);
    const Vector once = op.project_pt(y);
    const Vector twice = op.project_pt(once);
    for (std::size_t i = 0; i < 60; ++i)
        CHECK(twice[i] == doctest::Approx(once[i]).epsilon(1e-11));
}

TEST_CASE("direct component solves the coarse system") {
    const CsrMatrix a = testsup::random_sdd_spd(50, 0.12, 139);
    UniformPm1 rng(13);
    TallDense w(50);
    for (int j = 0; j < 5; ++j) w.push_col(rng.draw(50));
    const DeflationOperator op = build_deflation_operator(a, w);
    const Vector b = rng.draw(50);
    const Vector xc = op.direct_component(b);
    // residual of the coarse part is orthogonal to the basis: W^T (b - A xc) = 0
    Vector axc;
    spmv(a, xc, axc);
    Vector resid(50);
    for (std::size_t i = 0; i < 50; ++i) resid[i] = b[i] - axc[i];
    const Vector f = tall_t_apply(op.w, resid);
    for (double v : f) CHECK(std::abs(v) <= 1e-10 * testsup::norm(b));
}

TEST_CASE("deflation rejects a rank-deficient basis") {
    const CsrMatrix a = testsup::random_sdd_spd(20, 0.2, 149);
    UniformPm1 rng(14);
    TallDense w(20);
    const Vector c = rng.draw(20);
    w.push_col(c);
    w.push_col(c);
    CHECK_THROWS_AS(build_deflation_operator(a, w), BreakdownError);
}
