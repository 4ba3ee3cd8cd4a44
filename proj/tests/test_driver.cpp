#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "recycg/driver.hpp"
#include "recycg/matrix_market.hpp"
#include "recycg/rng.hpp"
#include "test_support.hpp"

using namespace recycg;
namespace fs = std::filesystem;

namespace {

RunConfig base_config() {
    RunConfig cfg;
    cfg.matrix_path = "(in-memory)";
    cfg.method = "iccg";
    cfg.k_t = 3;
    return cfg;
}

}  // namespace

TEST_CASE("right-hand side generator is deterministic and seed-separated") {
    const Vector ones = make_rhs("ones", 0, 5);
    CHECK(ones == Vector{1, 1, 1, 1, 1});

    const Vector r0 = make_rhs("random", 7, 10, 0);
    UniformPm1 rng(7);
    const Vector expect0 = rng.draw(10);
    CHECK(r0 == expect0);

    // call_index k skips k*n draws of the same stream
    const Vector r2 = make_rhs("random", 7, 10, 2);
    UniformPm1 rng2(7);
    rng2.skip(20);
    const Vector expect2 = rng2.draw(10);
    CHECK(r2 == expect2);

    for (double v : r0) {
        CHECK(v >= -1.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("sequence runner validates its configuration up front") {
    const CsrMatrix a = gen_laplacian_2d(4);
    RunConfig cfg = base_config();
    cfg.method = "unknown";
    CHECK_THROWS_AS(run_sequence(cfg, a), ParseError);
    cfg = base_config();
    cfg.rhs = "random:";
    CHECK_THROWS_AS(run_sequence(cfg, a), ParseError);
    cfg = base_config();
    cfg.rhs = "gaussian";
    CHECK_THROWS_AS(run_sequence(cfg, a), ParseError);
    cfg = base_config();
    cfg.blocks = 17;  // larger than n = 16
    CHECK_THROWS_AS(run_sequence(cfg, a), ParseError);
    cfg = base_config();
    cfg.theta = 0.0;
    CHECK_THROWS_AS(run_sequence(cfg, a), ParseError);
    cfg = base_config();
    cfg.eps = 2.0;
    CHECK_THROWS_AS(run_sequence(cfg, a), ParseError);
    cfg = base_config();
    cfg.sampling = 'C';
    CHECK_THROWS_AS(run_sequence(cfg, a), ParseError);
    cfg = base_config();
    cfg.m = 1;  // scheme A needs at least two slots
    CHECK_THROWS_AS(run_sequence(cfg, a), ParseError);
    cfg = base_config();
    cfg.k_t = 0;
    CHECK_THROWS_AS(run_sequence(cfg, a), ParseError);
}

TEST_CASE("baseline sequence solves every system to tolerance") {
    const CsrMatrix a = gen_laplacian_2d(8);
    RunConfig cfg = base_config();
    cfg.rhs = "random:11";
    const SequenceReport rep = run_sequence(cfg, a);
    CHECK(rep.n == 64);
    CHECK(rep.nnz == a.nnz());
    REQUIRE(rep.solves.size() == 3);
    for (std::size_t i = 0; i < rep.solves.size(); ++i) {
        CHECK(rep.solves[i].k == static_cast<int>(i) + 1);
        CHECK(rep.solves[i].converged);
        CHECK(rep.solves[i].iterations > 0);
        // residual verified in the original (unscaled) variables
        CHECK(rep.solves[i].true_relres <= 1e-6);
    }
    CHECK(rep.m_tilde == 0);
    CHECK(rep.ritz_values.empty());
    CHECK_FALSE(rep.has_cost);
    CHECK(rep.histories.empty());
    const double expect_avg =
        (rep.solves[1].iterations + rep.solves[2].iterations) / 2.0;
    CHECK(rep.avg_iterations == doctest::Approx(expect_avg));
}

TEST_CASE("recycling sequence builds a basis and accelerates the remaining solves") {
    const testsup::SpectralFixture fx =
        testsup::make_spectral_fixture(80, {1e-4, 3e-4, 1e-3}, 307);
    RunConfig cfg = base_config();
    cfg.method = "es-sc-iccg";
    cfg.rhs = "random:1";
    cfg.theta = 1e-2;
    cfg.m = 20;
    cfg.blocks = 8;
    cfg.k_t = 4;
    const SequenceReport rep = run_sequence(cfg, fx.a);

    RunConfig base = cfg;
    base.method = "iccg";
    const SequenceReport ref = run_sequence(base, fx.a);

    CHECK(rep.m_bar > 0);
    CHECK(rep.m_tilde > 0);
    CHECK(rep.m_tilde <= rep.m_bar);
    CHECK_FALSE(rep.acceleration_inactive);
    CHECK(rep.w_build_time_s >= 0.0);
    // spectrum is reported ascending
    for (std::size_t i = 1; i < rep.ritz_values.size(); ++i)
        CHECK(rep.ritz_values[i - 1] <= rep.ritz_values[i]);
    // solve 1 is identical in both runs (same method, same rhs)
    CHECK(rep.solves[0].iterations == ref.solves[0].iterations);
    // later solves are faster with the subspace in place
    CHECK(rep.avg_iterations < ref.avg_iterations);
    for (const SolveEntry& e : rep.solves) {
        CHECK(e.converged);
        CHECK(e.true_relres <= 1e-6);
    }
    REQUIRE(rep.has_cost);
    CHECK(rep.cost.predicted > 1.0);
    CHECK(rep.cost.measured > 0.0);

    // the deflated variant matches the corrected one almost iteration for
    // iteration
    RunConfig dfl = cfg;
    dfl.method = "es-d-iccg";
    const SequenceReport rep_d = run_sequence(dfl, fx.a);
    CHECK(rep_d.m_tilde == rep.m_tilde);
    REQUIRE(rep_d.solves.size() == rep.solves.size());
    for (std::size_t i = 1; i < rep.solves.size(); ++i) {
        const int diff = rep.solves[i].iterations - rep_d.solves[i].iterations;
        CHECK(std::abs(diff) <= 2);
    }
}

TEST_CASE("a hopeless threshold turns recycling off and reproduces the baseline") {
    const testsup::SpectralFixture fx = testsup::make_spectral_fixture(60, {1e-4}, 311);
    RunConfig cfg = base_config();
    cfg.method = "es-d-iccg";
    cfg.rhs = "random:2";
    cfg.theta = 1e-30;
    cfg.blocks = 6;
    const SequenceReport rep = run_sequence(cfg, fx.a);
    CHECK(rep.m_tilde == 0);
    CHECK(rep.acceleration_inactive);

    RunConfig base = cfg;
    base.method = "iccg";
    const SequenceReport ref = run_sequence(base, fx.a);
    REQUIRE(rep.solves.size() == ref.solves.size());
    for (std::size_t i = 0; i < rep.solves.size(); ++i)
        CHECK(rep.solves[i].iterations == ref.solves[i].iterations);
}

TEST_CASE("plain cg method never builds a factorization or a basis") {
    const CsrMatrix a = gen_laplacian_2d(6);
    RunConfig cfg = base_config();
    cfg.method = "cg";
    cfg.rhs = "random:3";
    const SequenceReport rep = run_sequence(cfg, a);
    CHECK(rep.m_tilde == 0);
    for (const SolveEntry& e : rep.solves) CHECK(e.converged);
}

TEST_CASE("history recording produces one residual per iteration") {
    const CsrMatrix a = gen_laplacian_2d(6);
    RunConfig cfg = base_config();
    cfg.history = true;
    cfg.rhs = "random:4";
    const SequenceReport rep = run_sequence(cfg, a);
    REQUIRE(rep.histories.size() == rep.solves.size());
    for (std::size_t i = 0; i < rep.histories.size(); ++i) {
        CHECK(static_cast<int>(rep.histories[i].size()) == rep.solves[i].iterations);
        CHECK(rep.histories[i].back() <= cfg.eps);
    }
}

TEST_CASE("report emission writes parseable json and per-solve traces") {
    const CsrMatrix a = gen_laplacian_2d(6);
    RunConfig cfg = base_config();
    cfg.history = true;
    cfg.rhs = "random:5";
    const SequenceReport rep = run_sequence(cfg, a);

    const fs::path dir = fs::temp_directory_path() / "recycg_test_reports";
    fs::remove_all(dir);
    emit_reports(rep, dir.string());

    std::ifstream js(dir / "summary.json");
    REQUIRE(js.good());
    nlohmann::json j;
    js >> j;
    CHECK(j["n"] == 36);
    CHECK(j["config"]["method"] == "iccg");
    CHECK(j["solves"].size() == 3);
    CHECK(j["solves"][0]["k"] == 1);
    CHECK(j["solves"][0]["converged"] == true);
    CHECK(j.contains("cost_model"));
    CHECK(j["cost_model"].is_null());
    CHECK(j["averages"].contains("iterations"));

    for (int k = 1; k <= 3; ++k) {
        std::ifstream cs(dir / ("solve_" + std::to_string(k) + ".csv"));
        REQUIRE(cs.good());
        int lines = 0;
        std::string line;
        while (std::getline(cs, line))
            if (!line.empty()) ++lines;
        CHECK(lines == rep.solves[static_cast<std::size_t>(k - 1)].iterations);
    }
    fs::remove_all(dir);
}

TEST_CASE("sequence runner loads a matrix from disk when given a path") {
    const CsrMatrix a = testsup::random_sdd_spd(20, 0.2, 401);
    const fs::path p = fs::temp_directory_path() / "recycg_driver_test.mtx";
    {
        std::ofstream out(p);
        write_matrix_market(out, a);
    }
    RunConfig cfg = base_config();
    cfg.matrix_path = p.string();
    cfg.k_t = 2;
    const SequenceReport rep = run_sequence(cfg);
    CHECK(rep.n == 20);
    CHECK(rep.solves.size() == 2);
    fs::remove(p);

    cfg.matrix_path = (fs::temp_directory_path() / "recycg_missing.mtx").string();
    CHECK_THROWS_AS(run_sequence(cfg), ParseError);
}
