#include "recycg/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "recycg/ic_preconditioner.hpp"
#include "recycg/matrix_market.hpp"
#include "recycg/recycling.hpp"
#include "recycg/rng.hpp"
#include "recycg/sampling.hpp"
#include "recycg/scaling.hpp"
#include "recycg/subspace_correction.hpp"

namespace recycg {

namespace {

using Clock = std::chrono::steady_clock;

struct RhsSpec {
    std::string kind;  // "ones" | "random"
    std::uint64_t seed = 0;
};

RhsSpec parse_rhs_spec(const std::string& s) {
    if (s == "ones") return {"ones", 0};
    const std::string prefix = "random:";
    if (s.rfind(prefix, 0) == 0) {
        const std::string tail = s.substr(prefix.size());
        if (tail.empty()) throw ParseError("rhs: missing seed in '" + s + "'");
        try {
            std::size_t pos = 0;
            const std::uint64_t seed = std::stoull(tail, &pos);
            if (pos != tail.size()) throw std::invalid_argument("trailing");
            return {"random", seed};
        } catch (const std::exception&) {
            throw ParseError("rhs: invalid seed in '" + s + "'");
        }
    }
    throw ParseError("rhs: expected 'ones' or 'random:<seed>', got '" + s + "'");
}

void validate_config(const RunConfig& cfg) {
    if (cfg.method != "iccg" && cfg.method != "es-sc-iccg" && cfg.method != "es-d-iccg" &&
        cfg.method != "cg")
        throw ParseError("config: unknown method '" + cfg.method + "'");
    if (cfg.m < 1) throw ParseError("config: m must be >= 1");
    if (cfg.sampling != 'A' && cfg.sampling != 'B')
        throw ParseError("config: sampling must be A or B");
    if (cfg.sampling == 'A' && cfg.m < 2)
        throw ParseError("config: sampling method A needs m >= 2");
    if (!(cfg.theta > 0.0)) throw ParseError("config: theta must be > 0");
    if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw ParseError("config: eps must be in (0, 1)");
    if (cfg.max_iter < 1) throw ParseError("config: max_iter must be >= 1");
    if (cfg.k_t < 1) throw ParseError("config: k_t must be >= 1");
    if (cfg.blocks < 1) throw ParseError("config: blocks must be >= 1");
    parse_rhs_spec(cfg.rhs);
}

double nrm2(const Vector& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double true_relres(const CsrMatrix& a, const Vector& b, const Vector& x) {
    Vector ax;
    spmv(a, x, ax);
    double rr = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i) {
        const double d = b[i] - ax[i];
        rr += d * d;
    }
    const double bn = nrm2(b);
    return bn == 0.0 ? 0.0 : std::sqrt(rr) / bn;
}

SolveEntry make_entry(int k, const SolveReport& r, const CsrMatrix& a_orig, const Vector& b_orig,
                      const Vector& x_orig) {
    SolveEntry e;
    e.k = k;
    e.iterations = r.iterations;
    e.converged = r.converged;
    e.wall_time_s = r.wall_time;
    e.true_relres = true_relres(a_orig, b_orig, x_orig);
    return e;
}

}  // namespace

Vector make_rhs(const std::string& kind, std::uint64_t seed, index_t n, int call_index) {
    const std::size_t sz = static_cast<std::size_t>(n);
    if (kind == "ones") return Vector(sz, 1.0);
    if (kind == "random") {
        UniformPm1 rng(seed);
        rng.skip(static_cast<std::size_t>(call_index) * sz);
        return rng.draw(sz);
    }
    throw ParseError("make_rhs: unknown kind '" + kind + "'");
}

SequenceReport run_sequence(const RunConfig& cfg, const CsrMatrix& a_orig) {
    validate_config(cfg);
    const index_t n = a_orig.n();
    if (cfg.blocks > n) throw ParseError("config: blocks exceeds matrix dimension");
    const RhsSpec rhs = parse_rhs_spec(cfg.rhs);

    SequenceReport rep;
    rep.config = cfg;
    rep.n = n;
    rep.nnz = a_orig.nnz();
    rep.nnz_av = a_orig.nnz_av();

    auto [a, sv] = diagonal_scale(a_orig);

    std::shared_ptr<const Preconditioner> inner;
    if (cfg.method == "cg")
        inner = std::make_shared<IdentityPreconditioner>();
    else
        inner = std::make_shared<IcPreconditioner>(ic0_factorize(a, 0.0, cfg.blocks));

    SolverConfig scfg;
    scfg.eps = cfg.eps;
    scfg.max_iter = cfg.max_iter;
    scfg.record_history = cfg.history;

    const bool recycled = cfg.method == "es-sc-iccg" || cfg.method == "es-d-iccg";

    // All right-hand sides come from one stream so repeated runs and
    // different methods see identical data.
    std::vector<Vector> b_orig(static_cast<std::size_t>(cfg.k_t));
    for (int k = 0; k < cfg.k_t; ++k) b_orig[k] = make_rhs(rhs.kind, rhs.seed, n, k);

    // solve 1: plain PCG, sampling the iterates when recycling is requested
    SamplerState sampler = cfg.sampling == 'A'
                               ? SamplerState::method_a(std::max(cfg.m, 2), cfg.max_iter)
                               : SamplerState::method_b(cfg.m, cfg.eps);
    Vector x1(static_cast<std::size_t>(n), 0.0);
    SolveReport r1;
    {
        const Vector b1 = sv.scale_rhs(b_orig[0]);
        IterationObserver obs;
        if (recycled) obs = error_sampling_observer(sampler);
        r1 = pcg_solve(a, b1, *inner, x1, scfg, obs);
    }
    rep.solves.push_back(make_entry(1, r1, a_orig, b_orig[0], sv.recover_solution(x1)));
    if (cfg.history) rep.histories.push_back(r1.history);

    // auxiliary basis from the sampled iterates of solve 1
    TallDense w(n);
    if (recycled) {
        const auto t0 = Clock::now();
        const TallDense errors = harvest_errors(x1, sampler);
        AuxBasis basis = build_aux_matrix(a, errors, cfg.theta);
        rep.m_bar = basis.m_bar;
        rep.m_tilde = static_cast<int>(basis.w.k());
        rep.ritz_values = basis.spectrum.values;
        w = std::move(basis.w);
        rep.w_build_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
        rep.acceleration_inactive = (rep.m_tilde == 0);
    }

    std::unique_ptr<ScPreconditioner> sc;
    DeflationOperator defl;
    if (recycled && rep.m_tilde > 0) {
        const auto t0 = Clock::now();
        if (cfg.method == "es-sc-iccg")
            sc = std::make_unique<ScPreconditioner>(inner, a, w);
        else
            defl = build_deflation_operator(a, w);
        rep.w_build_time_s += std::chrono::duration<double>(Clock::now() - t0).count();
    }

    double acc_iters = 0.0, acc_wall = 0.0;
    for (int k = 1; k < cfg.k_t; ++k) {
        const Vector bk = sv.scale_rhs(b_orig[k]);
        Vector xk(static_cast<std::size_t>(n), 0.0);
        SolveReport rk;
        if (sc)
            rk = pcg_solve(a, bk, *sc, xk, scfg);
        else if (recycled && rep.m_tilde > 0)
            rk = deflated_pcg_solve(a, bk, *inner, defl, xk, scfg);
        else
            rk = pcg_solve(a, bk, *inner, xk, scfg);
        rep.solves.push_back(make_entry(k + 1, rk, a_orig, b_orig[k], sv.recover_solution(xk)));
        if (cfg.history) rep.histories.push_back(rk.history);
        acc_iters += rk.iterations;
        acc_wall += rk.wall_time;
    }

    if (cfg.k_t > 1) {
        rep.avg_iterations = acc_iters / (cfg.k_t - 1);
        rep.avg_wall_time = acc_wall / (cfg.k_t - 1);
    } else {
        rep.avg_iterations = static_cast<double>(r1.iterations);
        rep.avg_wall_time = r1.wall_time;
    }

    // measured-vs-predicted per-iteration cost ratio, baseline = solve 1
    rep.has_cost = false;
    if (recycled && rep.m_tilde > 0 && cfg.k_t > 1) {
        SolveReport base = r1;
        SolveReport acc;
        acc.iterations = static_cast<int>(acc_iters);
        acc.wall_time = acc_wall;
        acc.converged = true;
        try {
            rep.cost = compare_measured(base, acc, rep.m_tilde, a_orig.nnz_av());
            rep.has_cost = true;
        } catch (const std::invalid_argument&) {
            rep.has_cost = false;
        }
    }

    return rep;
}

SequenceReport run_sequence(const RunConfig& cfg) {
    validate_config(cfg);
    const CsrMatrix a = load_matrix_market(cfg.matrix_path);
    return run_sequence(cfg, a);
}

void emit_reports(const SequenceReport& rep, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    using json = nlohmann::ordered_json;
    json j;
    j["config"] = {{"matrix", rep.config.matrix_path}, {"method", rep.config.method},
                   {"m", rep.config.m},                {"theta", rep.config.theta},
                   {"sampling", std::string(1, rep.config.sampling)},
                   {"rhs", rep.config.rhs},            {"eps", rep.config.eps},
                   {"max_iter", rep.config.max_iter},  {"solves", rep.config.k_t},
                   {"blocks", rep.config.blocks},      {"history", rep.config.history},
                   {"serial", rep.config.serial},      {"strict", rep.config.strict}};
    j["n"] = rep.n;
    j["nnz"] = rep.nnz;
    j["nnz_av"] = rep.nnz_av;
    j["m_bar"] = rep.m_bar;
    j["m_tilde"] = rep.m_tilde;
    j["ritz_values"] = rep.ritz_values;
    j["acceleration_inactive"] = rep.acceleration_inactive;
    j["solves"] = json::array();
    for (const SolveEntry& e : rep.solves)
        j["solves"].push_back({{"k", e.k},
                               {"iterations", e.iterations},
                               {"converged", e.converged},
                               {"wall_time_s", e.wall_time_s},
                               {"true_relres", e.true_relres}});
    j["averages"] = {{"iterations", rep.avg_iterations}, {"wall_time_s", rep.avg_wall_time}};
    if (rep.has_cost)
        j["cost_model"] = {{"gamma_predicted", rep.cost.predicted},
                           {"gamma_measured", rep.cost.measured},
                           {"rel_error", rep.cost.rel_error}};
    else
        j["cost_model"] = nullptr;
    j["w_build_time_s"] = rep.w_build_time_s;

    std::ofstream js(fs::path(out_dir) / "summary.json");
    if (!js) throw ParseError("cannot open " + out_dir + "/summary.json for writing");
    js << j.dump(2) << '\n';
    js.close();

    for (std::size_t h = 0; h < rep.histories.size(); ++h) {
        char name[32];
        std::snprintf(name, sizeof(name), "solve_%zu.csv", h + 1);
        std::ofstream cs(fs::path(out_dir) / name);
        if (!cs) throw ParseError("cannot open " + out_dir + "/" + name + " for writing");
        const Vector& hist = rep.histories[h];
        for (std::size_t i = 0; i < hist.size(); ++i) {
            char line[64];
            std::snprintf(line, sizeof(line), "%zu,%.17g\n", i + 1, hist[i]);
            cs << line;
        }
    }
}

}  // namespace recycg
