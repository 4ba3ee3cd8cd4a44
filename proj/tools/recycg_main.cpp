/// Command line front end: repeated solves with one matrix, optionally
/// recycling an error-vector subspace from the first solve, plus a
/// condition number estimator that rides on a single CG run.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "recycg/condest.hpp"
#include "recycg/driver.hpp"
#include "recycg/matrix_market.hpp"
#include "recycg/scaling.hpp"

namespace {

using recycg::RunConfig;

struct CondestArgs {
    std::string matrix_path;
    int m = 20;
    double eps = 1e-8;
    int max_iter = 1000;
    std::string rhs = "ones";
    std::uint64_t seed = 42;
    bool scale = false;
};

void print_sequence(const recycg::SequenceReport& rep) {
    std::printf("matrix: %s  (n=%d, nnz=%lld, nnz/row=%.2f)\n", rep.config.matrix_path.c_str(),
                rep.n, static_cast<long long>(rep.nnz), rep.nnz_av);
    std::printf("method: %s  rhs=%s  eps=%g  max_iter=%d  blocks=%d\n", rep.config.method.c_str(),
                rep.config.rhs.c_str(), rep.config.eps, rep.config.max_iter, rep.config.blocks);

    const bool recycled =
        rep.config.method == "es-sc-iccg" || rep.config.method == "es-d-iccg";
    for (const recycg::SolveEntry& e : rep.solves) {
        std::printf("solve %d: %4d iterations  relres=%.3e  %.4f s%s\n", e.k, e.iterations,
                    e.true_relres, e.wall_time_s, e.converged ? "" : "  [not converged]");
        if (e.k == 1 && recycled) {
            std::printf("subspace: m_bar=%d kept m_tilde=%d (theta=%g, sampling=%c, built in %.4f s)\n",
                        rep.m_bar, rep.m_tilde, rep.config.theta, rep.config.sampling,
                        rep.w_build_time_s);
            if (rep.acceleration_inactive)
                std::printf("subspace: empty, remaining solves fall back to the plain method\n");
        }
    }
    if (rep.solves.size() > 1)
        std::printf("averages over solves 2..%d: %.2f iterations, %.4f s\n", rep.config.k_t,
                    rep.avg_iterations, rep.avg_wall_time);
    if (rep.has_cost)
        std::printf("cost ratio per iteration: predicted %.4f, measured %.4f (rel err %.2f%%)\n",
                    rep.cost.predicted, rep.cost.measured, 100.0 * rep.cost.rel_error);
}

int run_solve(const RunConfig& cfg) {
    const recycg::SequenceReport rep = recycg::run_sequence(cfg);
    print_sequence(rep);
    if (!cfg.out_dir.empty()) {
        recycg::emit_reports(rep, cfg.out_dir);
        std::printf("reports written to %s\n", cfg.out_dir.c_str());
    }
    if (cfg.strict) {
        for (const recycg::SolveEntry& e : rep.solves)
            if (!e.converged) {
                std::fprintf(stderr, "error: solve %d did not converge within %d iterations\n",
                             e.k, cfg.max_iter);
                return 4;
            }
    }
    return 0;
}

int run_condest(const CondestArgs& args) {
    recycg::CsrMatrix a = recycg::load_matrix_market(args.matrix_path);
    recycg::ScalingVector sv;
    if (args.scale) {
        auto scaled = recycg::diagonal_scale(a);
        a = std::move(scaled.first);
        sv = std::move(scaled.second);
    }

    recycg::Vector b;
    if (args.rhs == "ones") {
        b = recycg::make_rhs("ones", 0, a.n());
    } else if (args.rhs.rfind("random:", 0) == 0) {
        std::uint64_t seed = 0;
        try {
            std::size_t pos = 0;
            seed = std::stoull(args.rhs.substr(7), &pos);
            if (pos != args.rhs.size() - 7) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw recycg::ParseError("rhs: invalid seed in '" + args.rhs + "'");
        }
        b = recycg::make_rhs("random", seed, a.n());
    } else {
        throw recycg::ParseError("rhs: expected 'ones' or 'random:<seed>', got '" + args.rhs +
                                 "'");
    }
    if (args.scale) b = sv.scale_rhs(b);

    recycg::SolverConfig scfg;
    scfg.eps = args.eps;
    scfg.max_iter = args.max_iter;
    recycg::IdentityPreconditioner ident;
    recycg::Vector x(static_cast<std::size_t>(a.n()), 0.0);
    const recycg::CondestResult res =
        recycg::pcg_with_condest(a, b, ident, x, scfg, args.m, args.seed);

    using json = nlohmann::ordered_json;
    json j;
    j["matrix"] = args.matrix_path;
    j["n"] = a.n();
    j["nnz"] = a.nnz();
    j["scaled"] = args.scale;
    j["eps"] = args.eps;
    j["max_iter"] = args.max_iter;
    j["m"] = args.m;
    j["solve"] = {{"iterations", res.solve.iterations}, {"converged", res.solve.converged}};
    j["lambda_max"] = res.estimate.lambda_max;
    if (res.estimate.lambda_min_available) {
        j["lambda_min"] = res.estimate.lambda_min;
        j["kappa"] = res.estimate.kappa;
    } else {
        j["lambda_min"] = nullptr;
        j["kappa"] = nullptr;
    }
    j["power_iterations"] = res.estimate.power_iterations;
    j["power_unsettled"] = res.estimate.power_unsettled;
    j["ritz_values"] = res.estimate.ritz_values;
    std::printf("%s\n", j.dump(2).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse SPD solver with error-vector subspace recycling"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string sampling = "A";
    CLI::App* solve = app.add_subcommand("solve", "run a sequence of solves with one matrix");
    solve->add_option("--matrix", cfg.matrix_path, "matrix file (Matrix Market .mtx)")
        ->required();
    solve->add_option("--method", cfg.method, "cg | iccg | es-sc-iccg | es-d-iccg")
        ->check(CLI::IsMember({"cg", "iccg", "es-sc-iccg", "es-d-iccg"}))
        ->capture_default_str();
    solve->add_option("--m", cfg.m, "number of iterate samples kept during solve 1")
        ->capture_default_str();
    solve->add_option("--theta", cfg.theta, "keep Ritz values below this threshold")
        ->capture_default_str();
    solve->add_option("--sampling", sampling, "iterate sampling scheme: A | B")
        ->check(CLI::IsMember({"A", "B"}))
        ->capture_default_str();
    solve->add_option("--rhs", cfg.rhs, "right-hand sides: ones | random:<seed>")
        ->capture_default_str();
    solve->add_option("--eps", cfg.eps, "relative residual tolerance")
        ->capture_default_str();
    solve->add_option("--max-iter", cfg.max_iter, "iteration cap per solve")
        ->capture_default_str();
    solve->add_option("--solves", cfg.k_t, "total number of solves in the sequence")
        ->capture_default_str();
    solve->add_option("--blocks", cfg.blocks, "block count for the block Jacobi IC factorization")
        ->capture_default_str();
    solve->add_option("--out", cfg.out_dir, "directory for summary.json and per-solve CSVs");
    solve->add_flag("--history", cfg.history, "record per-iteration residual history");
    solve->add_flag("--serial", cfg.serial, "run single threaded (the only mode provided)");
    solve->add_flag("--strict", cfg.strict, "exit 4 if any solve fails to converge");

    CondestArgs ca;
    CLI::App* condest =
        app.add_subcommand("condest", "estimate the condition number during one CG solve");
    condest->add_option("--matrix", ca.matrix_path, "matrix file (Matrix Market .mtx)")
        ->required();
    condest->add_option("--m", ca.m, "number of iterate samples kept for the small-end estimate")
        ->capture_default_str();
    condest->add_option("--eps", ca.eps, "relative residual tolerance")->capture_default_str();
    condest->add_option("--max-iter", ca.max_iter, "iteration cap")->capture_default_str();
    condest->add_option("--rhs", ca.rhs, "right-hand side: ones | random:<seed>")
        ->capture_default_str();
    condest->add_option("--seed", ca.seed, "seed for the power iteration start vector")
        ->capture_default_str();
    condest->add_flag("--scale", ca.scale, "apply two-sided diagonal scaling first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve->parsed()) {
            cfg.sampling = sampling[0];
            return run_solve(cfg);
        }
        return run_condest(ca);
    } catch (const recycg::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const recycg::BreakdownError& e) {
        std::fprintf(stderr, "breakdown: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
