// SPDX-License-Identifier: Apache-2.0
//
// cesolve - common eigenstructure estimation for covariance ensembles
// Copyright (C) 2026 The cesolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cesolve/covariance_model.hpp"
#include "cesolve/experiments.hpp"
#include "cesolve/jade.hpp"
#include "cesolve/metrics.hpp"
#include "cesolve/ml_objective.hpp"
#include "cesolve/pgd_solver.hpp"
#include "cesolve/rng.hpp"
#include "cesolve/serialize.hpp"
#include "cesolve/types.hpp"

namespace {

using nlohmann::json;
using namespace cesolve;

constexpr std::uint64_t kTagCliSample = 0x636c6973;  // realization draws
constexpr std::uint64_t kTagCliInit = 0x636c6969;    // solver initialization

void write_output(const std::string& path, const std::string& content)
{
    if (path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n')
            std::cout << '\n';
        return;
    }
    serialize::write_text_file(path, content);
}

// Shared by solve/jade/eval: the covariances actually handed to the method,
// either the ensemble's own or sample covariances from fresh realizations.
std::vector<HermitianCovariance> resolve_covariances(const Ensemble& ensemble, bool exact,
                                                     int n, std::uint64_t seed)
{
    if (exact)
        return ensemble.covariances;
    std::vector<HermitianCovariance> out;
    out.reserve(static_cast<std::size_t>(ensemble.count()));
    for (int k = 0; k < ensemble.count(); ++k) {
        const std::uint64_t sub = derive_seed(
            seed, {kTagCliSample, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n)});
        out.push_back(cov::sample_covariance(
            cov::sample_realizations(ensemble.covariances[static_cast<std::size_t>(k)], n, sub)));
    }
    return out;
}

Matrix basis_from_file(const std::string& path, int m)
{
    const json j = serialize::load_json_file(path);
    if (j.is_object() && j.contains("basis"))
        return serialize::matrix_from_json(j["basis"], m, m);
    if (j.is_array())
        return serialize::matrix_from_json(j, m, m);
    throw std::runtime_error("basis file must be a matrix array or an object with a \"basis\" field");
}

struct GenArgs {
    std::string kind;
    int m = 16;
    int k = 8;
    std::uint64_t seed = 0;
    int effrank = 0;  // 0 = ceil(M/2)
    double spacing = 0.5;
    int grid_size = 0;
    std::string out = "-";
};

int run_gen(const GenArgs& args)
{
    const GeneratorKind kind = generator_kind_from_name(args.kind);
    Ensemble ensemble;
    switch (kind) {
        case GeneratorKind::joint:
            ensemble = cov::gen_joint_ensemble(args.m, args.k, args.seed);
            break;
        case GeneratorKind::independent:
            ensemble = cov::gen_independent_ensemble(args.m, args.k, args.seed);
            break;
        case GeneratorKind::ula: {
            UlaParams params;
            params.wavelength_spacing_ratio = args.spacing;
            params.grid_size = args.grid_size;
            params.effective_rank_target = args.effrank > 0 ? args.effrank : (args.m + 1) / 2;
            ensemble = cov::gen_ula_ensemble(args.m, args.k, params, args.seed);
            break;
        }
    }
    write_output(args.out, serialize::ensemble_to_json(ensemble).dump(2));
    return 0;
}

struct SolveArgs {
    std::string in;
    bool exact = false;
    int n = 0;
    std::uint64_t seed = 0;
    std::string step_rule = "lipschitz";
    double alpha0 = 2.0;
    int max_iters = 2000;
    double tol = 1e-9;
    std::string init = "random";
    std::string basis_path;
    std::string out = "-";
    std::string trace_path;
};

int run_solve(const SolveArgs& args)
{
    const Ensemble ensemble = serialize::ensemble_from_json(serialize::load_json_file(args.in));
    const ml::ObjectiveContext ctx{
        resolve_covariances(ensemble, args.exact, args.n, args.seed)};

    pgd::PgdConfig config;
    config.max_iters = args.max_iters;
    config.tol_move = args.tol;
    config.step_rule = pgd::step_rule_from_name(args.step_rule);
    config.alpha0 = args.alpha0;
    config.init = pgd::init_kind_from_name(args.init);
    config.init_seed = derive_seed(args.seed, {kTagCliInit});
    if (config.init == pgd::InitKind::given) {
        if (args.basis_path.empty())
            throw std::runtime_error("--init given requires --basis");
        config.init_basis = basis_from_file(args.basis_path, ensemble.dim());
    }

    const pgd::SolveResult result = pgd::pgd_solve(ctx, config);
    write_output(args.out, serialize::solve_result_to_json(result).dump(2));
    if (!args.trace_path.empty())
        write_output(args.trace_path, serialize::trace_to_csv(result.trace));
    return 0;
}

struct JadeArgs {
    std::string in;
    bool exact = false;
    int n = 0;
    std::uint64_t seed = 0;
    int max_sweeps = 100;
    double tol = 1e-12;
    std::string out = "-";
};

int run_jade(const JadeArgs& args)
{
    const Ensemble ensemble = serialize::ensemble_from_json(serialize::load_json_file(args.in));
    const std::vector<HermitianCovariance> covs =
        resolve_covariances(ensemble, args.exact, args.n, args.seed);

    jade::JacobiConfig config;
    config.max_sweeps = args.max_sweeps;
    config.off_tol = args.tol;
    const jade::JadeResult result = jade::jade_diagonalize_traced(covs, config);

    const ml::ObjectiveContext ctx{covs};
    json j;
    j["basis"] = serialize::matrix_to_json(result.basis.matrix());
    json lambdas = json::array();
    for (const auto& lambda : ml::optimal_lambdas(result.basis, ctx)) {
        json vec = json::array();
        for (int i = 0; i < lambda.size(); ++i)
            vec.push_back(lambda[i]);
        lambdas.push_back(std::move(vec));
    }
    j["lambdas"] = std::move(lambdas);
    j["final_cost"] = ml::cost(result.basis, ctx);
    j["status"] = result.converged ? "converged" : "max_sweeps";
    j["sweeps"] = result.sweeps;
    write_output(args.out, j.dump(2));
    return 0;
}

struct EvalArgs {
    std::string in;
    std::string basis;
    bool exact = true;
    int n = 0;
    std::uint64_t seed = 0;
    std::string out = "-";
};

int run_eval(const EvalArgs& args)
{
    const Ensemble ensemble = serialize::ensemble_from_json(serialize::load_json_file(args.in));
    const UnitaryMatrix basis = args.basis == "fourier"
                                    ? metrics::fourier_basis(ensemble.dim())
                                    : UnitaryMatrix(basis_from_file(args.basis, ensemble.dim()));

    const bool exact = args.exact && args.n == 0;
    const std::vector<HermitianCovariance> covs =
        resolve_covariances(ensemble, exact, args.n, args.seed);
    const ml::ObjectiveContext ctx{covs};

    const metrics::MetricReport report = metrics::diag_metric(basis, covs);
    json j;
    j["eta"] = report.eta;
    j["per_k_terms"] = report.per_k_terms;
    j["cost"] = ml::cost(basis, ctx);
    write_output(args.out, j.dump(2));
    return 0;
}

struct ExperimentArgs {
    std::string study;
    int m = 16;
    int k = 8;
    bool k_set = false;
    std::string kind = "joint";
    int trials = 1000;
    std::vector<int> grid;
    std::uint64_t seed = 0;
    bool exact = false;
    std::string step_rule = "lipschitz";
    double alpha0 = 2.0;
    int max_iters = 2000;
    double tol = 1e-9;
    std::string init = "random";
    std::string out = "-";
    std::string plot_path;
};

int run_experiment_cmd(const ExperimentArgs& args)
{
    expt::ExperimentConfig config;
    config.study = expt::study_from_name(args.study);
    config.m = args.m;
    // Fig. 3 follows the K=5 study design unless the caller overrides.
    config.k = args.k_set ? args.k : (config.study == expt::Study::fig3 ? 5 : args.k);
    config.kind = generator_kind_from_name(args.kind);
    config.trials = args.trials;
    config.grid = args.grid;
    config.seed = args.seed;
    config.exact = args.exact;
    config.solver.step_rule = pgd::step_rule_from_name(args.step_rule);
    config.solver.alpha0 = args.alpha0;
    config.solver.max_iters = args.max_iters;
    config.solver.tol_move = args.tol;
    config.solver.init = pgd::init_kind_from_name(args.init);
    config.jacobi.max_sweeps = 100;

    const std::vector<expt::ResultRecord> rows = expt::run_experiment(config);

    std::ostringstream csv;
    expt::write_experiment_csv(rows, csv);
    write_output(args.out, csv.str());
    if (!args.plot_path.empty())
        serialize::write_text_file(args.plot_path, expt::plot_script(config.study, args.out));
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cesolve - approximate common eigenvectors for covariance ensembles"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate a covariance ensemble as JSON");
    gen->add_option("--kind", gen_args.kind, "ensemble kind: joint|independent|ula")
        ->required()
        ->check(CLI::IsMember({"joint", "independent", "ula"}));
    gen->add_option("--m", gen_args.m, "matrix dimension M");
    gen->add_option("--k", gen_args.k, "number of covariances K");
    gen->add_option("--seed", gen_args.seed, "64-bit master seed");
    gen->add_option("--effrank", gen_args.effrank, "ULA effective rank target (0 = ceil(M/2))");
    gen->add_option("--spacing", gen_args.spacing, "ULA antenna spacing in wavelengths");
    gen->add_option("--grid-size", gen_args.grid_size, "ULA angle grid points (0 = 32*M)");
    gen->add_option("-o,--output", gen_args.out, "output path ('-' = stdout)");

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "run projected gradient descent on an ensemble");
    solve->add_option("-i,--input", solve_args.in, "ensemble JSON path")->required();
    solve->add_flag("--exact", solve_args.exact, "solve on the ensemble covariances directly");
    solve->add_option("--n", solve_args.n, "draw N realizations per process instead");
    solve->add_option("--seed", solve_args.seed, "seed for realizations and initialization");
    solve->add_option("--step-rule", solve_args.step_rule, "lipschitz|diminishing")
        ->check(CLI::IsMember({"lipschitz", "diminishing"}));
    solve->add_option("--alpha0", solve_args.alpha0, "diminishing schedule numerator");
    solve->add_option("--max-iters", solve_args.max_iters, "iteration cap");
    solve->add_option("--tol", solve_args.tol, "movement stopping threshold");
    solve->add_option("--init", solve_args.init, "random|fourier|given")
        ->check(CLI::IsMember({"random", "fourier", "given"}));
    solve->add_option("--basis", solve_args.basis_path, "basis JSON for --init given");
    solve->add_option("-o,--output", solve_args.out, "result JSON path ('-' = stdout)");
    solve->add_option("--trace", solve_args.trace_path, "also write the iteration trace CSV here");

    JadeArgs jade_args;
    CLI::App* jade_cmd = app.add_subcommand("jade", "run the Jacobi joint-diagonalization baseline");
    jade_cmd->add_option("-i,--input", jade_args.in, "ensemble JSON path")->required();
    jade_cmd->add_flag("--exact", jade_args.exact, "use the ensemble covariances directly");
    jade_cmd->add_option("--n", jade_args.n, "draw N realizations per process instead");
    jade_cmd->add_option("--seed", jade_args.seed, "seed for realizations");
    jade_cmd->add_option("--max-iters", jade_args.max_sweeps, "sweep cap");
    jade_cmd->add_option("--tol", jade_args.tol, "relative off-diagonal decrease threshold");
    jade_cmd->add_option("-o,--output", jade_args.out, "result JSON path ('-' = stdout)");

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "evaluate a basis against an ensemble");
    eval->add_option("-i,--input", eval_args.in, "ensemble JSON path")->required();
    eval->add_option("--basis", eval_args.basis,
                     "basis JSON path, or 'fourier' for the DFT basis")->required();
    eval->add_option("--n", eval_args.n, "evaluate on N-sample covariances instead of exact");
    eval->add_option("--seed", eval_args.seed, "seed for realizations");
    eval->add_option("-o,--output", eval_args.out, "report JSON path ('-' = stdout)");

    ExperimentArgs expt_args;
    CLI::App* experiment = app.add_subcommand("experiment", "run a Monte Carlo study to CSV");
    experiment->add_option("--study", expt_args.study, "fig1|fig2|fig3|custom")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "custom"}));
    experiment->add_option("--m", expt_args.m, "matrix dimension M (fig3 takes M from --grid)");
    CLI::Option* k_opt = experiment->add_option("--k", expt_args.k, "number of covariances K");
    experiment->add_option("--kind", expt_args.kind, "custom study ensemble kind")
        ->check(CLI::IsMember({"joint", "independent", "ula"}));
    experiment->add_option("--trials", expt_args.trials, "Monte Carlo trials");
    experiment->add_option("--grid", expt_args.grid, "comma-separated grid (N, or M for fig3)")
        ->delimiter(',');
    experiment->add_option("--seed", expt_args.seed, "64-bit master seed");
    experiment->add_flag("--exact", expt_args.exact, "custom study: use exact covariances");
    experiment->add_option("--step-rule", expt_args.step_rule, "lipschitz|diminishing")
        ->check(CLI::IsMember({"lipschitz", "diminishing"}));
    experiment->add_option("--alpha0", expt_args.alpha0, "diminishing schedule numerator");
    experiment->add_option("--max-iters", expt_args.max_iters, "solver iteration cap");
    experiment->add_option("--tol", expt_args.tol, "solver movement threshold");
    experiment->add_option("--init", expt_args.init, "solver initialization: random|fourier")
        ->check(CLI::IsMember({"random", "fourier"}));
    experiment->add_option("-o,--output", expt_args.out, "CSV path ('-' = stdout)");
    experiment->add_option("--emit-plot-script", expt_args.plot_path,
                           "also write a gnuplot script referencing the CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }
    expt_args.k_set = k_opt->count() > 0;

    try {
        if (solve->parsed() && !solve_args.exact && solve_args.n < 1) {
            std::cerr << "error: solve needs either --exact or --n N\n\n" << app.help();
            return 2;
        }
        if (jade_cmd->parsed() && !jade_args.exact && jade_args.n < 1) {
            std::cerr << "error: jade needs either --exact or --n N\n\n" << app.help();
            return 2;
        }
        if (solve->parsed() && solve_args.init == "given" && solve_args.basis_path.empty()) {
            std::cerr << "error: --init given requires --basis\n\n" << app.help();
            return 2;
        }
        if (gen->parsed())
            return run_gen(gen_args);
        if (solve->parsed())
            return run_solve(solve_args);
        if (jade_cmd->parsed())
            return run_jade(jade_args);
        if (eval->parsed())
            return run_eval(eval_args);
        if (experiment->parsed())
            return run_experiment_cmd(expt_args);
        std::cerr << "error: no subcommand\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
