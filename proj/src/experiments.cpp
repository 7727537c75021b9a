// SPDX-License-Identifier: Apache-2.0
//
// cesolve - common eigenstructure estimation for covariance ensembles
// Copyright (C) 2026 The cesolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cesolve/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cesolve/covariance_model.hpp"
#include "cesolve/metrics.hpp"
#include "cesolve/ml_objective.hpp"
#include "cesolve/rng.hpp"
#include "cesolve/serialize.hpp"

namespace cesolve::expt {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kTagExperiment = 0x65787074;  // trial stream root
constexpr std::uint64_t kTagEnsemble = 1;
constexpr std::uint64_t kTagRealize = 2;
constexpr std::uint64_t kTagInit = 3;

struct Totals {
    std::atomic<std::int64_t> pgd_us{0};
    std::atomic<std::int64_t> jade_us{0};
    std::atomic<std::int64_t> gen_us{0};
    std::atomic<int> errors{0};
};

std::vector<int> default_grid(Study study)
{
    switch (study) {
        case Study::fig1: return {16, 32, 64, 128, 256, 512, 1024, 4096};
        case Study::fig2: return {16, 32, 64, 128};
        case Study::fig3: return {8, 16, 32};
        case Study::custom: return {16, 32, 64, 128};
    }
    return {};
}

int resolve_threads(int trials)
{
    int n = 0;
    if (const char* env = std::getenv("CESOLVE_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || parsed < 1)
            throw std::invalid_argument("CESOLVE_THREADS must be a positive integer");
        n = static_cast<int>(parsed);
    } else {
        n = static_cast<int>(std::thread::hardware_concurrency());
    }
    if (n < 1)
        n = 1;
    return std::min(n, trials);
}

std::vector<HermitianCovariance> sampled_covariances(const Ensemble& ensemble, int n,
                                                     std::uint64_t trial_seed)
{
    std::vector<HermitianCovariance> out;
    out.reserve(static_cast<std::size_t>(ensemble.count()));
    for (int k = 0; k < ensemble.count(); ++k) {
        const std::uint64_t seed = derive_seed(
            trial_seed, {kTagRealize, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n)});
        out.push_back(cov::sample_covariance(
            cov::sample_realizations(ensemble.covariances[static_cast<std::size_t>(k)], n, seed)));
    }
    return out;
}

class StudyRunner {
 public:
    StudyRunner(const ExperimentConfig& config, Totals& totals)
        : config_(config), totals_(totals) {}

    std::vector<ResultRecord> run_trial(int trial) const
    {
        const std::uint64_t trial_seed = derive_seed(
            config_.seed, {kTagExperiment, static_cast<std::uint64_t>(config_.study),
                           static_cast<std::uint64_t>(trial)});
        switch (config_.study) {
            case Study::fig1: return run_fig1_trial(trial, trial_seed);
            case Study::fig2: return run_fig2_trial(trial, trial_seed);
            case Study::fig3: return run_fig3_trial(trial, trial_seed);
            case Study::custom: return run_custom_trial(trial, trial_seed);
        }
        throw std::logic_error("unreachable study");
    }

 private:
    ResultRecord base_record(int trial, int grid_value, const char* method,
                             std::uint64_t trial_seed) const
    {
        ResultRecord rec;
        rec.study = study_name(config_.study);
        rec.trial = trial;
        rec.grid_value = grid_value;
        rec.method = method;
        rec.seed = trial_seed;
        return rec;
    }

    pgd::PgdConfig solver_config(std::uint64_t trial_seed, int grid_value) const
    {
        pgd::PgdConfig solver = config_.solver;
        solver.init_seed = derive_seed(
            trial_seed, {kTagInit, static_cast<std::uint64_t>(grid_value)});
        return solver;
    }

    template <typename Fn>
    void fill_record(ResultRecord& rec, Fn&& fn) const
    {
        try {
            fn(rec);
        } catch (const std::exception& e) {
            rec.status = "error";
            rec.cost = 0.0;
            rec.eta = 0.0;
            rec.iters = 0;
            totals_.errors.fetch_add(1, std::memory_order_relaxed);
            std::fprintf(stderr, "# %s trial %d grid %d %s: %s\n", rec.study.c_str(),
                         rec.trial, rec.grid_value, rec.method.c_str(), e.what());
        }
    }

    pgd::SolveResult timed_pgd(const ml::ObjectiveContext& ctx,
                               const pgd::PgdConfig& solver) const
    {
        const auto start = Clock::now();
        pgd::SolveResult result = pgd::pgd_solve(ctx, solver);
        totals_.pgd_us.fetch_add(
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count(),
            std::memory_order_relaxed);
        return result;
    }

    jade::JadeResult timed_jade(const std::vector<HermitianCovariance>& covs) const
    {
        const auto start = Clock::now();
        jade::JadeResult result = jade::jade_diagonalize_traced(covs, config_.jacobi);
        totals_.jade_us.fetch_add(
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count(),
            std::memory_order_relaxed);
        return result;
    }

    Ensemble timed_generate(int m, int k, std::uint64_t seed) const
    {
        const auto start = Clock::now();
        Ensemble ensemble = [&] {
            switch (config_.study == Study::custom ? config_.kind : study_kind()) {
                case GeneratorKind::joint: return cov::gen_joint_ensemble(m, k, seed);
                case GeneratorKind::independent: return cov::gen_independent_ensemble(m, k, seed);
                case GeneratorKind::ula: {
                    UlaParams params;
                    params.effective_rank_target = (m + 1) / 2;
                    return cov::gen_ula_ensemble(m, k, params, seed);
                }
            }
            throw std::logic_error("unreachable generator kind");
        }();
        totals_.gen_us.fetch_add(
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count(),
            std::memory_order_relaxed);
        return ensemble;
    }

    GeneratorKind study_kind() const
    {
        switch (config_.study) {
            case Study::fig1: return GeneratorKind::joint;
            case Study::fig2: return GeneratorKind::independent;
            case Study::fig3: return GeneratorKind::ula;
            case Study::custom: return config_.kind;
        }
        return GeneratorKind::joint;
    }

    // Fig. 1: jointly diagonalizable ensembles; the fitted basis and the
    // generating basis are both priced on the sample covariances, so the
    // cost gap measures how far finite sampling pulls the optimum.
    std::vector<ResultRecord> run_fig1_trial(int trial, std::uint64_t trial_seed) const
    {
        std::vector<ResultRecord> rows;
        Ensemble ensemble;
        bool have_ensemble = false;
        try {
            ensemble = timed_generate(config_.m, config_.k, derive_seed(trial_seed, {kTagEnsemble}));
            have_ensemble = true;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "# fig1 trial %d ensemble: %s\n", trial, e.what());
        }

        for (int n : config_.grid) {
            ResultRecord pgd_rec = base_record(trial, n, "pgd", trial_seed);
            ResultRecord oracle_rec = base_record(trial, n, "oracle_ces", trial_seed);
            if (!have_ensemble) {
                pgd_rec.status = oracle_rec.status = "error";
                totals_.errors.fetch_add(2, std::memory_order_relaxed);
            } else {
                std::vector<HermitianCovariance> hat;
                bool have_hat = false;
                try {
                    hat = sampled_covariances(ensemble, n, trial_seed);
                    have_hat = true;
                } catch (const std::exception& e) {
                    std::fprintf(stderr, "# fig1 trial %d N=%d sampling: %s\n", trial, n, e.what());
                }
                if (!have_hat) {
                    pgd_rec.status = oracle_rec.status = "error";
                    totals_.errors.fetch_add(2, std::memory_order_relaxed);
                } else {
                    const ml::ObjectiveContext ctx_hat{hat};
                    fill_record(pgd_rec, [&](ResultRecord& rec) {
                        const pgd::SolveResult res = timed_pgd(ctx_hat, solver_config(trial_seed, n));
                        rec.cost = res.final_cost;
                        rec.eta = metrics::diag_metric(res.basis, ensemble.covariances).eta;
                        rec.iters = res.trace.iterations();
                    });
                    fill_record(oracle_rec, [&](ResultRecord& rec) {
                        rec.cost = ml::cost(*ensemble.common_basis, ctx_hat);
                        rec.eta = metrics::diag_metric(*ensemble.common_basis,
                                                       ensemble.covariances).eta;
                        rec.iters = 0;
                    });
                }
            }
            rows.push_back(std::move(pgd_rec));
            rows.push_back(std::move(oracle_rec));
        }
        return rows;
    }

    // Fig. 2: non-jointly-diagonalizable ensembles; PGD and JADE both solve
    // on sample covariances, quality is measured against the true ones.
    std::vector<ResultRecord> run_fig2_trial(int trial, std::uint64_t trial_seed) const
    {
        return sampled_methods_trial(trial, trial_seed, /*with_jade=*/true,
                                     /*with_fourier=*/false);
    }

    std::vector<ResultRecord> run_custom_trial(int trial, std::uint64_t trial_seed) const
    {
        return sampled_methods_trial(trial, trial_seed, /*with_jade=*/true,
                                     /*with_fourier=*/study_kind() == GeneratorKind::ula);
    }

    std::vector<ResultRecord> sampled_methods_trial(int trial, std::uint64_t trial_seed,
                                                    bool with_jade, bool with_fourier) const
    {
        std::vector<ResultRecord> rows;
        Ensemble ensemble;
        bool have_ensemble = false;
        try {
            ensemble = timed_generate(config_.m, config_.k, derive_seed(trial_seed, {kTagEnsemble}));
            have_ensemble = true;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "# %s trial %d ensemble: %s\n", study_name(config_.study),
                         trial, e.what());
        }

        for (int n : config_.grid) {
            const bool exact = config_.exact || n == 0;
            std::vector<ResultRecord> grid_rows;
            grid_rows.push_back(base_record(trial, n, "pgd", trial_seed));
            if (with_jade)
                grid_rows.push_back(base_record(trial, n, "jade", trial_seed));
            if (with_fourier)
                grid_rows.push_back(base_record(trial, n, "fourier", trial_seed));

            bool have_covs = false;
            std::vector<HermitianCovariance> covs;
            if (have_ensemble) {
                try {
                    covs = exact ? ensemble.covariances : sampled_covariances(ensemble, n, trial_seed);
                    have_covs = true;
                } catch (const std::exception& e) {
                    std::fprintf(stderr, "# %s trial %d N=%d sampling: %s\n",
                                 study_name(config_.study), trial, n, e.what());
                }
            }

            if (!have_covs) {
                for (auto& rec : grid_rows) {
                    rec.status = "error";
                    totals_.errors.fetch_add(1, std::memory_order_relaxed);
                }
            } else {
                const ml::ObjectiveContext ctx{covs};
                std::size_t idx = 0;
                fill_record(grid_rows[idx++], [&](ResultRecord& rec) {
                    const pgd::SolveResult res = timed_pgd(ctx, solver_config(trial_seed, n));
                    rec.cost = res.final_cost;
                    rec.eta = metrics::diag_metric(res.basis, ensemble.covariances).eta;
                    rec.iters = res.trace.iterations();
                });
                if (with_jade) {
                    fill_record(grid_rows[idx++], [&](ResultRecord& rec) {
                        const jade::JadeResult res = timed_jade(covs);
                        rec.cost = ml::cost(res.basis, ctx);
                        rec.eta = metrics::diag_metric(res.basis, ensemble.covariances).eta;
                        rec.iters = res.sweeps;
                    });
                }
                if (with_fourier) {
                    fill_record(grid_rows[idx++], [&](ResultRecord& rec) {
                        const UnitaryMatrix f = metrics::fourier_basis(ensemble.dim());
                        rec.cost = ml::cost(f, ctx);
                        rec.eta = metrics::diag_metric(f, ensemble.covariances).eta;
                        rec.iters = 0;
                    });
                }
            }
            for (auto& rec : grid_rows)
                rows.push_back(std::move(rec));
        }
        return rows;
    }

    // Fig. 3: exact ULA covariances per grid M, PGD against the Fourier
    // basis. No sampling: the study models the converged-sample regime.
    std::vector<ResultRecord> run_fig3_trial(int trial, std::uint64_t trial_seed) const
    {
        std::vector<ResultRecord> rows;
        for (int m : config_.grid) {
            ResultRecord pgd_rec = base_record(trial, m, "pgd", trial_seed);
            ResultRecord fourier_rec = base_record(trial, m, "fourier", trial_seed);

            Ensemble ensemble;
            bool have_ensemble = false;
            try {
                ensemble = timed_generate(
                    m, config_.k,
                    derive_seed(trial_seed, {kTagEnsemble, static_cast<std::uint64_t>(m)}));
                have_ensemble = true;
            } catch (const std::exception& e) {
                std::fprintf(stderr, "# fig3 trial %d M=%d ensemble: %s\n", trial, m, e.what());
            }

            if (!have_ensemble) {
                pgd_rec.status = fourier_rec.status = "error";
                totals_.errors.fetch_add(2, std::memory_order_relaxed);
            } else {
                const ml::ObjectiveContext ctx{ensemble.covariances};
                fill_record(pgd_rec, [&](ResultRecord& rec) {
                    const pgd::SolveResult res = timed_pgd(ctx, solver_config(trial_seed, m));
                    rec.cost = res.final_cost;
                    rec.eta = metrics::diag_metric(res.basis, ensemble.covariances).eta;
                    rec.iters = res.trace.iterations();
                });
                fill_record(fourier_rec, [&](ResultRecord& rec) {
                    const UnitaryMatrix f = metrics::fourier_basis(m);
                    rec.cost = ml::cost(f, ctx);
                    rec.eta = metrics::diag_metric(f, ensemble.covariances).eta;
                    rec.iters = 0;
                });
            }
            rows.push_back(std::move(pgd_rec));
            rows.push_back(std::move(fourier_rec));
        }
        return rows;
    }

    const ExperimentConfig& config_;
    Totals& totals_;
};

void validate(const ExperimentConfig& config)
{
    if (config.trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (config.grid.empty())
        throw std::invalid_argument("grid must not be empty");
    for (std::size_t i = 1; i < config.grid.size(); ++i)
        if (config.grid[i] <= config.grid[i - 1])
            throw std::invalid_argument("grid values must be strictly increasing");
    if (config.solver.init == pgd::InitKind::given)
        throw std::invalid_argument("experiments derive their own solver seeds; "
                                    "init == given is not supported here");
}

}  // namespace

const char* study_name(Study study)
{
    switch (study) {
        case Study::fig1: return "fig1";
        case Study::fig2: return "fig2";
        case Study::fig3: return "fig3";
        case Study::custom: return "custom";
    }
    return "custom";
}

Study study_from_name(const std::string& name)
{
    if (name == "fig1") return Study::fig1;
    if (name == "fig2") return Study::fig2;
    if (name == "fig3") return Study::fig3;
    if (name == "custom") return Study::custom;
    throw std::invalid_argument("unknown study: " + name);
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config_in)
{
    ExperimentConfig config = config_in;
    if (config.grid.empty())
        config.grid = default_grid(config.study);
    validate(config);

    Totals totals;
    StudyRunner runner(config, totals);
    const int threads = resolve_threads(config.trials);

    std::vector<std::vector<ResultRecord>> slots(static_cast<std::size_t>(config.trials));
    std::atomic<int> next{0};
    const auto started = Clock::now();

    auto worker = [&] {
        while (true) {
            const int trial = next.fetch_add(1, std::memory_order_relaxed);
            if (trial >= config.trials)
                break;
            slots[static_cast<std::size_t>(trial)] = runner.run_trial(trial);
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads - 1));
    for (int i = 1; i < threads; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();

    std::vector<ResultRecord> rows;
    for (auto& slot : slots)
        for (auto& rec : slot)
            rows.push_back(std::move(rec));

    const auto total_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started).count();
    std::ostringstream grid_str;
    for (std::size_t i = 0; i < config.grid.size(); ++i)
        grid_str << (i ? "," : "") << config.grid[i];
    std::fprintf(stderr,
                 "# experiment %s: trials=%d grid=%s threads=%d rows=%zu errors=%d "
                 "wall_ms total=%lld pgd=%lld jade=%lld gen=%lld\n",
                 study_name(config.study), config.trials, grid_str.str().c_str(), threads,
                 rows.size(), totals.errors.load(),
                 static_cast<long long>(total_ms),
                 static_cast<long long>(totals.pgd_us.load() / 1000),
                 static_cast<long long>(totals.jade_us.load() / 1000),
                 static_cast<long long>(totals.gen_us.load() / 1000));
    return rows;
}

void write_experiment_csv(const std::vector<ResultRecord>& rows, std::ostream& out)
{
    out << "study,trial,grid,method,cost,eta,iters,wall_ms,seed,status\n";
    for (const auto& rec : rows) {
        out << rec.study << ',' << rec.trial << ',' << rec.grid_value << ',' << rec.method
            << ',' << serialize::format_e12(rec.cost) << ',' << serialize::format_e12(rec.eta)
            << ',' << rec.iters << ',' << rec.wall_ms << ',' << rec.seed << ',' << rec.status
            << '\n';
    }
}

std::string plot_script(Study study, const std::string& csv_path)
{
    const bool cost_plot = study == Study::fig1;
    const char* ylabel = cost_plot ? "mean ML cost" : "mean diagonalization metric";
    const char* methods[2] = {"pgd", nullptr};
    switch (study) {
        case Study::fig1: methods[1] = "oracle_ces"; break;
        case Study::fig2: methods[1] = "jade"; break;
        case Study::fig3: methods[1] = "fourier"; break;
        case Study::custom: methods[1] = "jade"; break;
    }
    const int ycol = cost_plot ? 5 : 6;

    std::ostringstream out;
    out << "# gnuplot script generated by cesolve\n"
        << "set datafile separator ','\n"
        << "set key top right\n"
        << "set logscale x 2\n"
        << "set xlabel '" << (study == Study::fig3 ? "M" : "N") << "'\n"
        << "set ylabel '" << ylabel << "'\n";
    out << "plot ";
    for (int i = 0; i < 2; ++i) {
        if (i)
            out << ", ";
        out << "'" << csv_path << "' every ::1 using 3:((strcol(4) eq '" << methods[i]
            << "' && strcol(10) eq 'ok') ? $" << ycol << " : NaN) smooth unique "
            << "with linespoints title '" << methods[i] << "'";
    }
    out << "\n";
    return out.str();
}

}  // namespace cesolve::expt
