#include <cmath>
#include <stdexcept>

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include "cesolve/covariance_model.hpp"
#include "cesolve/metrics.hpp"
#include "cesolve/ml_objective.hpp"
#include "cesolve/pgd_solver.hpp"
#include "cesolve/unitary_manifold.hpp"

using namespace cesolve;

TEST_CASE("name round-trips for solver enums")
{
    CHECK(pgd::step_rule_from_name("lipschitz") == pgd::StepRule::lipschitz_backtracking);
    CHECK(pgd::step_rule_from_name("diminishing") == pgd::StepRule::diminishing);
    CHECK(pgd::step_rule_from_name(pgd::step_rule_name(pgd::StepRule::diminishing)) ==
          pgd::StepRule::diminishing);
    CHECK_THROWS_AS(pgd::step_rule_from_name("newton"), std::invalid_argument);

    for (pgd::InitKind kind : {pgd::InitKind::random, pgd::InitKind::given, pgd::InitKind::fourier})
        CHECK(pgd::init_kind_from_name(pgd::init_kind_name(kind)) == kind);
    CHECK_THROWS_AS(pgd::init_kind_from_name("warm"), std::invalid_argument);
}

TEST_CASE("config validation rejects broken settings")
{
    const Ensemble ens = cov::gen_joint_ensemble(4, 2, 1);
    ml::ObjectiveContext ctx(ens.covariances);

    pgd::PgdConfig bad;
    bad.max_iters = 0;
    CHECK_THROWS_AS(pgd::pgd_solve(ctx, bad), std::invalid_argument);

    bad = pgd::PgdConfig{};
    bad.tol_move = 0.0;
    CHECK_THROWS_AS(pgd::pgd_solve(ctx, bad), std::invalid_argument);

    bad = pgd::PgdConfig{};
    bad.shrink = 1.0;
    CHECK_THROWS_AS(pgd::pgd_solve(ctx, bad), std::invalid_argument);

    bad = pgd::PgdConfig{};
    bad.init = pgd::InitKind::given;  // no init_basis supplied
    CHECK_THROWS_AS(pgd::pgd_solve(ctx, bad), std::invalid_argument);
}

TEST_CASE("backtracking descent is monotone and traced")
{
    const Ensemble ens = cov::gen_joint_ensemble(8, 4, 3);
    ml::ObjectiveContext ctx(ens.covariances);
    pgd::PgdConfig cfg;
    cfg.init_seed = 3;
    cfg.max_iters = 500;
    const pgd::SolveResult res = pgd::pgd_solve(ctx, cfg);

    REQUIRE(res.trace.rows.size() >= 2);
    CHECK(res.trace.rows.front().iter == 0);
    CHECK(res.trace.rows.front().step == 0.0);
    for (std::size_t i = 1; i < res.trace.rows.size(); ++i) {
        const auto& prev = res.trace.rows[i - 1];
        const auto& row = res.trace.rows[i];
        CHECK(row.iter == static_cast<int>(i));
        CHECK(row.cost <= prev.cost + 1e-12);
        CHECK(row.defect <= 1e-10);
        CHECK(row.step > 0.0);
    }
    CHECK(res.final_cost == doctest::Approx(res.trace.rows.back().cost));
    CHECK(manifold::unitarity_defect(res.basis.matrix()) <= 1e-10);

    // Lambdas are the quadratic forms at the final basis.
    const auto lambdas = ml::optimal_lambdas(res.basis, ctx);
    REQUIRE(res.lambdas.size() == lambdas.size());
    for (std::size_t k = 0; k < lambdas.size(); ++k)
        CHECK((res.lambdas[k].values() - lambdas[k].values()).norm() <= 1e-12);
}

TEST_CASE("solver runs are deterministic in the seed")
{
    const Ensemble ens = cov::gen_independent_ensemble(6, 3, 5);
    ml::ObjectiveContext ctx(ens.covariances);
    pgd::PgdConfig cfg;
    cfg.init_seed = 11;
    cfg.max_iters = 200;
    const pgd::SolveResult a = pgd::pgd_solve(ctx, cfg);
    const pgd::SolveResult b = pgd::pgd_solve(ctx, cfg);
    CHECK((a.basis.matrix() - b.basis.matrix()).norm() == 0.0);
    CHECK(a.final_cost == b.final_cost);
    REQUIRE(a.trace.rows.size() == b.trace.rows.size());

    cfg.init_seed = 12;
    const pgd::SolveResult c = pgd::pgd_solve(ctx, cfg);
    CHECK((a.basis.matrix() - c.basis.matrix()).norm() > 1e-8);
}

TEST_CASE("fourier and given inits start where they should")
{
    const Ensemble ens = cov::gen_independent_ensemble(8, 2, 9);
    ml::ObjectiveContext ctx(ens.covariances);

    pgd::PgdConfig cfg;
    cfg.init = pgd::InitKind::fourier;
    cfg.max_iters = 1;
    const pgd::SolveResult res = pgd::pgd_solve(ctx, cfg);
    const UnitaryMatrix f = metrics::fourier_basis(8);
    CHECK(res.trace.rows.front().cost == doctest::Approx(ml::cost(f, ctx)).epsilon(1e-12));

    const UnitaryMatrix start = manifold::random_unitary(8, 77);
    cfg.init = pgd::InitKind::given;
    cfg.init_basis = start.matrix();
    const pgd::SolveResult res2 = pgd::pgd_solve(ctx, cfg);
    CHECK(res2.trace.rows.front().cost ==
          doctest::Approx(ml::cost(start, ctx)).epsilon(1e-12));

    Matrix drifted = start.matrix();
    drifted(0, 0) += 0.1;  // clearly non-unitary
    cfg.init_basis = drifted;
    CHECK_THROWS_AS(pgd::pgd_solve(ctx, cfg), std::invalid_argument);
}

TEST_CASE("movement convergence implies projected stationarity")
{
    const Ensemble ens = cov::gen_joint_ensemble(8, 4, 11);
    ml::ObjectiveContext ctx(ens.covariances);
    pgd::PgdConfig cfg;
    cfg.init_seed = 11;
    cfg.max_iters = 50000;
    const pgd::SolveResult res = pgd::pgd_solve(ctx, cfg);
    REQUIRE(res.trace.status == pgd::TerminationStatus::converged_by_move);

    const auto& last = res.trace.rows.back();
    const Matrix g = ml::gradient(res.basis, ctx);
    const double residual =
        (res.basis.matrix() -
         manifold::project(res.basis.matrix() - last.step * g).matrix())
            .norm();
    CHECK(residual <= 10.0 * cfg.tol_move);
}

TEST_CASE("well-conditioned single-covariance instances recover the eigenbasis")
{
    // K=1 with spectrum {1,2,3,4}: the minimizer is the eigenbasis and the
    // optimum value is log(4!) = sum of the log eigenvalues.
    const UnitaryMatrix q = manifold::random_unitary(4, 99);
    Matrix d = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        d(i, i) = static_cast<double>(i + 1);
    const Matrix sigma = q.matrix() * d * q.matrix().adjoint();
    ml::ObjectiveContext ctx({HermitianCovariance(sigma)});
    const double target = std::log(24.0);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        pgd::PgdConfig cfg;
        cfg.init_seed = seed;
        const pgd::SolveResult res = pgd::pgd_solve(ctx, cfg);
        CHECK(std::fabs(res.final_cost - target) <= 1e-8);
    }
}

TEST_CASE("exact joint ensembles are solved to the oracle cost")
{
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const Ensemble ens = cov::gen_joint_ensemble(8, 4, seed);
        ml::ObjectiveContext ctx(ens.covariances);
        const double oracle = ml::cost(*ens.common_basis, ctx);
        pgd::PgdConfig cfg;
        cfg.init_seed = seed;
        cfg.max_iters = 20000;
        const pgd::SolveResult res = pgd::pgd_solve(ctx, cfg);
        CHECK(res.final_cost <= oracle + 1e-6 * std::fabs(oracle));
    }
}

TEST_CASE("diminishing and backtracking rules agree on the optimum")
{
    // Both step rules are anytime-convergent on jointly diagonalizable
    // ensembles; after enough iterations they price the same basin.
    const Ensemble ens = cov::gen_joint_ensemble(16, 8, 2);
    ml::ObjectiveContext ctx(ens.covariances);

    pgd::PgdConfig bt;
    bt.init_seed = 2;
    bt.max_iters = 20000;
    const double cost_bt = pgd::pgd_solve(ctx, bt).final_cost;

    pgd::PgdConfig dim = bt;
    dim.step_rule = pgd::StepRule::diminishing;
    const double cost_dim = pgd::pgd_solve(ctx, dim).final_cost;

    CHECK(std::fabs(cost_bt - cost_dim) <= 1e-6 * (1.0 + std::fabs(cost_bt)));
}

TEST_CASE("proxy value upper-bounds the cost at the step size in use")
{
    const Ensemble ens = cov::gen_independent_ensemble(6, 3, 33);
    ml::ObjectiveContext ctx(ens.covariances);
    const UnitaryMatrix at = manifold::random_unitary(6, 34);

    // At the anchor the proxy equals the cost exactly.
    const double lip = ml::lipschitz_estimate(at, ctx);
    CHECK(pgd::proxy_value(at, at, ctx, lip) ==
          doctest::Approx(ml::cost(at, ctx)).epsilon(1e-14));

    // The projected gradient step minimizes the proxy over unitaries:
    // no random unitary does better.
    const Matrix g = ml::gradient(at, ctx);
    const UnitaryMatrix next = manifold::project(at.matrix() - (1.0 / lip) * g);
    const double proxy_next = pgd::proxy_value(next, at, ctx, lip);
    for (std::uint64_t s = 0; s < 200; ++s) {
        const UnitaryMatrix qrand = manifold::random_unitary(6, 500 + s);
        CHECK(proxy_next <= pgd::proxy_value(qrand, at, ctx, lip) + 1e-10);
    }

    CHECK_THROWS_AS(pgd::proxy_value(at, at, ctx, 0.0), std::invalid_argument);
}
