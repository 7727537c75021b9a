#include <vector>

#include <doctest.h>

#include "cesolve/covariance_model.hpp"
#include "cesolve/jade.hpp"
#include "cesolve/kernels.hpp"
#include "cesolve/metrics.hpp"
#include "cesolve/unitary_manifold.hpp"
#include "test_helpers.hpp"

using namespace cesolve;

TEST_CASE("identity family is already diagonal")
{
    std::vector<HermitianCovariance> covs(3, HermitianCovariance(Matrix::Identity(4, 4)));
    const jade::JadeResult res = jade::jade_diagonalize_traced(covs, {});
    CHECK(res.converged);
    CHECK((res.basis.matrix() - Matrix::Identity(4, 4)).norm() <= 1e-12);
}

TEST_CASE("commuting families are diagonalized to machine precision")
{
    const Ensemble ens = cov::gen_joint_ensemble(8, 4, 5);
    const jade::JadeResult res = jade::jade_diagonalize_traced(ens.covariances, {});
    CHECK(res.converged);
    CHECK(res.sweeps >= 1);
    CHECK(metrics::diag_metric(res.basis, ens.covariances).eta <= 1e-12);
    CHECK(manifold::unitarity_defect(res.basis.matrix()) <= 1e-10);
}

TEST_CASE("a single covariance is an exact eigenproblem for JADE")
{
    const Ensemble ens = cov::gen_independent_ensemble(8, 1, 6);
    const jade::JadeResult res = jade::jade_diagonalize_traced(ens.covariances, {});
    CHECK(res.converged);
    CHECK(metrics::diag_metric(res.basis, ens.covariances).eta <= 1e-8);
}

TEST_CASE("off-diagonal energy is non-increasing across sweeps")
{
    const Ensemble ens = cov::gen_independent_ensemble(8, 4, 7);
    const jade::JadeResult res = jade::jade_diagonalize_traced(ens.covariances, {});
    REQUIRE(res.off_energy.size() >= 1);
    for (std::size_t i = 1; i < res.off_energy.size(); ++i)
        CHECK(res.off_energy[i] <= res.off_energy[i - 1] + 1e-12);

    // The final energy matches a direct recomputation at the returned basis.
    double direct = 0.0;
    for (const auto& cov_k : ens.covariances) {
        const Matrix d = res.basis.matrix().adjoint() * cov_k.matrix() * res.basis.matrix();
        direct += kernels::off_diag_energy(d.data(), 8);
    }
    CHECK(res.off_energy.back() == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("sweep cap is honored")
{
    const Ensemble ens = cov::gen_independent_ensemble(8, 4, 8);
    jade::JacobiConfig cfg;
    cfg.max_sweeps = 1;
    cfg.off_tol = 1e-300;  // unreachable, so the cap binds
    const jade::JadeResult res = jade::jade_diagonalize_traced(ens.covariances, cfg);
    CHECK(res.sweeps == 1);
    CHECK_FALSE(res.converged);
}

TEST_CASE("jade is deterministic")
{
    const Ensemble ens = cov::gen_independent_ensemble(6, 3, 12);
    const UnitaryMatrix a = jade::jade_diagonalize(ens.covariances, {});
    const UnitaryMatrix b = jade::jade_diagonalize(ens.covariances, {});
    CHECK((a.matrix() - b.matrix()).norm() == 0.0);
}

TEST_CASE("jade beats a random basis on generic ensembles")
{
    const Ensemble ens = cov::gen_independent_ensemble(8, 4, 13);
    const UnitaryMatrix v = jade::jade_diagonalize(ens.covariances, {});
    const double eta_jade = metrics::diag_metric(v, ens.covariances).eta;
    const double eta_rand =
        metrics::diag_metric(manifold::random_unitary(8, 14), ens.covariances).eta;
    CHECK(eta_jade < eta_rand);
}
