#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "cesolve/covariance_model.hpp"
#include "cesolve/metrics.hpp"
#include "cesolve/ml_objective.hpp"
#include "cesolve/pgd_solver.hpp"
#include "cesolve/rng.hpp"
#include "cesolve/unitary_manifold.hpp"
#include "test_helpers.hpp"

using namespace cesolve;

TEST_CASE("diag metric on the worked hand case")
{
    // Sigma = [[0.5, 0.5], [0.5, 0.5]] has Frobenius norm 1 and diagonal
    // (0.5, 0.5) under the identity basis, so eta = 1 - 1/sqrt(2).
    Matrix s(2, 2);
    s << cxd(0.5, 0), cxd(0.5, 0), cxd(0.5, 0), cxd(0.5, 0);
    const metrics::MetricReport rep = metrics::diag_metric(
        UnitaryMatrix(Matrix::Identity(2, 2)), {HermitianCovariance(s)});
    CHECK(std::fabs(rep.eta - (1.0 - 1.0 / std::sqrt(2.0))) <= 1e-12);
    REQUIRE(rep.per_k_terms.size() == 1);
    CHECK(rep.per_k_terms[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("diag metric vanishes at an exact common eigenbasis")
{
    const Ensemble ens = cov::gen_joint_ensemble(8, 4, 17);
    const metrics::MetricReport rep =
        metrics::diag_metric(*ens.common_basis, ens.covariances);
    CHECK(rep.eta <= 1e-12);
    for (double term : rep.per_k_terms)
        CHECK(term == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("diag metric lies in [0, 1) and averages the per-k terms")
{
    const Ensemble ens = cov::gen_independent_ensemble(6, 3, 19);
    const UnitaryMatrix u = manifold::random_unitary(6, 20);
    const metrics::MetricReport rep = metrics::diag_metric(u, ens.covariances);
    CHECK(rep.eta >= 0.0);
    CHECK(rep.eta < 1.0);
    REQUIRE(rep.per_k_terms.size() == 3);
    double mean = 0.0;
    for (double term : rep.per_k_terms)
        mean += term;
    mean /= 3.0;
    CHECK(rep.eta == doctest::Approx(1.0 - mean).epsilon(1e-12));
}

TEST_CASE("majorization on hand vectors")
{
    CHECK(metrics::majorization_check({3, 1}, {2, 2}));
    CHECK_FALSE(metrics::majorization_check({2, 2}, {3, 1}));
    CHECK(metrics::majorization_check({2, 2}, {2, 2}));
    // Order within the arguments must not matter.
    CHECK(metrics::majorization_check({1, 3}, {2, 2}));

    CHECK_THROWS_AS(metrics::majorization_check({1, 2}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(metrics::majorization_check({1, 2}, {4, 5}), std::domain_error);
}

TEST_CASE("eigenvalues majorize every conjugated diagonal")
{
    // Schur-Horn: diag(Q^H Sigma Q) is majorized by the spectrum of Sigma.
    const Matrix sigma = test::random_hpd_matrix(6, 23);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
    std::vector<double> spectrum(es.eigenvalues().data(), es.eigenvalues().data() + 6);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const UnitaryMatrix q = manifold::random_unitary(6, 600 + s);
        const Matrix d = q.matrix().adjoint() * sigma * q.matrix();
        std::vector<double> diag(6);
        for (int i = 0; i < 6; ++i)
            diag[static_cast<std::size_t>(i)] = d(i, i).real();
        CHECK(metrics::majorization_check(spectrum, diag));
    }
}

TEST_CASE("fourier basis is unitary with flat magnitudes")
{
    const UnitaryMatrix f = metrics::fourier_basis(8);
    CHECK(manifold::unitarity_defect(f.matrix()) <= 1e-12);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            CHECK(std::abs(f.matrix()(i, j)) ==
                  doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-12));

    const UnitaryMatrix f1 = metrics::fourier_basis(1);
    CHECK(std::abs(f1.matrix()(0, 0) - cxd(1, 0)) <= 1e-12);
}

TEST_CASE("fourier basis diagonalizes circulant Hermitian matrices")
{
    const int m = 8;
    const UnitaryMatrix f = metrics::fourier_basis(m);
    CounterRng rng(31);
    std::vector<HermitianCovariance> covs;
    for (int k = 0; k < 3; ++k) {
        // Build a circulant Hermitian PSD matrix as F diag(gamma) F^H with a
        // positive real symbol gamma.
        Matrix d = Matrix::Zero(m, m);
        for (int i = 0; i < m; ++i)
            d(i, i) = cxd(0.1 + 2.0 * rng.next_double(), 0);
        Matrix c = f.matrix() * d * f.matrix().adjoint();
        c = 0.5 * (c + Matrix(c.adjoint()));
        covs.emplace_back(c);
    }
    CHECK(metrics::diag_metric(f, covs).eta <= 1e-10);
}

TEST_CASE("cost gap prices a result against a reference basis")
{
    const Ensemble ens = cov::gen_joint_ensemble(6, 3, 29);
    ml::ObjectiveContext ctx(ens.covariances);
    pgd::PgdConfig cfg;
    cfg.init_seed = 29;
    cfg.max_iters = 300;
    const pgd::SolveResult res = pgd::pgd_solve(ctx, cfg);
    const double gap = metrics::cost_gap(res, *ens.common_basis, ctx);
    CHECK(gap == doctest::Approx(res.final_cost - ml::cost(*ens.common_basis, ctx))
                     .epsilon(1e-12));
}
