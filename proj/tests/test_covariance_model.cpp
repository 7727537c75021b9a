#include <cmath>
#include <cstdint>

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include "cesolve/covariance_model.hpp"
#include "cesolve/kernels.hpp"
#include "test_helpers.hpp"

using namespace cesolve;

namespace {

double commutator_norm(const Matrix& a, const Matrix& b)
{
    return (a * b - b * a).norm();
}

}  // namespace

TEST_CASE("sample_covariance on hand-built batches")
{
    // One realization [1, 0]^T: Sigma_hat = x x^H.
    Matrix single(2, 1);
    single << cxd(1, 0), cxd(0, 0);
    const HermitianCovariance one = cov::sample_covariance(RealizationBatch(single));
    CHECK(std::abs(one.matrix()(0, 0) - cxd(1, 0)) <= 1e-15);
    CHECK(std::abs(one.matrix()(0, 1)) <= 1e-15);
    CHECK(std::abs(one.matrix()(1, 0)) <= 1e-15);
    CHECK(std::abs(one.matrix()(1, 1)) <= 1e-15);

    // N=4 canonical basis realizations: (1/4) sum e_i e_i^H = I/4.
    const Matrix eye = Matrix::Identity(4, 4);
    const HermitianCovariance quarter = cov::sample_covariance(RealizationBatch(eye));
    CHECK((quarter.matrix() - 0.25 * eye).norm() <= 1e-15);
}

TEST_CASE("sample covariance converges to the true covariance")
{
    Matrix d = Matrix::Zero(4, 4);
    d(0, 0) = 0.7;
    d(1, 1) = 0.2;
    d(2, 2) = 0.08;
    d(3, 3) = 0.02;
    const HermitianCovariance sigma(d);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const auto hat = cov::sample_covariance(cov::sample_realizations(sigma, 10000, seed));
        CHECK((hat.matrix() - d).norm() <= 0.05);
    }
}

TEST_CASE("sample_realizations is seeded and shaped")
{
    const HermitianCovariance sigma(test::random_hpd_matrix(3, 5));
    const RealizationBatch a = cov::sample_realizations(sigma, 17, 9);
    const RealizationBatch b = cov::sample_realizations(sigma, 17, 9);
    const RealizationBatch c = cov::sample_realizations(sigma, 17, 10);
    CHECK(a.dim() == 3);
    CHECK(a.count() == 17);
    CHECK((a.matrix() - b.matrix()).norm() == 0.0);
    CHECK((a.matrix() - c.matrix()).norm() > 1e-6);
}

TEST_CASE("joint ensembles share an exact common eigenbasis")
{
    const Ensemble ens = cov::gen_joint_ensemble(8, 4, 3);
    CHECK(ens.kind == GeneratorKind::joint);
    CHECK(ens.dim() == 8);
    CHECK(ens.count() == 4);
    REQUIRE(ens.common_basis.has_value());
    REQUIRE(ens.eigenvalues.size() == 4);

    const Matrix u = ens.common_basis->matrix();
    for (int k = 0; k < 4; ++k) {
        const Matrix& s = ens.covariances[static_cast<std::size_t>(k)].matrix();
        // Conjugation by the stored basis diagonalizes, with the stored spectrum.
        const Matrix d = u.adjoint() * s * u;
        CHECK(kernels::off_diag_energy(d.data(), 8) <= 1e-18 * s.norm() * s.norm());
        for (int i = 0; i < 8; ++i)
            CHECK(d(i, i).real() ==
                  doctest::Approx(ens.eigenvalues[static_cast<std::size_t>(k)][i]).epsilon(1e-10));
    }

    // All pairs commute.
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            CHECK(commutator_norm(ens.covariances[static_cast<std::size_t>(a)].matrix(),
                                  ens.covariances[static_cast<std::size_t>(b)].matrix()) <= 1e-10);
}

TEST_CASE("independent ensembles do not share a basis")
{
    const Ensemble ens = cov::gen_independent_ensemble(8, 4, 3);
    CHECK(ens.kind == GeneratorKind::independent);
    CHECK_FALSE(ens.common_basis.has_value());
    CHECK(ens.eigenvalues.size() == 4);

    // Generic independent draws never commute.
    double max_comm = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            max_comm = std::max(
                max_comm, commutator_norm(ens.covariances[static_cast<std::size_t>(a)].matrix(),
                                          ens.covariances[static_cast<std::size_t>(b)].matrix()));
    CHECK(max_comm > 1e-3);

    // Stored per-covariance spectra match an eigendecomposition.
    for (int k = 0; k < 4; ++k) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(
            ens.covariances[static_cast<std::size_t>(k)].matrix(), Eigen::EigenvaluesOnly);
        RealVector sorted = ens.eigenvalues[static_cast<std::size_t>(k)].values();
        std::sort(sorted.data(), sorted.data() + sorted.size());
        CHECK((sorted - es.eigenvalues()).norm() <= 1e-9 * (1.0 + es.eigenvalues().norm()));
    }
}

TEST_CASE("ULA ensembles are Hermitian Toeplitz with the target effective rank")
{
    UlaParams params;
    params.effective_rank_target = 8;
    const Ensemble ens = cov::gen_ula_ensemble(16, 8, params, 11);
    CHECK(ens.kind == GeneratorKind::ula);
    CHECK(ens.count() == 8);
    for (const auto& cov_k : ens.covariances) {
        const Matrix& s = cov_k.matrix();
        // Toeplitz: entries constant along diagonals.
        for (int i = 0; i + 1 < 16; ++i)
            for (int j = 0; j + 1 < 16; ++j)
                CHECK(std::abs(s(i, j) - s(i + 1, j + 1)) <= 1e-10 * (1.0 + std::abs(s(i, j))));
        CHECK(cov::effective_rank(cov_k) == 8);
    }
}

TEST_CASE("effective_rank counts the 0.95 trace fraction")
{
    Matrix d = Matrix::Zero(4, 4);
    d(0, 0) = 0.7;
    d(1, 1) = 0.2;
    d(2, 2) = 0.08;
    d(3, 3) = 0.02;
    // 0.7 + 0.2 = 0.90 < 0.95; adding 0.08 crosses the threshold.
    CHECK(cov::effective_rank(HermitianCovariance(d)) == 3);

    CHECK(cov::effective_rank(HermitianCovariance(Matrix::Identity(5, 5))) == 5);
}

TEST_CASE("generators are deterministic in the seed")
{
    const Ensemble a = cov::gen_joint_ensemble(6, 3, 77);
    const Ensemble b = cov::gen_joint_ensemble(6, 3, 77);
    const Ensemble c = cov::gen_joint_ensemble(6, 3, 78);
    for (int k = 0; k < 3; ++k) {
        CHECK((a.covariances[static_cast<std::size_t>(k)].matrix() -
               b.covariances[static_cast<std::size_t>(k)].matrix())
                  .norm() == 0.0);
    }
    CHECK((a.covariances[0].matrix() - c.covariances[0].matrix()).norm() > 1e-6);

    const Ensemble u1 = cov::gen_ula_ensemble(8, 2, UlaParams{0.5, 0, 4}, 5);
    const Ensemble u2 = cov::gen_ula_ensemble(8, 2, UlaParams{0.5, 0, 4}, 5);
    CHECK((u1.covariances[1].matrix() - u2.covariances[1].matrix()).norm() == 0.0);
}
