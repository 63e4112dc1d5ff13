#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eegmi/error.hpp"
#include "eegmi/pca.hpp"
#include "eegmi/rng.hpp"
#include "oracles.hpp"

using namespace eegmi;

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
    auto rng = make_rng(seed, "pca_test");
    Eigen::MatrixXd x(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) x(r, c) = normal01(rng);
    // Stretch some directions so the spectrum is well separated.
    for (int c = 0; c < cols; ++c) x.col(c) *= 1.0 + 0.7 * c;
    return x;
}

Eigen::MatrixXd population_cov(const Eigen::MatrixXd& x) {
    const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
    return (centered.transpose() * centered) / static_cast<double>(x.rows());
}

}  // namespace

TEST_CASE("explained variances match a jacobi eigensolver") {
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXd x = random_matrix(30, 8, 200 + trial);
        const PcaModel m = pca_fit(x, 8);
        const auto [evals, evecs] = oracle::jacobi_eigen(population_cov(x));
        REQUIRE(m.explained_variances.size() == 8);
        for (int k = 0; k < 8; ++k) {
            const double denom = std::max(std::abs(evals[k]), 1e-12);
            CHECK(std::abs(m.explained_variances[k] - evals[k]) / denom <= 1e-8);
        }
    }
}

TEST_CASE("leading subspace matches the jacobi reference") {
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXd x = random_matrix(30, 8, 300 + trial);
        const PcaModel m = pca_fit(x, 3);
        const auto [evals, evecs] = oracle::jacobi_eigen(population_cov(x));
        // Compare projectors so eigenvector sign and order conventions drop out.
        const Eigen::MatrixXd p_impl = m.components.transpose() * m.components;
        const Eigen::MatrixXd v3 = evecs.leftCols(3);
        const Eigen::MatrixXd p_ref = v3 * v3.transpose();
        CHECK((p_impl - p_ref).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("collinear points give one component along the line") {
    Eigen::MatrixXd x(3, 2);
    x << 0.0, 0.0, 1.0, 2.0, 2.0, 4.0;
    const PcaModel m = pca_fit(x, 2);
    CHECK(m.explained_variances[0] == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
    CHECK(m.explained_variances[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(m.components(0, 0) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(m.components(0, 1) == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("variances are sorted descending and sum to the trace") {
    const Eigen::MatrixXd x = random_matrix(25, 6, 17);
    const PcaModel m = pca_fit(x, 6);
    for (int k = 1; k < 6; ++k)
        CHECK(m.explained_variances[k - 1] >= m.explained_variances[k]);
    CHECK(m.explained_variances.sum() ==
          doctest::Approx(population_cov(x).trace()).epsilon(1e-10));
}

TEST_CASE("each component's largest coordinate is positive") {
    const Eigen::MatrixXd x = random_matrix(40, 7, 23);
    const PcaModel m = pca_fit(x, 7);
    for (int k = 0; k < 7; ++k) {
        int peak = 0;
        for (int i = 1; i < 7; ++i)
            if (std::abs(m.components(k, i)) > std::abs(m.components(k, peak))) peak = i;
        CHECK(m.components(k, peak) > 0.0);
    }
}

TEST_CASE("components are orthonormal") {
    const Eigen::MatrixXd x = random_matrix(30, 5, 31);
    const PcaModel m = pca_fit(x, 5);
    const Eigen::MatrixXd gram = m.components * m.components.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("projected training data is centered and norm preserving") {
    const Eigen::MatrixXd x = random_matrix(30, 5, 37);
    const PcaModel m = pca_fit(x, 5);
    const Eigen::MatrixXd proj = pca_project(m, x);
    for (int c = 0; c < 5; ++c) CHECK(std::abs(proj.col(c).mean()) <= 1e-10);
    const Eigen::MatrixXd centered = x.rowwise() - m.mean.transpose();
    for (int r = 0; r < 30; ++r)
        CHECK(proj.row(r).norm() == doctest::Approx(centered.row(r).norm()).epsilon(1e-10));
}

TEST_CASE("projection of held-out rows uses the training mean") {
    const Eigen::MatrixXd x = random_matrix(20, 4, 41);
    const PcaModel m = pca_fit(x, 2);
    Eigen::MatrixXd row(1, 4);
    row << 1.0, 2.0, 3.0, 4.0;
    const Eigen::MatrixXd proj = pca_project(m, row);
    const Eigen::VectorXd expected =
        m.components * (row.row(0).transpose() - m.mean);
    CHECK(std::abs(proj(0, 0) - expected[0]) <= 1e-12);
    CHECK(std::abs(proj(0, 1) - expected[1]) <= 1e-12);
}

TEST_CASE("fit is deterministic") {
    const Eigen::MatrixXd x = random_matrix(30, 6, 53);
    const PcaModel a = pca_fit(x, 4);
    const PcaModel b = pca_fit(x, 4);
    CHECK((a.components.array() == b.components.array()).all());
    CHECK((a.explained_variances.array() == b.explained_variances.array()).all());
    CHECK((a.mean.array() == b.mean.array()).all());
}

TEST_CASE("degenerate inputs are rejected") {
    const Eigen::MatrixXd x = random_matrix(10, 4, 61);
    CHECK_THROWS_AS(pca_fit(x.topRows(1), 1), Error);
    CHECK_THROWS_AS(pca_fit(x, 0), Error);
    CHECK_THROWS_AS(pca_fit(x, 5), Error);
    const Eigen::MatrixXd three = random_matrix(3, 6, 62);
    CHECK_THROWS_AS(pca_fit(three, 4), Error);  // capped by observation count
    const PcaModel m = pca_fit(x, 2);
    CHECK_THROWS_AS(pca_project(m, random_matrix(2, 3, 63)), Error);
}
