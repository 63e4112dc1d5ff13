#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "eegmi/error.hpp"
#include "eegmi/mi.hpp"
#include "eegmi/rng.hpp"

using namespace eegmi;

namespace {

std::vector<int> balanced_labels(int n) {
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) y[i] = i < n / 2 ? 0 : 1;
    return y;
}

FeatureMatrix matrix_from_columns(const std::vector<Eigen::VectorXd>& cols,
                                  const std::vector<int>& labels) {
    FeatureMatrix m;
    m.values.resize(cols[0].size(), static_cast<int>(cols.size()));
    for (int c = 0; c < m.cols(); ++c) m.values.col(c) = cols[c];
    for (int c = 0; c < m.cols(); ++c)
        m.descriptors.push_back({c, FeatureFamily::spectral, "f" + std::to_string(c)});
    m.labels = labels;
    for (int r = 0; r < m.rows(); ++r) m.row_ids.push_back(r);
    return m;
}

}  // namespace

TEST_CASE("a constant feature carries exactly zero information") {
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(32, 3.25);
    CHECK(estimate_mi(x, balanced_labels(32), 16) == 0.0);
}

TEST_CASE("a feature identical to balanced labels carries ln 2 nats") {
    const int n = 32;
    Eigen::VectorXd x(n);
    const std::vector<int> y = balanced_labels(n);
    for (int i = 0; i < n; ++i) x[i] = static_cast<double>(y[i]);
    CHECK(std::abs(estimate_mi(x, y, 16) - std::log(2.0)) <= 1e-12);
}

TEST_CASE("an independent feature scores near zero on large samples") {
    const int n = 10000;
    auto rng = make_rng(3, "mi_independent");
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = normal01(rng);
    const double mi = estimate_mi(x, balanced_labels(n), 16);
    CHECK(mi >= 0.0);
    CHECK(mi < 0.01);
}

TEST_CASE("strictly increasing transforms leave the estimate bit-identical") {
    const int n = 200;
    auto rng = make_rng(7, "mi_monotone");
    Eigen::VectorXd x(n);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) {
        y[i] = i % 2;
        x[i] = normal01(rng) + 0.8 * y[i];
    }
    const double base = estimate_mi(x, y, 16);
    CHECK(base > 0.0);

    Eigen::VectorXd affine = 3.0 * x;
    affine.array() += 7.0;
    CHECK(estimate_mi(affine, y, 16) == base);

    Eigen::VectorXd expd = x.array().exp();
    CHECK(estimate_mi(expd, y, 16) == base);

    // A decreasing transform reorders the bins, so no such guarantee holds;
    // the estimate still stays non-negative.
    CHECK(estimate_mi(Eigen::VectorXd(-x), y, 16) >= 0.0);
}

TEST_CASE("estimates are non-negative and bounded by ln of the class count") {
    auto rng = make_rng(11, "mi_range");
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 64;
        Eigen::VectorXd x(n);
        std::vector<int> y(n);
        for (int i = 0; i < n; ++i) {
            y[i] = i % 2;
            x[i] = normal01(rng) + 0.3 * y[i];
        }
        const double mi = estimate_mi(x, y, 16);
        CHECK(mi >= 0.0);
        CHECK(mi <= std::log(2.0) + 1e-12);
    }
}

TEST_CASE("the filter keeps only columns strictly above the threshold") {
    const int n = 64;
    const std::vector<int> y = balanced_labels(n);
    auto rng = make_rng(13, "mi_filter");

    Eigen::VectorXd informative(n), constant(n), noise(n);
    for (int i = 0; i < n; ++i) {
        informative[i] = static_cast<double>(y[i]);
        constant[i] = 2.0;
        noise[i] = normal01(rng);
    }
    const FeatureMatrix m = matrix_from_columns({constant, informative, noise}, y);

    MiConfig cfg;
    cfg.threshold = 0.5;  // between noise-level MI and ln 2
    const MiFilterResult r = mi_filter(m, cfg);
    REQUIRE(r.mi_values.size() == 3);
    CHECK(r.mi_values[0] == 0.0);
    CHECK(std::abs(r.mi_values[1] - std::log(2.0)) <= 1e-12);
    CHECK(r.kept == std::vector<int>{1});

    // The comparison is strict: a threshold exactly at ln 2 drops the column.
    cfg.threshold = r.mi_values[1];
    CHECK_THROWS_AS(mi_filter(matrix_from_columns({informative}, y), cfg), EmptySelectionError);
}

TEST_CASE("kept columns preserve original order") {
    const int n = 64;
    const std::vector<int> y = balanced_labels(n);
    Eigen::VectorXd a(n), b(n), c(n);
    for (int i = 0; i < n; ++i) {
        a[i] = static_cast<double>(y[i]);
        b[i] = static_cast<double>(1 - y[i]);
        c[i] = (i % 4 < 2) ? 0.0 : 1.0;  // independent of labels
    }
    MiConfig cfg;
    cfg.threshold = 0.3;
    const MiFilterResult r = mi_filter(matrix_from_columns({a, c, b}, y), cfg);
    CHECK(r.kept == std::vector<int>{0, 2});
}

TEST_CASE("all-noise matrices raise the empty-selection error") {
    const int n = 64;
    Eigen::VectorXd flat = Eigen::VectorXd::Constant(n, 1.0);
    const FeatureMatrix m = matrix_from_columns({flat, flat}, balanced_labels(n));
    MiConfig cfg;
    CHECK_THROWS_AS(mi_filter(m, cfg), EmptySelectionError);
    // EmptySelectionError is still an Error, so generic handlers catch it.
    CHECK_THROWS_AS(mi_filter(m, cfg), Error);
}

TEST_CASE("degenerate inputs are rejected") {
    Eigen::VectorXd x(8);
    x.setZero();
    CHECK_THROWS_AS(estimate_mi(x, balanced_labels(4), 4), Error);   // length mismatch
    CHECK_THROWS_AS(estimate_mi(x, balanced_labels(8), 1), Error);   // too few bins
    CHECK_THROWS_AS(estimate_mi(x, balanced_labels(8), 16), Error);  // fewer samples than bins
}
