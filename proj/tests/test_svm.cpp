#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "eegmi/error.hpp"
#include "eegmi/rng.hpp"
#include "eegmi/svm.hpp"

using namespace eegmi;

namespace {

struct Blobs {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
};

Blobs make_blobs(int per_class, double separation, std::uint64_t seed) {
    auto rng = make_rng(seed, "svm_blobs");
    Blobs b;
    b.x.resize(2 * per_class, 2);
    b.y.resize(2 * per_class);
    for (int i = 0; i < 2 * per_class; ++i) {
        const double sign = i < per_class ? -1.0 : 1.0;
        b.x(i, 0) = sign * separation + 0.5 * normal01(rng);
        b.x(i, 1) = sign * separation + 0.5 * normal01(rng);
        b.y[i] = sign;
    }
    return b;
}

FeatureMatrix blob_matrix(const Blobs& b) {
    FeatureMatrix m;
    m.values = b.x;
    for (int c = 0; c < m.cols(); ++c)
        m.descriptors.push_back({c, FeatureFamily::statistical, "f" + std::to_string(c)});
    for (int i = 0; i < m.rows(); ++i) {
        m.labels.push_back(b.y[i] > 0 ? 1 : 0);
        m.row_ids.push_back(i);
    }
    return m;
}

}  // namespace

TEST_CASE("separable blobs are classified perfectly") {
    const Blobs b = make_blobs(50, 2.0, 1);
    const SvmModel m = svm_train(b.x, b.y, SvmConfig{});
    const Eigen::VectorXd pred = svm_predict(m, b.x);
    for (int i = 0; i < pred.size(); ++i) CHECK(pred[i] == b.y[i]);
}

TEST_CASE("flipping every label negates the model") {
    const Blobs b = make_blobs(40, 1.5, 2);
    const SvmModel m1 = svm_train(b.x, b.y, SvmConfig{});
    const SvmModel m2 = svm_train(b.x, Eigen::VectorXd(-b.y), SvmConfig{});
    for (int i = 0; i < m1.w.size(); ++i)
        CHECK(m2.w[i] == doctest::Approx(-m1.w[i]).epsilon(1e-9));
    CHECK(m2.b == doctest::Approx(-m1.b).epsilon(1e-9));
}

TEST_CASE("training twice gives bit-identical weights") {
    const Blobs b = make_blobs(30, 1.0, 3);
    const SvmModel m1 = svm_train(b.x, b.y, SvmConfig{});
    const SvmModel m2 = svm_train(b.x, b.y, SvmConfig{});
    CHECK((m1.w.array() == m2.w.array()).all());
    CHECK(m1.b == m2.b);
}

TEST_CASE("duplicating every row leaves the model unchanged") {
    const Blobs b = make_blobs(25, 1.0, 4);
    Eigen::MatrixXd x2(b.x.rows() * 2, b.x.cols());
    Eigen::VectorXd y2(b.y.size() * 2);
    x2 << b.x, b.x;
    y2 << b.y, b.y;
    const SvmModel m1 = svm_train(b.x, b.y, SvmConfig{});
    const SvmModel m2 = svm_train(x2, y2, SvmConfig{});
    for (int i = 0; i < m1.w.size(); ++i)
        CHECK(m2.w[i] == doctest::Approx(m1.w[i]).epsilon(1e-9));
    CHECK(m2.b == doctest::Approx(m1.b).epsilon(1e-9));
}

TEST_CASE("longer training never worsens the returned objective") {
    const Blobs b = make_blobs(30, 0.8, 5);
    SvmConfig cfg;
    double prev = std::numeric_limits<double>::infinity();
    for (int epochs : {1, 10, 50, 200}) {
        cfg.epochs = epochs;
        const SvmModel m = svm_train(b.x, b.y, cfg);
        const double obj = svm_objective(m, b.x, b.y);
        CHECK(obj <= prev + 1e-12);
        prev = obj;
    }
}

TEST_CASE("the zero model predicts the positive class") {
    SvmModel m;
    m.w = Eigen::VectorXd::Zero(2);
    m.b = 0.0;
    Eigen::MatrixXd x(2, 2);
    x << 1.0, -1.0, -3.0, 2.0;
    const Eigen::VectorXd pred = svm_predict(m, x);
    CHECK(pred[0] == 1.0);
    CHECK(pred[1] == 1.0);
}

TEST_CASE("objective is the regularizer plus mean hinge") {
    SvmModel m;
    m.w = Eigen::VectorXd::Zero(2);
    m.w << 1.0, 0.0;
    m.b = 0.0;
    m.config.c = 1.0;
    Eigen::MatrixXd x(2, 2);
    x << 2.0, 0.0,   // margin +2, hinge 0
        0.5, 0.0;    // margin +0.5, hinge 0.5
    Eigen::VectorXd y(2);
    y << 1.0, 1.0;
    // (1/(2C))*|w|^2 + mean hinge = 0.5 + 0.25
    CHECK(svm_objective(m, x, y) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("training rejects invalid labels and shapes") {
    const Blobs b = make_blobs(10, 1.0, 6);
    Eigen::VectorXd bad = b.y;
    bad[0] = 0.5;
    CHECK_THROWS_AS(svm_train(b.x, bad, SvmConfig{}), Error);
    CHECK_THROWS_AS(svm_train(b.x, b.y.head(5), SvmConfig{}), Error);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(b.y.size());
    CHECK_THROWS_AS(svm_train(b.x, ones, SvmConfig{}), Error);  // single class
}

TEST_CASE("cross-validated accuracy is deterministic and well ranged") {
    const Blobs b = make_blobs(20, 2.0, 7);
    const FeatureMatrix m = blob_matrix(b);
    const double a1 = criterion_svm_cv(m, {0, 1}, 5, 42);
    const double a2 = criterion_svm_cv(m, {0, 1}, 5, 42);
    CHECK(a1 == a2);
    CHECK(a1 >= 0.0);
    CHECK(a1 <= 1.0);
    CHECK(a1 > 0.95);  // well separated blobs

    const double other_seed = criterion_svm_cv(m, {0, 1}, 5, 43);
    CHECK(other_seed >= 0.0);
    CHECK(other_seed <= 1.0);
}

TEST_CASE("an uninformative column scores near chance") {
    const int n = 60;
    FeatureMatrix m;
    m.values.resize(n, 2);
    auto rng = make_rng(8, "svm_noise");
    for (int i = 0; i < n; ++i) {
        m.labels.push_back(i % 2);
        m.row_ids.push_back(i);
        m.values(i, 0) = normal01(rng);
        m.values(i, 1) = normal01(rng) + 4.0 * m.labels.back();
    }
    m.descriptors.push_back({0, FeatureFamily::statistical, "noise"});
    m.descriptors.push_back({1, FeatureFamily::statistical, "signal"});
    const double noise_acc = criterion_svm_cv(m, {0}, 5, 11);
    const double signal_acc = criterion_svm_cv(m, {1}, 5, 11);
    CHECK(signal_acc > 0.9);
    CHECK(noise_acc < 0.75);
}

TEST_CASE("cross validation rejects bad arguments") {
    const Blobs b = make_blobs(10, 1.0, 9);
    const FeatureMatrix m = blob_matrix(b);
    CHECK_THROWS_AS(criterion_svm_cv(m, {}, 5, 1), Error);
    CHECK_THROWS_AS(criterion_svm_cv(m, {0}, 1, 1), Error);
    CHECK_THROWS_AS(criterion_svm_cv(m, {5}, 5, 1), Error);  // column out of range
}
