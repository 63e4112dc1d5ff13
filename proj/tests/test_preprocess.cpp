#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "eegmi/error.hpp"
#include "eegmi/fir.hpp"
#include "eegmi/rng.hpp"
#include "eegmi/standardize.hpp"

using namespace eegmi;

namespace {

constexpr double kPi = 3.14159265358979323846;

FeatureMatrix make_matrix(const std::vector<std::vector<double>>& rows) {
    FeatureMatrix m;
    m.values.resize(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m.values(r, c) = rows[r][c];
    for (int c = 0; c < m.cols(); ++c)
        m.descriptors.push_back({c, FeatureFamily::statistical, "f" + std::to_string(c)});
    m.labels.assign(rows.size(), 0);
    for (int r = 0; r < m.rows(); ++r) m.row_ids.push_back(r);
    return m;
}

}  // namespace

TEST_CASE("bandpass design hits the requested response") {
    const FirFilter f = design_bandpass(0.5, 35.0, 250.0, 501);
    CHECK(f.taps.size() == 501);
    CHECK(fir_response(f, 0.0) < 0.05);
    CHECK(fir_response(f, 17.75) > 0.9);
    CHECK(fir_response(f, 112.5) < 0.05);
    // Mid-band should be essentially flat, not just above the loose gates.
    CHECK(fir_response(f, 10.0) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(fir_response(f, 25.0) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("bandpass taps are exactly symmetric") {
    const FirFilter f = design_bandpass(0.5, 35.0, 250.0, 501);
    const int n = static_cast<int>(f.taps.size());
    for (int i = 0; i < n / 2; ++i) CHECK(f.taps[i] == f.taps[n - 1 - i]);
}

TEST_CASE("bandpass design rejects bad parameters") {
    CHECK_THROWS_AS(design_bandpass(35.0, 0.5, 250.0, 501), Error);
    CHECK_THROWS_AS(design_bandpass(8.0, 8.0, 250.0, 501), Error);
    CHECK_THROWS_AS(design_bandpass(0.5, 125.0, 250.0, 501), Error);
    CHECK_THROWS_AS(design_bandpass(0.5, 35.0, 250.0, 500), Error);
    CHECK_THROWS_AS(design_bandpass(0.5, 35.0, 250.0, 1), Error);
}

TEST_CASE("filtering zeros gives zeros of the same length") {
    const FirFilter f = design_bandpass(0.5, 35.0, 250.0, 101);
    const std::vector<double> x(600, 0.0);
    const std::vector<double> y = apply_fir(f, x);
    REQUIRE(y.size() == x.size());
    for (double v : y) CHECK(v == 0.0);
}

TEST_CASE("in-band sinusoid passes with the designed gain") {
    const FirFilter f = design_bandpass(0.5, 35.0, 250.0, 501);
    const int n = 2000;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = std::sin(2.0 * kPi * 10.0 * i / 250.0);
    const std::vector<double> y = apply_fir(f, x);
    double peak = 0.0;
    for (int i = n / 3; i < 2 * n / 3; ++i) peak = std::max(peak, std::abs(y[i]));
    const double expected = fir_response(f, 10.0);
    CHECK(peak == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("centered impulse reproduces the taps") {
    const FirFilter f = design_bandpass(0.5, 35.0, 250.0, 101);
    const int n = 401;
    std::vector<double> x(n, 0.0);
    x[200] = 1.0;
    const std::vector<double> y = apply_fir(f, x);
    const int half = 50;
    for (int k = 0; k < 101; ++k)
        CHECK(y[200 - half + k] == doctest::Approx(f.taps[100 - k]).epsilon(1e-12));
}

TEST_CASE("filtering is linear") {
    const FirFilter f = design_bandpass(0.5, 35.0, 250.0, 101);
    auto rng = make_rng(11, "fir_lin");
    const int n = 500;
    std::vector<double> a(n), b(n), mix(n);
    for (int i = 0; i < n; ++i) {
        a[i] = normal01(rng);
        b[i] = normal01(rng);
        mix[i] = 2.0 * a[i] - 3.0 * b[i];
    }
    const auto ya = apply_fir(f, a);
    const auto yb = apply_fir(f, b);
    const auto ymix = apply_fir(f, mix);
    for (int i = 0; i < n; ++i)
        CHECK(ymix[i] == doctest::Approx(2.0 * ya[i] - 3.0 * yb[i]).epsilon(1e-9));
}

TEST_CASE("signals shorter than the filter are rejected") {
    const FirFilter f = design_bandpass(0.5, 35.0, 250.0, 101);
    CHECK_THROWS_AS(apply_fir(f, std::vector<double>(101, 1.0)), Error);
    CHECK_NOTHROW(apply_fir(f, std::vector<double>(102, 1.0)));
}

TEST_CASE("epoch windows cover [-t_pre, t_post) at the sampling rate") {
    const int n_channels = 3;
    const int n_total = 1000;
    Eigen::MatrixXd continuous(n_channels, n_total);
    auto rng = make_rng(5, "segment");
    for (int c = 0; c < n_channels; ++c)
        for (int s = 0; s < n_total; ++s) continuous(c, s) = normal01(rng);

    const std::vector<Event> events = {{300, kLeftHand, 1}, {700, kFeet, 2}};
    const SegmentResult r = segment_epochs(continuous, events, 250.0, 0.2, 0.5);
    CHECK(r.n_skipped == 0);
    REQUIRE(r.epochs.n_epochs == 2);
    CHECK(r.epochs.n_samples == 175);
    CHECK(r.epochs.n_channels == n_channels);
    CHECK(r.epochs.fs == 250.0);
    CHECK(r.epochs.labels == std::vector<int>{kLeftHand, kFeet});
    CHECK(r.epochs.subjects == std::vector<int>{1, 2});

    // Samples must be bit-equal to the corresponding slice of the recording.
    for (int e = 0; e < 2; ++e) {
        const long long onset = events[e].sample;
        for (int c = 0; c < n_channels; ++c)
            for (int s = 0; s < 175; ++s)
                CHECK(r.epochs.at(e, c, s) == continuous(c, static_cast<int>(onset - 50 + s)));
    }
}

TEST_CASE("out-of-range events are skipped and counted") {
    Eigen::MatrixXd continuous(1, 300);
    for (int s = 0; s < 300; ++s) continuous(0, s) = s;

    const std::vector<Event> events = {
        {0, kLeftHand, 1},    // window starts before the recording
        {100, kRightHand, 1},  // fits
        {280, kTongue, 1},    // window runs past the end
    };
    const SegmentResult r = segment_epochs(continuous, events, 250.0, 0.2, 0.5);
    CHECK(r.n_skipped == 2);
    REQUIRE(r.epochs.n_epochs == 1);
    CHECK(r.epochs.labels == std::vector<int>{kRightHand});
    CHECK(r.epochs.at(0, 0, 0) == 50.0);
    CHECK(r.epochs.at(0, 0, 174) == 224.0);
}

TEST_CASE("segmentation rejects bad parameters") {
    Eigen::MatrixXd continuous(1, 100);
    continuous.setZero();
    CHECK_THROWS_AS(segment_epochs(continuous, {}, 0.0, 0.2, 0.5), Error);
    CHECK_THROWS_AS(segment_epochs(continuous, {}, 250.0, 0.0, 0.0), Error);
}

TEST_CASE("standardization maps a simple column to known z-scores") {
    const FeatureMatrix m = make_matrix({{1.0}, {2.0}, {3.0}});
    const Standardizer s = standardize_fit(m);
    CHECK(s.means[0] == doctest::Approx(2.0));
    CHECK(s.stds[0] == doctest::Approx(std::sqrt(2.0 / 3.0)));
    const FeatureMatrix z = standardize_apply(s, m);
    CHECK(z.values(0, 0) == doctest::Approx(-1.224744871391589).epsilon(1e-12));
    CHECK(z.values(1, 0) == doctest::Approx(0.0));
    CHECK(z.values(2, 0) == doctest::Approx(1.224744871391589).epsilon(1e-12));
}

TEST_CASE("constant columns standardize to exactly zero") {
    const FeatureMatrix m = make_matrix({{7.5, 1.0}, {7.5, 2.0}, {7.5, 3.0}});
    const Standardizer s = standardize_fit(m);
    CHECK(s.stds[0] == 1.0);
    const FeatureMatrix z = standardize_apply(s, m);
    for (int r = 0; r < 3; ++r) CHECK(z.values(r, 0) == 0.0);
}

TEST_CASE("held-out rows are scaled with training statistics") {
    const FeatureMatrix train = make_matrix({{0.0}, {10.0}});
    const FeatureMatrix test = make_matrix({{5.0}, {20.0}});
    const Standardizer s = standardize_fit(train);
    CHECK(s.means[0] == doctest::Approx(5.0));
    CHECK(s.stds[0] == doctest::Approx(5.0));
    const FeatureMatrix z = standardize_apply(s, test);
    CHECK(z.values(0, 0) == doctest::Approx(0.0));
    CHECK(z.values(1, 0) == doctest::Approx(3.0));
}

TEST_CASE("self-standardized columns have zero mean and unit spread") {
    auto rng = make_rng(3, "standardize");
    std::vector<std::vector<double>> rows(40, std::vector<double>(5));
    for (auto& r : rows)
        for (double& v : r) v = 4.0 + 2.5 * normal01(rng);
    const FeatureMatrix m = make_matrix(rows);
    const FeatureMatrix z = standardize_apply(standardize_fit(m), m);
    for (int c = 0; c < z.cols(); ++c) {
        const double mean = z.values.col(c).mean();
        const double var = z.values.col(c).squaredNorm() / z.rows() - mean * mean;
        CHECK(std::abs(mean) < 1e-9);
        CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("standardization preserves within-column ordering") {
    const FeatureMatrix m = make_matrix({{3.0}, {1.0}, {2.0}});
    const FeatureMatrix z = standardize_apply(standardize_fit(m), m);
    CHECK(z.values(1, 0) < z.values(2, 0));
    CHECK(z.values(2, 0) < z.values(0, 0));
}
