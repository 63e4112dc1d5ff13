#include "eegmi/stats.hpp"

#include <cmath>

#include "eegmi/error.hpp"

namespace eegmi {

std::array<double, kStatCount> stat_features(const double* x, int n) {
    if (n < 1) throw Error("stat_features requires a non-empty vector");

    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += x[i];
        sum_sq += x[i] * x[i];
    }
    const double mean = sum / n;
    const double rms = std::sqrt(sum_sq / n);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = x[i] - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double sd = std::sqrt(m2);

    double abs_diff = 0.0;
    if (n > 1) {
        for (int i = 1; i < n; ++i) abs_diff += std::abs(x[i] - x[i - 1]);
        abs_diff /= (n - 1);
    }

    double skew = 0.0, kurt = 0.0;
    if (sd > 0.0) {
        skew = m3 / (m2 * sd);
        kurt = m4 / (m2 * m2);
    }
    return {mean, sd, m2, rms, abs_diff, skew, kurt};
}

const std::array<const char*, kStatCount>& stat_feature_names() {
    static const std::array<const char*, kStatCount> names = {
        "mean", "std", "variance", "rms", "abs_diff_mean", "skewness", "kurtosis"};
    return names;
}

FeatureMatrix stat_feature_block(const EpochSet& epochs) {
    FeatureMatrix out;
    out.values.resize(epochs.n_epochs, epochs.n_channels * kStatCount);
    for (int c = 0; c < epochs.n_channels; ++c)
        for (const char* name : stat_feature_names())
            out.descriptors.push_back({c, FeatureFamily::statistical, name});
    out.labels = epochs.labels;
    out.row_ids.resize(epochs.n_epochs);
    for (int e = 0; e < epochs.n_epochs; ++e) out.row_ids[e] = e;

    for (int e = 0; e < epochs.n_epochs; ++e) {
        for (int c = 0; c < epochs.n_channels; ++c) {
            const auto stats = stat_features(epochs.channel(e, c).data(), epochs.n_samples);
            for (int k = 0; k < kStatCount; ++k)
                out.values(e, c * kStatCount + k) = stats[k];
        }
    }
    return out;
}

}  // namespace eegmi
