#include "eegmi/mi.hpp"

#include <algorithm>
#include <cmath>

#include "eegmi/error.hpp"

namespace eegmi {

double estimate_mi(const Eigen::VectorXd& feature, const std::vector<int>& labels, int n_bins) {
    const int n = static_cast<int>(feature.size());
    if (labels.size() != static_cast<std::size_t>(n))
        throw Error("feature/label length mismatch");
    if (n_bins < 2) throw Error("n_bins must be >= 2");
    if (n < n_bins) throw Error("need at least n_bins samples");

    // Equal-frequency edges at sorted positions floor(j*n/n_bins).
    std::vector<double> sorted(feature.data(), feature.data() + n);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> edges(n_bins - 1);
    for (int j = 1; j < n_bins; ++j)
        edges[j - 1] = sorted[static_cast<std::size_t>(j) * n / n_bins];

    // joint[bin][label] counts; MI from integer counts so degenerate cases
    // (constant feature, feature equal to labels) come out exact.
    std::vector<std::array<long long, 2>> joint(n_bins, {0, 0});
    std::array<long long, 2> label_count = {0, 0};
    for (int i = 0; i < n; ++i) {
        int bin = 0;
        for (double e : edges)
            if (feature[i] >= e) ++bin;
        const int y = labels[i] ? 1 : 0;
        ++joint[bin][y];
        ++label_count[y];
    }

    double mi = 0.0;
    for (int b = 0; b < n_bins; ++b) {
        const long long bin_count = joint[b][0] + joint[b][1];
        if (bin_count == 0) continue;
        for (int y = 0; y < 2; ++y) {
            const long long c = joint[b][y];
            if (c == 0) continue;
            mi += (static_cast<double>(c) / n) *
                  std::log(static_cast<double>(c) * n /
                           (static_cast<double>(bin_count) * label_count[y]));
        }
    }
    return mi;
}

MiFilterResult mi_filter(const FeatureMatrix& f, const MiConfig& cfg) {
    if (f.rows() == 0 || f.cols() == 0) throw Error("mi_filter requires a non-empty matrix");

    MiFilterResult out;
    out.mi_values.resize(f.cols());
    for (int c = 0; c < f.cols(); ++c) {
        out.mi_values[c] = estimate_mi(f.values.col(c), f.labels, cfg.n_bins);
        if (out.mi_values[c] > cfg.threshold) out.kept.push_back(c);
    }
    if (out.kept.empty())
        throw EmptySelectionError("no feature exceeds the MI threshold " +
                                  std::to_string(cfg.threshold));
    return out;
}

}  // namespace eegmi
