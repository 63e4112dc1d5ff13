#pragma once

#include <vector>

#include <Eigen/Dense>

#include "eegmi/feature_matrix.hpp"

namespace eegmi {

struct MiConfig {
    int n_bins = 16;
    double threshold = 0.03;  // nats
};

// Plug-in mutual information in nats between a quantile-binned feature and
// binary labels. Equal-frequency bin edges are data values, so any strictly
// increasing transform of the feature leaves the result bit-identical.
double estimate_mi(const Eigen::VectorXd& feature, const std::vector<int>& labels, int n_bins);

struct MiFilterResult {
    std::vector<int> kept;  // original column order
    std::vector<double> mi_values;
};

// Keeps columns with MI strictly above the threshold; throws
// EmptySelectionError when nothing survives.
MiFilterResult mi_filter(const FeatureMatrix& f, const MiConfig& cfg);

}  // namespace eegmi
