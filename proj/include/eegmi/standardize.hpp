#pragma once

#include <Eigen/Dense>

#include "eegmi/feature_matrix.hpp"

namespace eegmi {

// Per-column centering/scaling with population standard deviation.
// Zero-variance columns store std 1 so they map to exactly 0.
struct Standardizer {
    Eigen::VectorXd means;
    Eigen::VectorXd stds;
};

Standardizer standardize_fit(const FeatureMatrix& train);
FeatureMatrix standardize_apply(const Standardizer& s, const FeatureMatrix& m);

}  // namespace eegmi
