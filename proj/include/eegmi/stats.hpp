#pragma once

#include <array>

#include "eegmi/epoch_set.hpp"
#include "eegmi/feature_matrix.hpp"

namespace eegmi {

inline constexpr int kStatCount = 7;

// [mean, population std, population variance, RMS, mean |first difference|,
//  skewness, kurtosis (non-excess)]. Zero-variance input yields skewness and
// kurtosis of 0.
std::array<double, kStatCount> stat_features(const double* x, int n);

const std::array<const char*, kStatCount>& stat_feature_names();

// 7 columns per channel.
FeatureMatrix stat_feature_block(const EpochSet& epochs);

}  // namespace eegmi
