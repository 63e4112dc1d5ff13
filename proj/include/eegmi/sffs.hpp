#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "eegmi/feature_matrix.hpp"
#include "eegmi/mi.hpp"

namespace eegmi {

struct SffsConfig {
    int k_max = 60;
    int patience = 10;  // consecutive inclusion rounds without a new best J
    int k_min = 2;
    std::uint64_t seed = 0;
};

enum class SelectionAction { include, exclude };

struct TrajectoryStep {
    SelectionAction action;
    int index;
    double j_value;  // J of the subset after the action
};

struct SelectionReport {
    std::vector<double> mi_values;
    std::vector<int> stage1_kept;
    std::vector<TrajectoryStep> trajectory;
    std::vector<int> final_subset;
    double j_final = 0.0;
};

using Criterion = std::function<double(const std::vector<int>&)>;

// Floating forward selection: each round adds the argmax-J candidate
// (ties to the lowest index), then conditionally excludes features while
// that strictly improves J, never removing the feature just added and never
// shrinking below k_min. Returns the best-J subset of size >= k_min ever
// visited. A visited-state guard makes termination unconditional.
SelectionReport sffs(const std::vector<int>& candidates, const Criterion& j_func,
                     const SffsConfig& cfg);

// Stage 1 MI filter plus stage 2 SFFS with the cross-validated linear SVM
// criterion; produces the complete report.
SelectionReport select_features(const FeatureMatrix& f, const MiConfig& mi_cfg,
                                const SffsConfig& sffs_cfg, int criterion_folds,
                                std::uint64_t criterion_seed);

}  // namespace eegmi
