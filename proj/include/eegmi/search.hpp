#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "eegmi/mlp.hpp"

namespace eegmi {

// Hyperparameter ranges sampled by random_search.
struct SearchSpace {
    int min_layers = 1;
    int max_layers = 2;
    int min_units = 20;
    int max_units = 30;
    double dropout_lo = 0.1;
    double dropout_hi = 0.9;
    double lr_lo = 1e-4;
    double lr_hi = 1e-2;
    int n_trials = 100;
};

struct TrialResult {
    int trial = 0;
    MlpConfig config;
    double holdout_accuracy = 0.0;  // fraction in [0,1]; meaningless when failed
    bool failed = false;
};

struct SearchResult {
    MlpConfig best;
    double best_accuracy = 0.0;
    std::vector<TrialResult> leaderboard;  // one entry per trial, in trial order
    int n_failed = 0;
};

struct SplitIndices {
    std::vector<int> train;
    std::vector<int> test;
};

// Shuffles each class separately and reserves test_frac of it for the test
// side, so both sides keep the label balance. Needs >= 2 rows per class.
SplitIndices stratified_split(const std::vector<int>& labels, double test_frac,
                              std::uint64_t seed);

// Samples n_trials configs, trains each on a shared 80/20 stratified split,
// and ranks by holdout accuracy (ties keep the earlier trial). Trials whose
// training throws are marked failed and skipped.
SearchResult random_search(const Eigen::MatrixXd& x, const std::vector<int>& y,
                           const SearchSpace& space, int epochs, int batch_size,
                           std::uint64_t seed);

}  // namespace eegmi
