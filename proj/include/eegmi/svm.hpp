#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "eegmi/feature_matrix.hpp"

namespace eegmi {

struct SvmConfig {
    double c = 1.0;
    int epochs = 200;
    std::uint64_t seed = 0;
};

struct SvmModel {
    Eigen::VectorXd w;
    double b = 0.0;
    SvmConfig config;
};

// Full-batch subgradient descent on (lambda/2)*|w|^2 + mean hinge with
// lambda = 1/C. The returned model is the best-objective running average of
// the iterates, so epoch-boundary checkpoints are non-increasing and the
// result is invariant to uniform row duplication.
SvmModel svm_train(const Eigen::MatrixXd& x, const Eigen::VectorXd& y_pm1, const SvmConfig& cfg);

double svm_objective(const SvmModel& m, const Eigen::MatrixXd& x, const Eigen::VectorXd& y_pm1);

// sign(w.x + b) with sign(0) := +1.
Eigen::VectorXd svm_predict(const SvmModel& m, const Eigen::MatrixXd& x);

// Mean accuracy of the linear SVM over seeded stratified k-fold CV, trained
// on the given feature columns. Labels are the matrix's binary labels.
double criterion_svm_cv(const FeatureMatrix& f, const std::vector<int>& subset, int folds,
                        std::uint64_t seed, const SvmConfig& svm_cfg = {});

}  // namespace eegmi
