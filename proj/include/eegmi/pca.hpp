#pragma once

#include <Eigen/Dense>

namespace eegmi {

// Principal components of the population covariance (divide by n_obs), in
// descending eigenvalue order. Sign convention: each component's
// largest-magnitude coordinate is positive.
struct PcaModel {
    Eigen::VectorXd mean;
    Eigen::MatrixXd components;  // n_components x dim, orthonormal rows
    Eigen::VectorXd explained_variances;
};

PcaModel pca_fit(const Eigen::MatrixXd& x, int n_components);

// (x - mean) * components^T
Eigen::MatrixXd pca_project(const PcaModel& m, const Eigen::MatrixXd& x);

}  // namespace eegmi
