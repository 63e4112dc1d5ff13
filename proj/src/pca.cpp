#include "eegmi/pca.hpp"

#include <cmath>

#include "eegmi/error.hpp"

namespace eegmi {

PcaModel pca_fit(const Eigen::MatrixXd& x, int n_components) {
    const int n_obs = static_cast<int>(x.rows());
    const int dim = static_cast<int>(x.cols());
    if (n_obs < 2) throw Error("pca_fit requires at least 2 observations");
    if (n_components < 1 || n_components > std::min(n_obs, dim))
        throw Error("n_components out of range");

    PcaModel m;
    m.mean = x.colwise().mean();
    const Eigen::MatrixXd centered = x.rowwise() - m.mean.transpose();
    const Eigen::MatrixXd cov =
        (centered.transpose() * centered) / static_cast<double>(n_obs);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");

    // Eigen returns ascending eigenvalues; take the top ones in reverse.
    m.components.resize(n_components, dim);
    m.explained_variances.resize(n_components);
    for (int k = 0; k < n_components; ++k) {
        const int src = dim - 1 - k;
        Eigen::VectorXd v = solver.eigenvectors().col(src);
        int peak = 0;
        for (int i = 1; i < dim; ++i)
            if (std::abs(v[i]) > std::abs(v[peak])) peak = i;
        if (v[peak] < 0.0) v = -v;
        m.components.row(k) = v.transpose();
        m.explained_variances[k] = solver.eigenvalues()[src];
    }
    return m;
}

Eigen::MatrixXd pca_project(const PcaModel& m, const Eigen::MatrixXd& x) {
    if (x.cols() != m.mean.size()) throw Error("pca_project dimension mismatch");
    return (x.rowwise() - m.mean.transpose()) * m.components.transpose();
}

}  // namespace eegmi
