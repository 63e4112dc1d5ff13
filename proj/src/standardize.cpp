#include "eegmi/standardize.hpp"

#include <cmath>

#include "eegmi/error.hpp"

namespace eegmi {

Standardizer standardize_fit(const FeatureMatrix& train) {
    if (train.rows() == 0) throw Error("cannot fit standardizer on an empty matrix");
    const auto& x = train.values;
    const double n = static_cast<double>(x.rows());

    Standardizer s;
    s.means = x.colwise().mean();
    s.stds.resize(x.cols());
    for (int c = 0; c < x.cols(); ++c) {
        const double var = (x.col(c).array() - s.means[c]).square().sum() / n;
        const double sd = std::sqrt(var);
        s.stds[c] = (sd > 0.0) ? sd : 1.0;
    }
    return s;
}

FeatureMatrix standardize_apply(const Standardizer& s, const FeatureMatrix& m) {
    if (s.means.size() != m.values.cols())
        throw Error("standardizer dimension does not match feature count");
    FeatureMatrix out = m;
    out.values = (m.values.rowwise() - s.means.transpose()).array().rowwise() /
                 s.stds.transpose().array();
    return out;
}

}  // namespace eegmi
