#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eegmi/error.hpp"

namespace eegmi {

enum class FeatureFamily { spectral, wavelet, statistical };

std::string family_name(FeatureFamily f);
FeatureFamily family_from_name(const std::string& s);

struct FeatureDescriptor {
    int channel_index = 0;
    FeatureFamily family = FeatureFamily::spectral;
    std::string name;

    bool operator==(const FeatureDescriptor&) const = default;
};

// Tabular features: one row per epoch, one column per descriptor. row_ids
// track each row's source epoch index so evaluation harnesses can verify
// which rows reached a fitting step.
struct FeatureMatrix {
    Eigen::MatrixXd values;
    std::vector<FeatureDescriptor> descriptors;
    std::vector<int> labels;
    std::vector<int> row_ids;

    int rows() const { return static_cast<int>(values.rows()); }
    int cols() const { return static_cast<int>(values.cols()); }

    void validate() const;
};

FeatureMatrix take_rows(const FeatureMatrix& m, const std::vector<int>& rows);
FeatureMatrix take_cols(const FeatureMatrix& m, const std::vector<int>& cols);

}  // namespace eegmi
