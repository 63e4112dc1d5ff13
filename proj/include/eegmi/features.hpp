#pragma once

#include <optional>
#include <vector>

#include "eegmi/epoch_set.hpp"
#include "eegmi/feature_matrix.hpp"
#include "eegmi/pca.hpp"
#include "eegmi/wavelet.hpp"
#include "eegmi/welch.hpp"

namespace eegmi {

// |W(a, t)| per (epoch, channel, scale), kept so per-fold PCA refits reuse
// the transform instead of recomputing it.
struct WaveletMagnitudes {
    std::vector<double> data;  // epoch-major, then channel, then scale, then time
    int n_epochs = 0;
    int n_channels = 0;
    int n_scales = 0;
    int n_samples = 0;

    Eigen::Map<const Eigen::VectorXd> series(int e, int c, int s) const {
        const std::size_t offset =
            ((static_cast<std::size_t>(e) * n_channels + c) * n_scales + s) * n_samples;
        return Eigen::Map<const Eigen::VectorXd>(data.data() + offset, n_samples);
    }
};

WaveletMagnitudes compute_wavelet_magnitudes(const EpochSet& epochs, const ScaleGrid& scales,
                                             const MorletParams& params);

// One PCA per (channel, scale) over the given rows (epochs as observations,
// time points as variables), keeping the first component.
std::vector<PcaModel> fit_wavelet_pcas(const WaveletMagnitudes& mags,
                                       const std::vector<int>& rows);

// PC1 score per (channel, scale) for every epoch: 6 columns per channel.
Eigen::MatrixXd project_wavelet_features(const WaveletMagnitudes& mags,
                                         const std::vector<PcaModel>& models);

std::vector<FeatureDescriptor> wavelet_descriptors(int n_channels, int n_scales);

struct WaveletBlockResult {
    FeatureMatrix features;
    std::vector<PcaModel> models;
};

// Fit mode when no models are given; apply mode projects with the fitted
// models and requires matching dimensions.
WaveletBlockResult wavelet_feature_block(const EpochSet& epochs, const ScaleGrid& scales,
                                         const MorletParams& params,
                                         const std::vector<PcaModel>* fitted = nullptr);

struct ExtractConfig {
    WelchConfig welch = default_welch_config();
    std::vector<Band> bands = default_bands();
    MorletParams morlet;
    ScaleGrid scales = default_scale_grid();
};

struct ExtractResult {
    FeatureMatrix features;
    std::vector<PcaModel> wavelet_models;
};

// Full per-channel feature set: 6 spectral + 6 wavelet + 7 statistical
// columns per channel, grouped by family.
ExtractResult extract_features(const EpochSet& epochs, const ExtractConfig& cfg,
                               const std::vector<PcaModel>* fitted_wavelet = nullptr);

}  // namespace eegmi
