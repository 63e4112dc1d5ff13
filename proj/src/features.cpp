#include "eegmi/features.hpp"

#include <set>

#include "eegmi/stats.hpp"

namespace eegmi {

std::string family_name(FeatureFamily f) {
    switch (f) {
        case FeatureFamily::spectral: return "spectral";
        case FeatureFamily::wavelet: return "wavelet";
        case FeatureFamily::statistical: return "statistical";
    }
    throw Error("unknown feature family");
}

FeatureFamily family_from_name(const std::string& s) {
    if (s == "spectral") return FeatureFamily::spectral;
    if (s == "wavelet") return FeatureFamily::wavelet;
    if (s == "statistical") return FeatureFamily::statistical;
    throw Error("unknown feature family: " + s);
}

void FeatureMatrix::validate() const {
    if (descriptors.size() != static_cast<std::size_t>(values.cols()))
        throw Error("descriptor count does not match feature count");
    if (labels.size() != static_cast<std::size_t>(values.rows()))
        throw Error("label count does not match row count");
    if (!row_ids.empty() && row_ids.size() != static_cast<std::size_t>(values.rows()))
        throw Error("row id count does not match row count");
    if (!values.allFinite()) throw Error("feature values contain non-finite entries");

    std::set<std::tuple<int, int, std::string>> seen;
    for (const auto& d : descriptors)
        if (!seen.insert({d.channel_index, static_cast<int>(d.family), d.name}).second)
            throw Error("duplicate feature descriptor: " + d.name);
}

FeatureMatrix take_rows(const FeatureMatrix& m, const std::vector<int>& rows) {
    FeatureMatrix out;
    out.descriptors = m.descriptors;
    out.values.resize(static_cast<int>(rows.size()), m.values.cols());
    out.labels.resize(rows.size());
    out.row_ids.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int r = rows[i];
        out.values.row(static_cast<int>(i)) = m.values.row(r);
        out.labels[i] = m.labels[r];
        out.row_ids[i] = m.row_ids.empty() ? r : m.row_ids[r];
    }
    return out;
}

FeatureMatrix take_cols(const FeatureMatrix& m, const std::vector<int>& cols) {
    FeatureMatrix out;
    out.labels = m.labels;
    out.row_ids = m.row_ids;
    out.values.resize(m.values.rows(), static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        out.values.col(static_cast<int>(j)) = m.values.col(cols[j]);
        out.descriptors.push_back(m.descriptors[cols[j]]);
    }
    return out;
}

WaveletMagnitudes compute_wavelet_magnitudes(const EpochSet& epochs, const ScaleGrid& scales,
                                             const MorletParams& params) {
    WaveletMagnitudes out;
    out.n_epochs = epochs.n_epochs;
    out.n_channels = epochs.n_channels;
    out.n_scales = static_cast<int>(scales.scales.size());
    out.n_samples = epochs.n_samples;
    out.data.resize(static_cast<std::size_t>(out.n_epochs) * out.n_channels * out.n_scales *
                    out.n_samples);

    for (int e = 0; e < epochs.n_epochs; ++e) {
        for (int c = 0; c < epochs.n_channels; ++c) {
            const Eigen::MatrixXd mags =
                cwt_magnitudes(epochs.channel(e, c), scales, params, epochs.fs);
            for (int s = 0; s < out.n_scales; ++s) {
                const std::size_t offset =
                    ((static_cast<std::size_t>(e) * out.n_channels + c) * out.n_scales + s) *
                    out.n_samples;
                for (int t = 0; t < out.n_samples; ++t) out.data[offset + t] = mags(s, t);
            }
        }
    }
    return out;
}

std::vector<PcaModel> fit_wavelet_pcas(const WaveletMagnitudes& mags,
                                       const std::vector<int>& rows) {
    std::vector<PcaModel> models;
    models.reserve(static_cast<std::size_t>(mags.n_channels) * mags.n_scales);
    Eigen::MatrixXd obs(static_cast<int>(rows.size()), mags.n_samples);
    for (int c = 0; c < mags.n_channels; ++c) {
        for (int s = 0; s < mags.n_scales; ++s) {
            for (std::size_t i = 0; i < rows.size(); ++i)
                obs.row(static_cast<int>(i)) = mags.series(rows[i], c, s).transpose();
            models.push_back(pca_fit(obs, 1));
        }
    }
    return models;
}

Eigen::MatrixXd project_wavelet_features(const WaveletMagnitudes& mags,
                                         const std::vector<PcaModel>& models) {
    if (models.size() != static_cast<std::size_t>(mags.n_channels) * mags.n_scales)
        throw Error("wavelet model count does not match (channel, scale) grid");
    Eigen::MatrixXd out(mags.n_epochs, static_cast<int>(models.size()));
    for (int c = 0; c < mags.n_channels; ++c) {
        for (int s = 0; s < mags.n_scales; ++s) {
            const int col = c * mags.n_scales + s;
            const PcaModel& m = models[col];
            if (m.mean.size() != mags.n_samples)
                throw Error("wavelet model dimension does not match epoch length");
            for (int e = 0; e < mags.n_epochs; ++e)
                out(e, col) = (mags.series(e, c, s) - m.mean).dot(m.components.row(0));
        }
    }
    return out;
}

std::vector<FeatureDescriptor> wavelet_descriptors(int n_channels, int n_scales) {
    std::vector<FeatureDescriptor> out;
    for (int c = 0; c < n_channels; ++c)
        for (int s = 0; s < n_scales; ++s)
            out.push_back({c, FeatureFamily::wavelet, "cwt_pc1_scale" + std::to_string(s)});
    return out;
}

WaveletBlockResult wavelet_feature_block(const EpochSet& epochs, const ScaleGrid& scales,
                                         const MorletParams& params,
                                         const std::vector<PcaModel>* fitted) {
    const WaveletMagnitudes mags = compute_wavelet_magnitudes(epochs, scales, params);

    WaveletBlockResult out;
    if (fitted) {
        out.models = *fitted;
    } else {
        std::vector<int> all_rows(epochs.n_epochs);
        for (int e = 0; e < epochs.n_epochs; ++e) all_rows[e] = e;
        out.models = fit_wavelet_pcas(mags, all_rows);
    }
    out.features.values = project_wavelet_features(mags, out.models);
    out.features.descriptors = wavelet_descriptors(mags.n_channels, mags.n_scales);
    out.features.labels = epochs.labels;
    out.features.row_ids.resize(epochs.n_epochs);
    for (int e = 0; e < epochs.n_epochs; ++e) out.features.row_ids[e] = e;
    return out;
}

ExtractResult extract_features(const EpochSet& epochs, const ExtractConfig& cfg,
                               const std::vector<PcaModel>* fitted_wavelet) {
    const FeatureMatrix spectral = spectral_feature_block(epochs, cfg.welch, cfg.bands);
    WaveletBlockResult wavelet =
        wavelet_feature_block(epochs, cfg.scales, cfg.morlet, fitted_wavelet);
    const FeatureMatrix stats = stat_feature_block(epochs);

    ExtractResult out;
    out.wavelet_models = std::move(wavelet.models);
    FeatureMatrix& f = out.features;
    f.values.resize(epochs.n_epochs,
                    spectral.values.cols() + wavelet.features.values.cols() + stats.values.cols());
    f.values << spectral.values, wavelet.features.values, stats.values;
    f.descriptors = spectral.descriptors;
    f.descriptors.insert(f.descriptors.end(), wavelet.features.descriptors.begin(),
                         wavelet.features.descriptors.end());
    f.descriptors.insert(f.descriptors.end(), stats.descriptors.begin(), stats.descriptors.end());
    f.labels = epochs.labels;
    f.row_ids.resize(epochs.n_epochs);
    for (int e = 0; e < epochs.n_epochs; ++e) f.row_ids[e] = e;
    f.validate();
    return out;
}

}  // namespace eegmi
