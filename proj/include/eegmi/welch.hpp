#pragma once

#include <array>
#include <string>
#include <vector>

#include "eegmi/epoch_set.hpp"
#include "eegmi/feature_matrix.hpp"

namespace eegmi {

// Averaged-periodogram estimate: segments of length L every D samples,
// windowed, each periodogram normalized by 1/(L*sum(w^2)). One-sided bins
// 0..L/2 at fs/L spacing, no doubling.
struct WelchConfig {
    int segment_len = 64;
    int step = 32;
    std::vector<double> window;  // length segment_len
};

std::vector<double> hann_window(int len);
std::vector<double> rect_window(int len);
WelchConfig default_welch_config();

struct PsdResult {
    std::vector<double> freqs;
    std::vector<double> psd;
};

PsdResult welch_psd(const double* signal, int n, const WelchConfig& cfg, double fs);
PsdResult welch_psd(const std::vector<double>& signal, const WelchConfig& cfg, double fs);

struct Band {
    std::string name;
    double f_lo = 0.0;
    double f_hi = 0.0;
};

// delta 0.5-4, theta 4-8, alpha 8-13, low beta 13-20, mid beta 20-26,
// high beta 26-35 Hz.
const std::vector<Band>& default_bands();

struct BandPowerResult {
    std::vector<double> powers;
    std::vector<bool> out_of_range;  // band had no resolvable bins
};

// Sums psd bins with f_lo <= f < f_hi per band; the delta band additionally
// claims the bin nearest 0.5 Hz so it is never empty at coarse resolutions.
BandPowerResult band_powers(const std::vector<double>& freqs, const std::vector<double>& psd,
                            const std::vector<Band>& bands);

// One column per (channel, band): 6 * n_channels features.
FeatureMatrix spectral_feature_block(const EpochSet& epochs, const WelchConfig& cfg,
                                     const std::vector<Band>& bands);

}  // namespace eegmi
