#include "eegmi/welch.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <fftw3.h>

#include "eegmi/error.hpp"

namespace eegmi {

std::vector<double> hann_window(int len) {
    std::vector<double> w(len);
    for (int n = 0; n < len; ++n)
        w[n] = 0.5 * (1.0 - std::cos(2.0 * M_PI * n / (len - 1)));
    return w;
}

std::vector<double> rect_window(int len) { return std::vector<double>(len, 1.0); }

WelchConfig default_welch_config() { return {64, 32, hann_window(64)}; }

namespace {

// FFTW plans are cached per segment length; planning is not thread-safe.
struct PlanCache {
    std::mutex mutex;
    std::map<int, fftw_plan> plans;
    std::map<int, double*> in_bufs;
    std::map<int, fftw_complex*> out_bufs;

    // Executes the r2c transform for the given segment; callers hold the lock
    // for the whole call so the shared buffers are safe on any thread.
    void transform(const std::vector<double>& segment, std::vector<std::complex<double>>& out) {
        const int len = static_cast<int>(segment.size());
        std::lock_guard<std::mutex> guard(mutex);
        auto it = plans.find(len);
        if (it == plans.end()) {
            double* in = fftw_alloc_real(len);
            fftw_complex* spec = fftw_alloc_complex(len / 2 + 1);
            fftw_plan p = fftw_plan_dft_r2c_1d(len, in, spec, FFTW_ESTIMATE);
            if (!p) throw Error("fftw plan creation failed");
            plans[len] = p;
            in_bufs[len] = in;
            out_bufs[len] = spec;
            it = plans.find(len);
        }
        double* in = in_bufs[len];
        fftw_complex* spec = out_bufs[len];
        std::copy(segment.begin(), segment.end(), in);
        fftw_execute(it->second);
        out.resize(len / 2 + 1);
        for (int i = 0; i <= len / 2; ++i) out[i] = {spec[i][0], spec[i][1]};
    }
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

}  // namespace

PsdResult welch_psd(const double* signal, int n, const WelchConfig& cfg, double fs) {
    const int len = cfg.segment_len;
    const int step = cfg.step;
    if (len <= 0 || step <= 0 || step > len) throw Error("invalid welch segmentation");
    if (fs <= 0.0) throw Error("sampling rate must be positive");
    if (static_cast<int>(cfg.window.size()) != len)
        throw Error("window length does not match segment length");
    if (n < len) throw Error("signal shorter than one segment");

    double win_sq = 0.0;
    for (double w : cfg.window) win_sq += w * w;
    if (win_sq <= 0.0) throw Error("window has zero energy");

    const int n_segments = (n - len) / step + 1;
    const int n_bins = len / 2 + 1;
    const double norm = 1.0 / (static_cast<double>(len) * win_sq);

    std::vector<double> acc(n_bins, 0.0);
    std::vector<double> segment(len);
    std::vector<std::complex<double>> spectrum;
    for (int k = 0; k < n_segments; ++k) {
        for (int i = 0; i < len; ++i) segment[i] = signal[k * step + i] * cfg.window[i];
        plan_cache().transform(segment, spectrum);
        for (int f = 0; f < n_bins; ++f) acc[f] += std::norm(spectrum[f]) * norm;
    }

    PsdResult out;
    out.freqs.resize(n_bins);
    out.psd.resize(n_bins);
    for (int f = 0; f < n_bins; ++f) {
        out.freqs[f] = fs * f / len;
        out.psd[f] = acc[f] / n_segments;
    }
    return out;
}

PsdResult welch_psd(const std::vector<double>& signal, const WelchConfig& cfg, double fs) {
    return welch_psd(signal.data(), static_cast<int>(signal.size()), cfg, fs);
}

const std::vector<Band>& default_bands() {
    static const std::vector<Band> bands = {
        {"delta", 0.5, 4.0},   {"theta", 4.0, 8.0},     {"alpha", 8.0, 13.0},
        {"low_beta", 13.0, 20.0}, {"mid_beta", 20.0, 26.0}, {"high_beta", 26.0, 35.0},
    };
    return bands;
}

BandPowerResult band_powers(const std::vector<double>& freqs, const std::vector<double>& psd,
                            const std::vector<Band>& bands) {
    if (freqs.size() != psd.size()) throw Error("freqs/psd length mismatch");
    for (std::size_t i = 1; i < freqs.size(); ++i)
        if (freqs[i] <= freqs[i - 1]) throw Error("frequencies must be ascending");

    // The coarse-resolution guard: delta also claims the bin nearest 0.5 Hz.
    int delta_guard = -1;
    if (!freqs.empty()) {
        delta_guard = 0;
        for (std::size_t i = 1; i < freqs.size(); ++i)
            if (std::abs(freqs[i] - 0.5) < std::abs(freqs[delta_guard] - 0.5))
                delta_guard = static_cast<int>(i);
    }

    BandPowerResult out;
    for (const Band& band : bands) {
        double power = 0.0;
        bool any = false;
        for (std::size_t i = 0; i < freqs.size(); ++i) {
            bool in_band = freqs[i] >= band.f_lo && freqs[i] < band.f_hi;
            if (band.name == "delta" && static_cast<int>(i) == delta_guard) in_band = true;
            if (in_band) {
                power += psd[i];
                any = true;
            }
        }
        out.powers.push_back(power);
        out.out_of_range.push_back(!any);
    }
    return out;
}

FeatureMatrix spectral_feature_block(const EpochSet& epochs, const WelchConfig& cfg,
                                     const std::vector<Band>& bands) {
    const int n_bands = static_cast<int>(bands.size());
    FeatureMatrix out;
    out.values.resize(epochs.n_epochs, epochs.n_channels * n_bands);
    for (int c = 0; c < epochs.n_channels; ++c)
        for (const Band& band : bands)
            out.descriptors.push_back({c, FeatureFamily::spectral, band.name + "_power"});
    out.labels = epochs.labels;
    out.row_ids.resize(epochs.n_epochs);
    for (int e = 0; e < epochs.n_epochs; ++e) out.row_ids[e] = e;

    for (int e = 0; e < epochs.n_epochs; ++e) {
        for (int c = 0; c < epochs.n_channels; ++c) {
            const auto x = epochs.channel(e, c);
            const PsdResult psd = welch_psd(x.data(), epochs.n_samples, cfg, epochs.fs);
            const BandPowerResult bp = band_powers(psd.freqs, psd.psd, bands);
            for (int b = 0; b < n_bands; ++b) out.values(e, c * n_bands + b) = bp.powers[b];
        }
    }
    return out;
}

}  // namespace eegmi
