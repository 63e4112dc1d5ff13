#include "eegmi/fir.hpp"

#include <cmath>
#include <complex>

#include "eegmi/error.hpp"

namespace eegmi {

FirFilter design_bandpass(double f_lo, double f_hi, double fs, int n_taps) {
    if (!(0.0 < f_lo && f_lo < f_hi && f_hi < fs / 2.0))
        throw Error("band edges must satisfy 0 < f_lo < f_hi < fs/2");
    if (n_taps < 3 || n_taps % 2 == 0) throw Error("n_taps must be odd and >= 3");

    const int half = (n_taps - 1) / 2;
    const double w_lo = 2.0 * M_PI * f_lo / fs;
    const double w_hi = 2.0 * M_PI * f_hi / fs;

    // Build one half and mirror so taps[i] == taps[n-1-i] holds bit-exactly.
    std::vector<double> taps(n_taps), window(n_taps);
    for (int m = 0; m <= half; ++m) {
        const double w = 0.54 + 0.46 * std::cos(M_PI * m / half);  // Hamming, even in m
        double ideal;
        if (m == 0)
            ideal = (w_hi - w_lo) / M_PI;
        else
            ideal = (std::sin(w_hi * m) - std::sin(w_lo * m)) / (M_PI * m);
        const double v = ideal * w;
        taps[half + m] = v;
        taps[half - m] = v;
        window[half + m] = w;
        window[half - m] = w;
    }

    // Null the DC gain: subtract the window scaled so that sum(taps) == 0.
    double tap_sum = 0.0, win_sum = 0.0;
    for (int i = 0; i < n_taps; ++i) {
        tap_sum += taps[i];
        win_sum += window[i];
    }
    const double correction = tap_sum / win_sum;
    for (int m = 0; m <= half; ++m) {
        const double v = taps[half + m] - window[half + m] * correction;
        taps[half + m] = v;
        taps[half - m] = v;
    }

    return {std::move(taps), f_lo, f_hi, fs};
}

double fir_response(const FirFilter& f, double freq_hz) {
    std::complex<double> h(0.0, 0.0);
    const double w = 2.0 * M_PI * freq_hz / f.fs;
    for (std::size_t m = 0; m < f.taps.size(); ++m)
        h += f.taps[m] * std::exp(std::complex<double>(0.0, -w * static_cast<double>(m)));
    return std::abs(h);
}

std::vector<double> apply_fir(const FirFilter& f, const std::vector<double>& signal) {
    const int n_taps = static_cast<int>(f.taps.size());
    const int n = static_cast<int>(signal.size());
    if (n <= n_taps) throw Error("signal must be longer than the filter");

    const int half = (n_taps - 1) / 2;
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const int k_lo = std::max(0, half - i);
        const int k_hi = std::min(n_taps - 1, n - 1 - i + half);
        for (int k = k_lo; k <= k_hi; ++k) acc += f.taps[k] * signal[i + k - half];
        out[i] = acc;
    }
    return out;
}

SegmentResult segment_epochs(const Eigen::MatrixXd& continuous, const std::vector<Event>& events,
                             double fs, double t_pre, double t_post) {
    if (fs <= 0.0) throw Error("sampling rate must be positive");
    const long long pre = std::llround(t_pre * fs);
    const long long post = std::llround(t_post * fs);
    const int n_samples = static_cast<int>(pre + post);
    if (n_samples <= 0) throw Error("epoch window is empty");

    const int n_channels = static_cast<int>(continuous.rows());
    const long long total = continuous.cols();

    SegmentResult result;
    EpochSet& out = result.epochs;
    out.n_channels = n_channels;
    out.n_samples = n_samples;
    out.fs = fs;

    for (const Event& ev : events) {
        const long long start = ev.sample - pre;
        const long long stop = ev.sample + post;
        if (start < 0 || stop > total) {
            ++result.n_skipped;
            continue;
        }
        for (int c = 0; c < n_channels; ++c)
            for (int s = 0; s < n_samples; ++s)
                out.data.push_back(continuous(c, start + s));
        out.labels.push_back(ev.class_id);
        out.subjects.push_back(ev.subject_id);
        ++out.n_epochs;
    }
    return result;
}

}  // namespace eegmi
