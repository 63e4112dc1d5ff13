#pragma once

#include <vector>

#include <Eigen/Dense>

#include "eegmi/epoch_set.hpp"

namespace eegmi {

// Linear-phase band-pass: odd tap count, taps exactly symmetric.
struct FirFilter {
    std::vector<double> taps;
    double f_lo = 0.0;
    double f_hi = 0.0;
    double fs = 0.0;
};

// Hamming windowed-sinc band-pass with a DC-null correction (the window's
// spectral leakage otherwise leaves substantial DC gain when f_lo is a tiny
// fraction of fs, as with 0.5 Hz at 250 Hz).
FirFilter design_bandpass(double f_lo, double f_hi, double fs, int n_taps);

// Magnitude response |H(f)| of the taps, for verification.
double fir_response(const FirFilter& f, double freq_hz);

// Same-length output with group-delay compensation; edges are zero-padded.
std::vector<double> apply_fir(const FirFilter& f, const std::vector<double>& signal);

struct Event {
    long long sample = 0;
    int class_id = 0;
    int subject_id = 0;
};

struct SegmentResult {
    EpochSet epochs;
    int n_skipped = 0;
};

// Cuts [onset - round(t_pre*fs), onset + round(t_post*fs)) per event from a
// continuous [channels x samples] recording; out-of-range events are skipped
// and counted.
SegmentResult segment_epochs(const Eigen::MatrixXd& continuous, const std::vector<Event>& events,
                             double fs, double t_pre, double t_post);

}  // namespace eegmi
