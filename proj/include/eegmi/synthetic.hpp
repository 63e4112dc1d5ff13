#pragma once

#include <cstdint>
#include <vector>

#include "eegmi/epoch_set.hpp"

namespace eegmi {

// Parameters for the planted-band benchmark generator. Both classes carry a
// sinusoid in the planted band on the planted channels; class 0 at amplitude
// noise_level and class 1 at effect_size * noise_level, so effect_size is the
// class-1 : class-0 amplitude ratio and effect_size = 1 removes every
// class difference (a chance-level control).
struct SyntheticSpec {
    int n_subjects = 4;
    int epochs_per_class = 60;
    int n_channels = 8;
    double fs = 250.0;
    std::vector<int> planted_channels = {2, 5};
    double band_lo = 8.0;
    double band_hi = 13.0;
    double effect_size = 2.0;
    double noise_level = 1.0;
    int n_samples = 175;
    std::uint64_t seed = 7;
};

// Fully seeded two-class generator: pink-ish channel noise everywhere plus
// the planted-band tone described above, with a per-subject gain jitter so
// leave-one-subject-out folds see distribution shift. Samples are snapped to
// float32 so the in-memory set round-trips bit-exactly through a bundle.
EpochSet generate_synthetic(const SyntheticSpec& spec);

}  // namespace eegmi
