#include "eegmi/synthetic.hpp"

#include <cmath>
#include <string>

#include "eegmi/error.hpp"
#include "eegmi/rng.hpp"

namespace eegmi {

namespace {

void check_spec(const SyntheticSpec& spec) {
    if (spec.n_subjects < 1 || spec.epochs_per_class < 1 || spec.n_channels < 1 ||
        spec.n_samples < 1)
        throw Error("synthetic spec counts must be positive");
    if (spec.fs <= 0.0) throw Error("sampling rate must be positive");
    if (spec.planted_channels.empty()) throw Error("at least one planted channel is required");
    for (int c : spec.planted_channels)
        if (c < 0 || c >= spec.n_channels) throw Error("planted channel out of range");
    if (!(spec.band_lo > 0.0 && spec.band_lo < spec.band_hi && spec.band_hi < spec.fs / 2.0))
        throw Error("planted band must satisfy 0 < lo < hi < fs/2");
    if (spec.effect_size <= 0.0) throw Error("effect size must be positive");
    if (spec.noise_level <= 0.0) throw Error("noise level must be positive");
}

}  // namespace

EpochSet generate_synthetic(const SyntheticSpec& spec) {
    check_spec(spec);

    EpochSet out;
    out.n_epochs = spec.n_subjects * 2 * spec.epochs_per_class;
    out.n_channels = spec.n_channels;
    out.n_samples = spec.n_samples;
    out.fs = spec.fs;
    for (int c = 0; c < spec.n_channels; ++c) out.channel_names.push_back("ch" + std::to_string(c));
    out.data.resize(static_cast<std::size_t>(out.n_epochs) * spec.n_channels * spec.n_samples);

    // Leaky integrator y[n] = leak*y[n-1] + gain_in*w[n] has stationary
    // variance gain_in^2 / (1 - leak^2); dividing by its square root makes
    // the channel noise RMS equal noise_level.
    constexpr double leak = 0.95;
    constexpr double gain_in = 0.05;
    const double noise_norm = 1.0 / std::sqrt(gain_in * gain_in / (1.0 - leak * leak));

    int epoch = 0;
    for (int s = 0; s < spec.n_subjects; ++s) {
        auto subject_rng = make_rng(spec.seed, "subject_gain", s);
        const double gain = 1.0 + uniform_real(subject_rng, -0.15, 0.15);

        for (int cls = 0; cls <= 1; ++cls) {
            const double amp =
                (cls == 0 ? 1.0 : spec.effect_size) * spec.noise_level * gain;
            for (int e = 0; e < spec.epochs_per_class; ++e, ++epoch) {
                out.labels.push_back(cls);
                out.subjects.push_back(s);
                auto rng = make_rng(spec.seed, "epoch_data", epoch);

                for (int c = 0; c < spec.n_channels; ++c) {
                    double y = 0.0;
                    for (int n = 0; n < spec.n_samples; ++n) {
                        y = leak * y + gain_in * normal01(rng);
                        out.at(epoch, c, n) = y * noise_norm * spec.noise_level * gain;
                    }
                }

                const double freq = uniform_real(rng, spec.band_lo, spec.band_hi);
                for (int c : spec.planted_channels) {
                    const double phase = uniform_real(rng, 0.0, 2.0 * M_PI);
                    for (int n = 0; n < spec.n_samples; ++n)
                        out.at(epoch, c, n) +=
                            amp * std::sin(2.0 * M_PI * freq * n / spec.fs + phase);
                }

                for (int c = 0; c < spec.n_channels; ++c)
                    for (int n = 0; n < spec.n_samples; ++n)
                        out.at(epoch, c, n) =
                            static_cast<double>(static_cast<float>(out.at(epoch, c, n)));
            }
        }
    }

    out.validate();
    return out;
}

}  // namespace eegmi
