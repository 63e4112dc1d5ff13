#include "eegmi/wavelet.hpp"

#include <cmath>
#include <vector>

#include "eegmi/error.hpp"

namespace eegmi {

namespace {
constexpr double kEnvelopeCutoff = 1e-12;
const double kPiQuarter = std::pow(M_PI, -0.25);
}  // namespace

ScaleGrid default_scale_grid() {
    ScaleGrid g;
    for (int i = 0; i < 6; ++i) g.scales[i] = std::pow(2.0, 7.0 * i / 5.0);
    return g;
}

std::complex<double> morlet(double t, const MorletParams& p) {
    const double envelope = kPiQuarter * std::exp(-t * t / 2.0);
    return std::complex<double>(std::cos(p.omega0 * t), std::sin(p.omega0 * t)) * envelope;
}

Eigen::MatrixXcd cwt(const Eigen::VectorXd& signal, const ScaleGrid& scales,
                     const MorletParams& p, double fs) {
    const int n = static_cast<int>(signal.size());
    if (n == 0) throw Error("cwt requires a non-empty signal");
    if (fs <= 0.0) throw Error("sampling rate must be positive");

    const double u_max = std::sqrt(-2.0 * std::log(kEnvelopeCutoff));
    Eigen::MatrixXcd out(static_cast<int>(scales.scales.size()), n);

    for (std::size_t si = 0; si < scales.scales.size(); ++si) {
        const double a = scales.scales[si];
        int half = static_cast<int>(std::floor(a * u_max));
        while (std::exp(-(static_cast<double>(half) / a) * (static_cast<double>(half) / a) / 2.0) <=
               kEnvelopeCutoff)
            --half;

        // conj(Psi(d/a)) for integer offsets d = t - b.
        std::vector<std::complex<double>> kernel(2 * half + 1);
        for (int d = -half; d <= half; ++d)
            kernel[d + half] = std::conj(morlet(static_cast<double>(d) / a, p));

        const double norm = 1.0 / (std::sqrt(a) * fs);
        for (int b = 0; b < n; ++b) {
            const int d_lo = std::max(-half, -b);
            const int d_hi = std::min(half, n - 1 - b);
            std::complex<double> acc(0.0, 0.0);
            for (int d = d_lo; d <= d_hi; ++d) acc += signal[b + d] * kernel[d + half];
            out(static_cast<int>(si), b) = acc * norm;
        }
    }
    return out;
}

Eigen::MatrixXd cwt_magnitudes(const Eigen::VectorXd& signal, const ScaleGrid& scales,
                               const MorletParams& p, double fs) {
    return cwt(signal, scales, p, fs).cwiseAbs();
}

}  // namespace eegmi
