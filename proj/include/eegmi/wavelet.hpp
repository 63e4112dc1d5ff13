#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace eegmi {

struct MorletParams {
    double omega0 = 6.0;
};

// Six dyadically log-spaced scales from 1 to 128.
struct ScaleGrid {
    std::array<double, 6> scales;
};

ScaleGrid default_scale_grid();

// pi^{-1/4} * exp(i*omega0*t) * exp(-t^2/2)
std::complex<double> morlet(double t, const MorletParams& p);

// W(a, b) = (1/sqrt(a)) * sum_t x[t] * conj(Psi((t - b)/a)) / fs, accumulated
// over the support where the Gaussian envelope exceeds 1e-12; translations
// outside the signal are zero-padded. Rows follow the scale grid.
Eigen::MatrixXcd cwt(const Eigen::VectorXd& signal, const ScaleGrid& scales,
                     const MorletParams& p, double fs);

Eigen::MatrixXd cwt_magnitudes(const Eigen::VectorXd& signal, const ScaleGrid& scales,
                               const MorletParams& p, double fs);

}  // namespace eegmi
