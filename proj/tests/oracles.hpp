// Independent reference implementations used only by tests. Each one
// recomputes a quantity the library produces, via a different (usually
// brute-force) route, so agreement is meaningful evidence of correctness.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "eegmi/sffs.hpp"

namespace oracle {

// Direct averaged-periodogram evaluation with an O(L^2) DFT per segment.
inline std::vector<double> welch_psd(const std::vector<double>& x,
                                     const std::vector<double>& w, int step, double /*fs*/) {
    const int n = static_cast<int>(x.size());
    const int seg_len = static_cast<int>(w.size());
    const int n_segments = (n - seg_len) / step + 1;
    double w_energy = 0.0;
    for (double v : w) w_energy += v * v;

    std::vector<double> psd(seg_len / 2 + 1, 0.0);
    for (int k = 0; k < n_segments; ++k) {
        for (int f = 0; f <= seg_len / 2; ++f) {
            std::complex<double> acc(0.0, 0.0);
            for (int t = 0; t < seg_len; ++t) {
                const double angle = -2.0 * M_PI * f * t / seg_len;
                acc += x[k * step + t] * w[t] * std::complex<double>(std::cos(angle), std::sin(angle));
            }
            psd[f] += std::norm(acc) / (seg_len * w_energy);
        }
    }
    for (double& v : psd) v /= n_segments;
    return psd;
}

// Dense wavelet coefficient: sums the full signal against the conjugated
// kernel with no envelope cutoff.
inline std::complex<double> cwt_at(const Eigen::VectorXd& x, double scale, int b,
                                   double omega0, double fs) {
    const double pi_quarter = std::pow(M_PI, -0.25);
    std::complex<double> acc(0.0, 0.0);
    for (int t = 0; t < x.size(); ++t) {
        const double u = (t - b) / scale;
        const double env = pi_quarter * std::exp(-0.5 * u * u);
        acc += x[t] * env * std::complex<double>(std::cos(omega0 * u), -std::sin(omega0 * u));
    }
    return acc / (std::sqrt(scale) * fs);
}

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns
// (eigenvalues, eigenvectors-as-columns) sorted by descending eigenvalue.
inline std::pair<Eigen::VectorXd, Eigen::MatrixXd> jacobi_eigen(Eigen::MatrixXd a) {
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-26) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(n, n);
                rot(p, p) = c;
                rot(q, q) = c;
                rot(p, q) = s;
                rot(q, p) = -s;
                a = rot.transpose() * a * rot;
                v = v * rot;
            }
        }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });
    Eigen::VectorXd evals(n);
    Eigen::MatrixXd evecs(n, n);
    for (int i = 0; i < n; ++i) {
        evals[i] = a(order[i], order[i]);
        evecs.col(i) = v.col(order[i]);
    }
    return {evals, evecs};
}

// Straightforward two-pass versions of the seven per-channel statistics.
inline std::vector<double> time_stats(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0, sq = 0.0;
    for (double v : x) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
        sq += v * v;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double sd = std::sqrt(m2);
    const double rms = std::sqrt(sq / n);

    double adiff = 0.0;
    for (int i = 1; i < n; ++i) adiff += std::abs(x[i] - x[i - 1]);
    if (n > 1) adiff /= (n - 1);

    const double skew = m2 > 0.0 ? m3 / (m2 * sd) : 0.0;
    const double kurt = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
    return {mean, sd, m2, rms, adiff, skew, kurt};
}

// Exhaustive best criterion value over subsets with k_min <= |S| <= k_max.
inline double best_subset_value(const std::vector<int>& candidates,
                                const eegmi::Criterion& j_func, int k_min, int k_max) {
    const int d = static_cast<int>(candidates.size());
    double best = -std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) subset.push_back(candidates[i]);
        const int size = static_cast<int>(subset.size());
        if (size < k_min || size > k_max) continue;
        best = std::max(best, j_func(subset));
    }
    return best;
}

// Central finite difference of f at one coordinate.
template <typename F>
double central_diff(F f, double& coord, double h = 1e-5) {
    const double saved = coord;
    coord = saved + h;
    const double hi = f();
    coord = saved - h;
    const double lo = f();
    coord = saved;
    return (hi - lo) / (2.0 * h);
}

}  // namespace oracle
