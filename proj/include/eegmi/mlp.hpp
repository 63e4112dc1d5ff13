#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eegmi/epoch_set.hpp"

namespace eegmi {

enum class Activation { relu, leaky_relu };
enum class Optimizer { adam, rmsprop };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& s);
std::string optimizer_name(Optimizer o);
Optimizer optimizer_from_name(const std::string& s);

inline constexpr double kLeakySlope = 0.01;
inline constexpr double kBceEpsilon = 1e-7;

struct MlpConfig {
    std::vector<int> hidden_units;         // 1 or 2 hidden layers
    std::vector<double> dropout;           // per hidden layer, in [0, 1)
    std::vector<Activation> activations;   // per hidden layer
    Optimizer optimizer = Optimizer::adam;
    double learning_rate = 1e-3;
    double l2_lambda = 0.01;
    int epochs = 200;
    int batch_size = 32;
    std::uint64_t seed = 0;
};

// Hidden layers feed a single sigmoid output unit.
struct MlpModel {
    std::vector<Eigen::MatrixXd> weights;  // per layer, rows = output units
    std::vector<Eigen::VectorXd> biases;
    MlpConfig config;
};

MlpModel init_mlp(const MlpConfig& cfg, int input_dim);

struct ForwardCache {
    std::vector<Eigen::MatrixXd> inputs;      // activation entering each layer
    std::vector<Eigen::MatrixXd> pre_act;     // z per hidden layer
    std::vector<Eigen::MatrixXd> drop_masks;  // inverted-dropout scale factors
    Eigen::VectorXd probs;
};

// Train mode applies inverted dropout using the provided stream; eval mode
// is deterministic and ignores the dropout rates.
Eigen::VectorXd mlp_forward(const MlpModel& m, const Eigen::MatrixXd& x, bool train_mode,
                            std::mt19937_64* rng, ForwardCache* cache = nullptr);

// -[y*log(p) + (1-y)*log(1-p)] with p clamped to [eps, 1-eps].
double bce_loss(double y, double p);

// Mean BCE over the batch plus (lambda/2)*sum|W|^2 (weights only).
double batch_loss(const MlpModel& m, const Eigen::VectorXd& y, const Eigen::VectorXd& probs);

struct MlpGradients {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
};

// Exact gradients of batch_loss for the cached forward pass.
MlpGradients mlp_backward(const MlpModel& m, const ForwardCache& cache, const Eigen::VectorXd& y);

template <typename T>
struct AdamState {
    T m, v;
    int t = 0;
};

template <typename T>
void adam_step(T& param, const T& grad, AdamState<T>& state, double lr) {
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    if (state.t == 0) {
        state.m = T::Zero(grad.rows(), grad.cols());
        state.v = T::Zero(grad.rows(), grad.cols());
    }
    ++state.t;
    state.m = beta1 * state.m + (1.0 - beta1) * grad;
    state.v = (beta2 * state.v.array() + (1.0 - beta2) * grad.array().square()).matrix();
    const double bc1 = 1.0 - std::pow(beta1, state.t);
    const double bc2 = 1.0 - std::pow(beta2, state.t);
    param.array() -=
        lr * (state.m.array() / bc1) / ((state.v.array() / bc2).sqrt() + eps);
}

template <typename T>
struct RmspropState {
    T v;
    bool init = false;
};

template <typename T>
void rmsprop_step(T& param, const T& grad, RmspropState<T>& state, double lr) {
    constexpr double rho = 0.9, eps = 1e-8;
    if (!state.init) {
        state.v = T::Zero(grad.rows(), grad.cols());
        state.init = true;
    }
    state.v = (rho * state.v.array() + (1.0 - rho) * grad.array().square()).matrix();
    param.array() -= lr * grad.array() / (state.v.array().sqrt() + eps);
}

struct TrainResult {
    MlpModel model;
    std::vector<double> loss_curve;  // mean batch loss per epoch
};

// Mini-batch training with seeded shuffling; throws on non-finite loss.
TrainResult mlp_train(const Eigen::MatrixXd& x, const std::vector<int>& y, const MlpConfig& cfg);

Eigen::VectorXd mlp_predict_proba(const MlpModel& m, const Eigen::MatrixXd& x);
std::vector<int> mlp_predict(const MlpModel& m, const Eigen::MatrixXd& x);

void save_mlp(const MlpModel& m, const std::filesystem::path& manifest_path);
MlpModel load_mlp(const std::filesystem::path& manifest_path);

// The per-task tuned architectures reachable without running the search.
MlpConfig table2_config(TaskId task);

}  // namespace eegmi
