#include "eegmi/mlp.hpp"

#include <cmath>
#include <limits>

#include "eegmi/error.hpp"
#include "eegmi/io_util.hpp"
#include "eegmi/rng.hpp"

using nlohmann::json;

namespace eegmi {

std::string activation_name(Activation a) {
    return a == Activation::relu ? "relu" : "leaky_relu";
}

Activation activation_from_name(const std::string& s) {
    if (s == "relu") return Activation::relu;
    if (s == "leaky_relu") return Activation::leaky_relu;
    throw Error("unknown activation: " + s);
}

std::string optimizer_name(Optimizer o) { return o == Optimizer::adam ? "adam" : "rmsprop"; }

Optimizer optimizer_from_name(const std::string& s) {
    if (s == "adam") return Optimizer::adam;
    if (s == "rmsprop") return Optimizer::rmsprop;
    throw Error("unknown optimizer: " + s);
}

namespace {

void check_config(const MlpConfig& cfg) {
    const std::size_t layers = cfg.hidden_units.size();
    if (layers < 1 || layers > 2) throw Error("hidden layer count must be 1 or 2");
    if (cfg.dropout.size() != layers || cfg.activations.size() != layers)
        throw Error("dropout/activation counts must match hidden layer count");
    for (int u : cfg.hidden_units)
        if (u < 1) throw Error("hidden units must be >= 1");
    for (double d : cfg.dropout)
        if (d < 0.0 || d >= 1.0) throw Error("dropout must lie in [0, 1)");
    if (cfg.l2_lambda < 0.0) throw Error("l2_lambda must be >= 0");
    if (cfg.batch_size < 1 || cfg.epochs < 1) throw Error("invalid epochs/batch size");
}

Eigen::MatrixXd activate(const Eigen::MatrixXd& z, Activation a) {
    if (a == Activation::relu) return z.cwiseMax(0.0);
    return z.unaryExpr([](double v) { return v >= 0.0 ? v : kLeakySlope * v; });
}

Eigen::MatrixXd activate_grad(const Eigen::MatrixXd& z, Activation a) {
    if (a == Activation::relu)
        return z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
    return z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : kLeakySlope; });
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

MlpModel init_mlp(const MlpConfig& cfg, int input_dim) {
    check_config(cfg);
    if (input_dim < 1) throw Error("input dimension must be >= 1");

    MlpModel m;
    m.config = cfg;
    std::vector<int> dims = {input_dim};
    for (int u : cfg.hidden_units) dims.push_back(u);
    dims.push_back(1);

    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        auto rng = make_rng(cfg.seed, "mlp_init", l);
        const int fan_in = dims[l];
        const int fan_out = dims[l + 1];
        const double bound = std::sqrt(1.0 / fan_in);
        Eigen::MatrixXd w(fan_out, fan_in);
        for (int r = 0; r < fan_out; ++r)
            for (int c = 0; c < fan_in; ++c) w(r, c) = uniform_real(rng, -bound, bound);
        m.weights.push_back(std::move(w));
        m.biases.push_back(Eigen::VectorXd::Zero(fan_out));
    }
    return m;
}

Eigen::VectorXd mlp_forward(const MlpModel& m, const Eigen::MatrixXd& x, bool train_mode,
                            std::mt19937_64* rng, ForwardCache* cache) {
    if (x.cols() != m.weights.front().cols()) throw Error("mlp input dimension mismatch");
    if (train_mode && !rng) throw Error("train-mode forward needs an rng for dropout");

    const std::size_t n_hidden = m.config.hidden_units.size();
    Eigen::MatrixXd a = x;
    if (cache) {
        cache->inputs.clear();
        cache->pre_act.clear();
        cache->drop_masks.clear();
    }

    for (std::size_t l = 0; l < n_hidden; ++l) {
        if (cache) cache->inputs.push_back(a);
        Eigen::MatrixXd z =
            (a * m.weights[l].transpose()).rowwise() + m.biases[l].transpose();
        if (cache) cache->pre_act.push_back(z);
        a = activate(z, m.config.activations[l]);

        const double p = m.config.dropout[l];
        Eigen::MatrixXd mask = Eigen::MatrixXd::Ones(a.rows(), a.cols());
        if (train_mode && p > 0.0) {
            const double scale = 1.0 / (1.0 - p);
            for (int r = 0; r < mask.rows(); ++r)
                for (int c = 0; c < mask.cols(); ++c)
                    mask(r, c) = (uniform01(*rng) < p) ? 0.0 : scale;
            a = a.cwiseProduct(mask);
        }
        if (cache) cache->drop_masks.push_back(std::move(mask));
    }

    if (cache) cache->inputs.push_back(a);
    const Eigen::VectorXd z_out =
        (a * m.weights.back().transpose()).col(0) +
        Eigen::VectorXd::Constant(a.rows(), m.biases.back()[0]);
    Eigen::VectorXd probs = z_out.unaryExpr([](double z) { return sigmoid(z); });
    if (cache) cache->probs = probs;
    return probs;
}

double bce_loss(double y, double p) {
    if (!std::isfinite(p)) return std::numeric_limits<double>::quiet_NaN();
    const double clamped = std::min(1.0 - kBceEpsilon, std::max(kBceEpsilon, p));
    return -(y * std::log(clamped) + (1.0 - y) * std::log(1.0 - clamped));
}

double batch_loss(const MlpModel& m, const Eigen::VectorXd& y, const Eigen::VectorXd& probs) {
    double loss = 0.0;
    for (int i = 0; i < y.size(); ++i) loss += bce_loss(y[i], probs[i]);
    loss /= static_cast<double>(y.size());
    double reg = 0.0;
    for (const auto& w : m.weights) reg += w.squaredNorm();
    return loss + 0.5 * m.config.l2_lambda * reg;
}

MlpGradients mlp_backward(const MlpModel& m, const ForwardCache& cache, const Eigen::VectorXd& y) {
    const std::size_t n_hidden = m.config.hidden_units.size();
    const int batch = static_cast<int>(y.size());
    MlpGradients g;
    g.weights.resize(m.weights.size());
    g.biases.resize(m.biases.size());

    // d(mean BCE)/dz_out = (p - y)/batch; the sigmoid cancels the BCE slope.
    Eigen::MatrixXd delta = (cache.probs - y) / static_cast<double>(batch);

    g.weights.back() = delta.transpose() * cache.inputs.back() +
                       m.config.l2_lambda * m.weights.back();
    g.biases.back() = delta.colwise().sum().transpose();

    for (int l = static_cast<int>(n_hidden) - 1; l >= 0; --l) {
        Eigen::MatrixXd upstream = delta * m.weights[l + 1];
        upstream = upstream.cwiseProduct(cache.drop_masks[l]);
        delta = upstream.cwiseProduct(activate_grad(cache.pre_act[l], m.config.activations[l]));
        g.weights[l] = delta.transpose() * cache.inputs[l] + m.config.l2_lambda * m.weights[l];
        g.biases[l] = delta.colwise().sum().transpose();
    }
    return g;
}

TrainResult mlp_train(const Eigen::MatrixXd& x, const std::vector<int>& y, const MlpConfig& cfg) {
    const int n = static_cast<int>(x.rows());
    if (n == 0 || y.size() != static_cast<std::size_t>(n))
        throw Error("mlp_train requires matching data and labels");
    bool has0 = false, has1 = false;
    for (int v : y) (v ? has1 : has0) = true;
    if (!has0 || !has1) throw Error("mlp_train requires both classes");
    if (!x.allFinite()) throw Error("training data contains non-finite values");

    MlpModel model = init_mlp(cfg, static_cast<int>(x.cols()));
    std::vector<AdamState<Eigen::MatrixXd>> adam_w(model.weights.size());
    std::vector<AdamState<Eigen::VectorXd>> adam_b(model.biases.size());
    std::vector<RmspropState<Eigen::MatrixXd>> rms_w(model.weights.size());
    std::vector<RmspropState<Eigen::VectorXd>> rms_b(model.biases.size());

    auto dropout_rng = make_rng(cfg.seed, "mlp_dropout");
    Eigen::VectorXd y_vec(n);
    for (int i = 0; i < n; ++i) y_vec[i] = y[i] ? 1.0 : 0.0;

    TrainResult out;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        auto shuffle_rng = make_rng(cfg.seed, "mlp_shuffle", epoch);
        for (int i = n; i > 1; --i)
            std::swap(order[i - 1], order[uniform_int(shuffle_rng, 0, i - 1)]);

        double epoch_loss = 0.0;
        int n_batches = 0;
        for (int start = 0; start < n; start += cfg.batch_size) {
            const int size = std::min(cfg.batch_size, n - start);
            Eigen::MatrixXd xb(size, x.cols());
            Eigen::VectorXd yb(size);
            for (int i = 0; i < size; ++i) {
                xb.row(i) = x.row(order[start + i]);
                yb[i] = y_vec[order[start + i]];
            }

            ForwardCache cache;
            mlp_forward(model, xb, true, &dropout_rng, &cache);
            const double loss = batch_loss(model, yb, cache.probs);
            if (!std::isfinite(loss))
                throw Error("training diverged: non-finite loss at epoch " +
                            std::to_string(epoch));
            epoch_loss += loss;
            ++n_batches;

            const MlpGradients grads = mlp_backward(model, cache, yb);
            for (std::size_t l = 0; l < model.weights.size(); ++l) {
                if (cfg.optimizer == Optimizer::adam) {
                    adam_step(model.weights[l], grads.weights[l], adam_w[l], cfg.learning_rate);
                    adam_step(model.biases[l], grads.biases[l], adam_b[l], cfg.learning_rate);
                } else {
                    rmsprop_step(model.weights[l], grads.weights[l], rms_w[l], cfg.learning_rate);
                    rmsprop_step(model.biases[l], grads.biases[l], rms_b[l], cfg.learning_rate);
                }
            }
        }
        out.loss_curve.push_back(epoch_loss / n_batches);
    }
    out.model = std::move(model);
    return out;
}

Eigen::VectorXd mlp_predict_proba(const MlpModel& m, const Eigen::MatrixXd& x) {
    return mlp_forward(m, x, false, nullptr, nullptr);
}

std::vector<int> mlp_predict(const MlpModel& m, const Eigen::MatrixXd& x) {
    const Eigen::VectorXd probs = mlp_predict_proba(m, x);
    std::vector<int> out(probs.size());
    for (int i = 0; i < probs.size(); ++i) out[i] = probs[i] >= 0.5 ? 1 : 0;
    return out;
}

void save_mlp(const MlpModel& m, const std::filesystem::path& manifest_path) {
    json cfg;
    cfg["hidden_units"] = m.config.hidden_units;
    cfg["dropout"] = m.config.dropout;
    std::vector<std::string> acts;
    for (Activation a : m.config.activations) acts.push_back(activation_name(a));
    cfg["activations"] = acts;
    cfg["optimizer"] = optimizer_name(m.config.optimizer);
    cfg["learning_rate"] = m.config.learning_rate;
    cfg["l2_lambda"] = m.config.l2_lambda;
    cfg["epochs"] = m.config.epochs;
    cfg["batch_size"] = m.config.batch_size;
    cfg["seed"] = m.config.seed;

    json manifest;
    manifest["schema_version"] = 1;
    manifest["config"] = cfg;
    json dims = json::array();
    std::vector<float> blob;
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        dims.push_back({static_cast<int>(m.weights[l].rows()),
                        static_cast<int>(m.weights[l].cols())});
        for (int r = 0; r < m.weights[l].rows(); ++r)
            for (int c = 0; c < m.weights[l].cols(); ++c)
                blob.push_back(static_cast<float>(m.weights[l](r, c)));
        for (int r = 0; r < m.biases[l].size(); ++r)
            blob.push_back(static_cast<float>(m.biases[l][r]));
    }
    manifest["layer_dims"] = dims;
    const std::string blob_name = manifest_path.stem().string() + ".bin";
    manifest["weights_file"] = blob_name;
    manifest["dtype"] = "f32le";

    save_json_file(manifest_path, manifest);
    write_file_atomic(manifest_path.parent_path() / blob_name, blob.data(),
                      blob.size() * sizeof(float));
}

MlpModel load_mlp(const std::filesystem::path& manifest_path) {
    const json manifest = load_json_file(manifest_path);
    check_schema_version(manifest, manifest_path);

    MlpConfig cfg;
    const json& c = manifest.at("config");
    cfg.hidden_units = c.at("hidden_units").get<std::vector<int>>();
    cfg.dropout = c.at("dropout").get<std::vector<double>>();
    for (const auto& name : c.at("activations"))
        cfg.activations.push_back(activation_from_name(name.get<std::string>()));
    cfg.optimizer = optimizer_from_name(c.at("optimizer").get<std::string>());
    cfg.learning_rate = c.at("learning_rate").get<double>();
    cfg.l2_lambda = c.at("l2_lambda").get<double>();
    cfg.epochs = c.at("epochs").get<int>();
    cfg.batch_size = c.at("batch_size").get<int>();
    cfg.seed = c.at("seed").get<std::uint64_t>();

    const auto blob = read_binary_file(manifest_path.parent_path() /
                                       manifest.at("weights_file").get<std::string>());
    const auto* values = reinterpret_cast<const float*>(blob.data());
    std::size_t offset = 0;
    const std::size_t n_floats = blob.size() / sizeof(float);

    MlpModel m;
    m.config = cfg;
    for (const auto& dim : manifest.at("layer_dims")) {
        const int rows = dim[0].get<int>();
        const int cols = dim[1].get<int>();
        if (offset + static_cast<std::size_t>(rows) * cols + rows > n_floats)
            throw Error("model weight blob is shorter than its manifest declares");
        Eigen::MatrixXd w(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int cc = 0; cc < cols; ++cc) w(r, cc) = values[offset++];
        Eigen::VectorXd b(rows);
        for (int r = 0; r < rows; ++r) b[r] = values[offset++];
        m.weights.push_back(std::move(w));
        m.biases.push_back(std::move(b));
    }
    if (offset != n_floats) throw Error("model weight blob has trailing bytes");
    return m;
}

MlpConfig table2_config(TaskId task) {
    MlpConfig cfg;
    switch (task) {
        case TaskId::I:
            cfg.hidden_units = {28, 27};
            cfg.dropout = {0.1, 0.5};
            cfg.activations = {Activation::leaky_relu, Activation::leaky_relu};
            cfg.optimizer = Optimizer::adam;
            break;
        case TaskId::II:
            cfg.hidden_units = {25};
            cfg.dropout = {0.2};
            cfg.activations = {Activation::relu};
            cfg.optimizer = Optimizer::rmsprop;
            break;
        case TaskId::III:
            cfg.hidden_units = {26, 10};
            cfg.dropout = {0.6, 0.9};
            cfg.activations = {Activation::leaky_relu, Activation::leaky_relu};
            cfg.optimizer = Optimizer::adam;
            break;
        case TaskId::IV:
            cfg.hidden_units = {26, 26};
            cfg.dropout = {0.2, 0.9};
            cfg.activations = {Activation::relu, Activation::leaky_relu};
            cfg.optimizer = Optimizer::adam;
            break;
        case TaskId::V:
            cfg.hidden_units = {23};
            cfg.dropout = {0.4};
            cfg.activations = {Activation::relu};
            cfg.optimizer = Optimizer::rmsprop;
            break;
        case TaskId::VI:
            cfg.hidden_units = {26, 8};
            cfg.dropout = {0.1, 0.6};
            cfg.activations = {Activation::relu, Activation::relu};
            cfg.optimizer = Optimizer::adam;
            break;
    }
    return cfg;
}

}  // namespace eegmi
