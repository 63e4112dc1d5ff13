#include "eegmi/search.hpp"

#include <algorithm>
#include <cmath>

#include "eegmi/error.hpp"
#include "eegmi/rng.hpp"

namespace eegmi {

SplitIndices stratified_split(const std::vector<int>& labels, double test_frac,
                              std::uint64_t seed) {
    if (labels.empty()) throw Error("cannot split an empty label list");
    if (test_frac <= 0.0 || test_frac >= 1.0) throw Error("test fraction must lie in (0, 1)");

    SplitIndices out;
    for (int cls = 0; cls <= 1; ++cls) {
        std::vector<int> idx;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == cls) idx.push_back(static_cast<int>(i));
        if (idx.size() < 2)
            throw Error("stratified split needs at least 2 rows per class");

        auto rng = make_rng(seed, "split_shuffle", cls);
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[uniform_int(rng, 0, static_cast<int>(i) - 1)]);

        std::size_t n_test = static_cast<std::size_t>(
            std::llround(test_frac * static_cast<double>(idx.size())));
        n_test = std::max<std::size_t>(1, std::min(n_test, idx.size() - 1));
        out.test.insert(out.test.end(), idx.begin(), idx.begin() + n_test);
        out.train.insert(out.train.end(), idx.begin() + n_test, idx.end());
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

namespace {

MlpConfig sample_config(const SearchSpace& space, std::mt19937_64& rng) {
    MlpConfig cfg;
    const int n_layers = uniform_int(rng, space.min_layers, space.max_layers);
    for (int l = 0; l < n_layers; ++l) {
        cfg.hidden_units.push_back(uniform_int(rng, space.min_units, space.max_units));
        cfg.dropout.push_back(uniform_real(rng, space.dropout_lo, space.dropout_hi));
        cfg.activations.push_back(uniform_int(rng, 0, 1) == 0 ? Activation::relu
                                                              : Activation::leaky_relu);
    }
    cfg.optimizer = uniform_int(rng, 0, 1) == 0 ? Optimizer::adam : Optimizer::rmsprop;
    cfg.learning_rate = log_uniform(rng, space.lr_lo, space.lr_hi);
    return cfg;
}

}  // namespace

SearchResult random_search(const Eigen::MatrixXd& x, const std::vector<int>& y,
                           const SearchSpace& space, int epochs, int batch_size,
                           std::uint64_t seed) {
    if (x.rows() != static_cast<Eigen::Index>(y.size()))
        throw Error("random_search requires matching data and labels");
    if (space.n_trials < 1) throw Error("n_trials must be >= 1");

    const SplitIndices split = stratified_split(y, 0.2, derive_seed(seed, "search_split"));
    Eigen::MatrixXd x_train(split.train.size(), x.cols());
    Eigen::MatrixXd x_test(split.test.size(), x.cols());
    std::vector<int> y_train, y_test;
    for (std::size_t i = 0; i < split.train.size(); ++i) {
        x_train.row(i) = x.row(split.train[i]);
        y_train.push_back(y[split.train[i]]);
    }
    for (std::size_t i = 0; i < split.test.size(); ++i) {
        x_test.row(i) = x.row(split.test[i]);
        y_test.push_back(y[split.test[i]]);
    }

    SearchResult result;
    int best_trial = -1;
    for (int trial = 0; trial < space.n_trials; ++trial) {
        auto rng = make_rng(seed, "search_trial", trial);
        TrialResult tr;
        tr.trial = trial;
        tr.config = sample_config(space, rng);
        tr.config.epochs = epochs;
        tr.config.batch_size = batch_size;
        tr.config.seed = derive_seed(seed, "search_train", trial);

        try {
            const TrainResult trained = mlp_train(x_train, y_train, tr.config);
            const std::vector<int> preds = mlp_predict(trained.model, x_test);
            int correct = 0;
            for (std::size_t i = 0; i < y_test.size(); ++i)
                if (preds[i] == y_test[i]) ++correct;
            tr.holdout_accuracy = static_cast<double>(correct) / y_test.size();
        } catch (const Error&) {
            tr.failed = true;
            ++result.n_failed;
        }

        if (!tr.failed &&
            (best_trial < 0 || tr.holdout_accuracy > result.best_accuracy)) {
            best_trial = trial;
            result.best = tr.config;
            result.best_accuracy = tr.holdout_accuracy;
        }
        result.leaderboard.push_back(std::move(tr));
    }
    if (best_trial < 0) throw Error("every search trial failed");
    return result;
}

}  // namespace eegmi
