#include "eegmi/svm.hpp"

#include <cmath>

#include "eegmi/error.hpp"
#include "eegmi/rng.hpp"

namespace eegmi {

namespace {

double objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                 double b, double lambda) {
    const Eigen::ArrayXd margins = y.array() * ((x * w).array() + b);
    const double hinge = (1.0 - margins).max(0.0).mean();
    return 0.5 * lambda * w.squaredNorm() + hinge;
}

}  // namespace

SvmModel svm_train(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const SvmConfig& cfg) {
    const int n = static_cast<int>(x.rows());
    const int dim = static_cast<int>(x.cols());
    if (n == 0) throw Error("svm_train requires data");
    if (static_cast<int>(y.size()) != n) throw Error("label count mismatch");
    bool has_pos = false, has_neg = false;
    for (int i = 0; i < n; ++i) {
        if (y[i] == 1.0) has_pos = true;
        else if (y[i] == -1.0) has_neg = true;
        else throw Error("labels must be +1/-1");
    }
    if (!has_pos || !has_neg) throw Error("svm_train requires both classes");
    if (cfg.c <= 0.0) throw Error("C must be positive");

    const double lambda = 1.0 / cfg.c;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
    double b = 0.0;
    Eigen::VectorXd avg_w = Eigen::VectorXd::Zero(dim);
    double avg_b = 0.0;

    SvmModel best;
    best.w = avg_w;
    best.b = avg_b;
    best.config = cfg;
    double best_obj = std::numeric_limits<double>::infinity();

    for (int t = 1; t <= cfg.epochs; ++t) {
        const Eigen::ArrayXd margins = y.array() * ((x * w).array() + b);
        // Subgradient of mean hinge: average -y_i x_i over violating rows.
        Eigen::VectorXd active = ((margins < 1.0).cast<double>() * y.array()).matrix();
        const Eigen::VectorXd grad_w = lambda * w - (x.transpose() * active) / n;
        const double grad_b = -active.sum() / n;

        const double step = 1.0 / (lambda * t);
        w -= step * grad_w;
        b -= step * grad_b;

        avg_w = (avg_w * (t - 1) + w) / t;
        avg_b = (avg_b * (t - 1) + b) / t;

        const double obj = objective(x, y, avg_w, avg_b, lambda);
        if (obj < best_obj) {
            best_obj = obj;
            best.w = avg_w;
            best.b = avg_b;
        }
    }
    return best;
}

double svm_objective(const SvmModel& m, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    return objective(x, y, m.w, m.b, 1.0 / m.config.c);
}

Eigen::VectorXd svm_predict(const SvmModel& m, const Eigen::MatrixXd& x) {
    if (x.cols() != m.w.size()) throw Error("svm_predict dimension mismatch");
    const Eigen::ArrayXd scores = (x * m.w).array() + m.b;
    Eigen::VectorXd out(x.rows());
    for (int i = 0; i < x.rows(); ++i) out[i] = (scores[i] >= 0.0) ? 1.0 : -1.0;
    return out;
}

double criterion_svm_cv(const FeatureMatrix& f, const std::vector<int>& subset, int folds,
                        std::uint64_t seed, const SvmConfig& svm_cfg) {
    if (subset.empty()) throw Error("criterion requires a non-empty subset");
    if (folds < 2) throw Error("need at least 2 folds");
    for (int col : subset)
        if (col < 0 || col >= f.cols()) throw Error("subset column out of range");

    const int n = f.rows();
    std::vector<int> class_idx[2];
    for (int i = 0; i < n; ++i) class_idx[f.labels[i] ? 1 : 0].push_back(i);
    for (const auto& idx : class_idx)
        if (static_cast<int>(idx.size()) < folds)
            throw Error("a class has fewer members than folds");

    // Deterministic stratified folds: shuffle within class, deal round-robin.
    std::vector<int> fold_of(n);
    for (int cls = 0; cls < 2; ++cls) {
        std::vector<int> idx = class_idx[cls];
        auto rng = make_rng(seed, "svm_cv_shuffle", cls);
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[uniform_int(rng, 0, static_cast<std::int64_t>(i) - 1)]);
        for (std::size_t i = 0; i < idx.size(); ++i)
            fold_of[idx[i]] = static_cast<int>(i % folds);
    }

    Eigen::MatrixXd cols(n, static_cast<int>(subset.size()));
    for (std::size_t j = 0; j < subset.size(); ++j) cols.col(static_cast<int>(j)) = f.values.col(subset[j]);

    double acc_sum = 0.0;
    for (int fold = 0; fold < folds; ++fold) {
        std::vector<int> train, test;
        for (int i = 0; i < n; ++i) (fold_of[i] == fold ? test : train).push_back(i);

        Eigen::MatrixXd x_train(static_cast<int>(train.size()), cols.cols());
        Eigen::VectorXd y_train(static_cast<int>(train.size()));
        for (std::size_t i = 0; i < train.size(); ++i) {
            x_train.row(static_cast<int>(i)) = cols.row(train[i]);
            y_train[static_cast<int>(i)] = f.labels[train[i]] ? 1.0 : -1.0;
        }
        const SvmModel model = svm_train(x_train, y_train, svm_cfg);

        int correct = 0;
        for (int i : test) {
            const double score = cols.row(i).dot(model.w) + model.b;
            const int pred = (score >= 0.0) ? 1 : 0;
            if (pred == (f.labels[i] ? 1 : 0)) ++correct;
        }
        acc_sum += static_cast<double>(correct) / static_cast<double>(test.size());
    }
    return acc_sum / folds;
}

}  // namespace eegmi
