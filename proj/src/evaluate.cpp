#include "eegmi/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "eegmi/error.hpp"
#include "eegmi/rng.hpp"
#include "eegmi/standardize.hpp"
#include "eegmi/stats.hpp"

namespace eegmi {

std::atomic<long> LeakageGuard::violations_{0};

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::all_features: return "all_features";
        case Variant::mi_only: return "mi_only";
        case Variant::hybrid: return "hybrid";
    }
    throw Error("invalid variant value");
}

Variant variant_from_name(const std::string& s) {
    if (s == "all" || s == "all_features") return Variant::all_features;
    if (s == "mi" || s == "mi_only") return Variant::mi_only;
    if (s == "hybrid") return Variant::hybrid;
    throw Error("unknown variant: " + s);
}

std::string protocol_name(Protocol p) { return p == Protocol::loso ? "loso" : "holdout"; }

Protocol protocol_from_name(const std::string& s) {
    if (s == "loso") return Protocol::loso;
    if (s == "holdout") return Protocol::holdout;
    throw Error("unknown protocol: " + s);
}

std::vector<Fold> loso_folds(const EpochSet& epochs) {
    const std::set<int> subjects(epochs.subjects.begin(), epochs.subjects.end());
    if (subjects.size() < 2)
        throw Error("leave-one-subject-out needs at least 2 distinct subjects");

    std::vector<Fold> folds;
    for (int subject : subjects) {
        Fold f;
        f.fold_index = static_cast<int>(folds.size());
        f.test_subject = subject;
        for (int i = 0; i < epochs.n_epochs; ++i)
            (epochs.subjects[i] == subject ? f.test : f.train).push_back(i);
        folds.push_back(std::move(f));
    }
    return folds;
}

double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels) {
    if (predictions.empty() || predictions.size() != labels.size())
        throw Error("accuracy needs non-empty, equal-length prediction and label lists");
    int correct = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (predictions[i] == labels[i]) ++correct;
    return 100.0 * correct / static_cast<double>(labels.size());
}

SaliencyMap channel_significance(const std::vector<int>& final_subset,
                                 const std::vector<FeatureDescriptor>& descriptors,
                                 int n_channels) {
    if (final_subset.empty()) throw Error("cannot compute saliency of an empty subset");

    SaliencyMap map;
    map.counts.assign(n_channels, 0);
    for (int col : final_subset) {
        if (col < 0 || col >= static_cast<int>(descriptors.size()))
            throw Error("selected column index out of range");
        const int ch = descriptors[col].channel_index;
        if (ch < 0 || ch >= n_channels) throw Error("descriptor channel out of range");
        ++map.counts[ch];
    }
    const int k_m = *std::max_element(map.counts.begin(), map.counts.end());
    map.significance.assign(n_channels, 0.0);
    for (int c = 0; c < n_channels; ++c)
        map.significance[c] = static_cast<double>(map.counts[c]) / k_m;
    return map;
}

LeakageGuard::LeakageGuard(std::vector<int> allowed_rows) : allowed_(std::move(allowed_rows)) {
    std::sort(allowed_.begin(), allowed_.end());
}

void LeakageGuard::check(const std::vector<int>& rows) const {
    for (int r : rows) {
        if (!std::binary_search(allowed_.begin(), allowed_.end(), r)) {
            ++violations_;
            throw Error("leakage guard: row " + std::to_string(r) +
                        " reached a fitting step outside its training fold");
        }
    }
}

MlpConfig default_mlp_config() {
    MlpConfig cfg;
    cfg.hidden_units = {25};
    cfg.dropout = {0.2};
    cfg.activations = {Activation::relu};
    cfg.optimizer = Optimizer::adam;
    return cfg;
}

namespace {

// Everything that is a pure per-epoch transform is computed once per task;
// only cross-epoch fits (wavelet PCA, standardizer, selection, classifier)
// are redone inside each fold on training rows.
struct TaskData {
    EpochSet epochs;
    FeatureMatrix spectral;
    FeatureMatrix stats;
    WaveletMagnitudes mags;
    std::vector<FeatureDescriptor> descriptors;
};

TaskData prepare_task(const EpochSet& epochs, const TaskSpec& task, const ExtractConfig& cfg) {
    TaskData td;
    td.epochs = select_task(epochs, task);
    td.spectral = spectral_feature_block(td.epochs, cfg.welch, cfg.bands);
    td.stats = stat_feature_block(td.epochs);
    td.mags = compute_wavelet_magnitudes(td.epochs, cfg.scales, cfg.morlet);

    td.descriptors = td.spectral.descriptors;
    const auto wdesc =
        wavelet_descriptors(td.epochs.n_channels, static_cast<int>(cfg.scales.scales.size()));
    td.descriptors.insert(td.descriptors.end(), wdesc.begin(), wdesc.end());
    td.descriptors.insert(td.descriptors.end(), td.stats.descriptors.begin(),
                          td.stats.descriptors.end());
    return td;
}

FeatureMatrix assemble(const TaskData& td, const Eigen::MatrixXd& wavelet_values) {
    FeatureMatrix f;
    f.values.resize(td.spectral.rows(), static_cast<Eigen::Index>(td.descriptors.size()));
    f.values << td.spectral.values, wavelet_values, td.stats.values;
    f.descriptors = td.descriptors;
    f.labels = td.epochs.labels;
    f.row_ids.resize(td.epochs.n_epochs);
    std::iota(f.row_ids.begin(), f.row_ids.end(), 0);
    f.validate();
    return f;
}

FoldOutcome process_fold(const TaskData& td, const Fold& fold, Variant variant,
                         const RunConfig& cfg, SelectionReport* report_out) {
    FoldOutcome out;
    out.fold_index = fold.fold_index;
    out.test_subject = fold.test_subject;

    const LeakageGuard guard(fold.train);

    guard.check(fold.train);
    const std::vector<PcaModel> models = fit_wavelet_pcas(td.mags, fold.train);
    const FeatureMatrix full = assemble(td, project_wavelet_features(td.mags, models));

    FeatureMatrix train = take_rows(full, fold.train);
    FeatureMatrix test = take_rows(full, fold.test);

    guard.check(train.row_ids);
    const Standardizer st = standardize_fit(train);
    train = standardize_apply(st, train);
    test = standardize_apply(st, test);

    const std::uint64_t criterion_seed =
        derive_seed(cfg.master_seed, "criterion", fold.fold_index);

    SelectionReport report;
    std::vector<int> selected;
    try {
        if (variant == Variant::all_features) {
            selected.resize(full.cols());
            std::iota(selected.begin(), selected.end(), 0);
        } else if (variant == Variant::mi_only) {
            guard.check(train.row_ids);
            const MiFilterResult r = mi_filter(train, cfg.mi);
            report.mi_values = r.mi_values;
            report.stage1_kept = r.kept;
            report.final_subset = r.kept;
            report.j_final =
                criterion_svm_cv(train, r.kept, cfg.criterion_folds, criterion_seed, cfg.svm);
            selected = r.kept;
        } else {
            guard.check(train.row_ids);
            report = select_features(train, cfg.mi, cfg.sffs, cfg.criterion_folds, criterion_seed);
            selected = report.final_subset;
        }
    } catch (const EmptySelectionError& e) {
        out.failed = true;
        out.failure_reason = e.what();
        return out;
    }

    out.selected_columns = selected;
    out.j_final = report.j_final;
    if (report_out) *report_out = std::move(report);

    const FeatureMatrix train_sel = take_cols(train, selected);
    const FeatureMatrix test_sel = take_cols(test, selected);

    std::vector<int> preds;
    if (cfg.predictor_override) {
        preds = cfg.predictor_override(train_sel, test_sel);
    } else {
        MlpConfig mcfg;
        if (cfg.use_search) {
            guard.check(train_sel.row_ids);
            const SearchResult sr = random_search(
                train_sel.values, train_sel.labels, cfg.space, cfg.mlp_epochs,
                cfg.mlp_batch_size, derive_seed(cfg.master_seed, "search", fold.fold_index));
            mcfg = sr.best;
        } else {
            mcfg = cfg.mlp ? *cfg.mlp : default_mlp_config();
        }
        mcfg.epochs = cfg.mlp_epochs;
        mcfg.batch_size = cfg.mlp_batch_size;
        mcfg.seed = derive_seed(cfg.master_seed, "classifier", fold.fold_index);
        const TrainResult trained = mlp_train(train_sel.values, train_sel.labels, mcfg);
        preds = mlp_predict(trained.model, test_sel.values);
    }
    out.accuracy_pct = accuracy(preds, test_sel.labels);
    return out;
}

}  // namespace

TaskOutcome run_task(const EpochSet& epochs, const TaskSpec& task, Variant variant,
                     Protocol protocol, const RunConfig& cfg) {
    const TaskData td = prepare_task(epochs, task, cfg.extract);

    std::vector<Fold> folds;
    if (protocol == Protocol::loso) {
        folds = loso_folds(td.epochs);
    } else {
        const SplitIndices split = stratified_split(
            td.epochs.labels, cfg.holdout_frac, derive_seed(cfg.master_seed, "holdout_split"));
        Fold f;
        f.fold_index = 0;
        f.test_subject = -1;
        f.train = split.train;
        f.test = split.test;
        folds.push_back(std::move(f));
    }

    TaskOutcome out;
    out.task = task.id;
    out.variant = variant;
    out.protocol = protocol;
    out.saliency.counts.assign(td.epochs.n_channels, 0);
    out.saliency.significance.assign(td.epochs.n_channels, 0.0);

    double best_j = -std::numeric_limits<double>::infinity();
    for (const Fold& fold : folds) {
        SelectionReport report;
        FoldOutcome fo = process_fold(td, fold, variant, cfg, &report);
        if (!fo.failed) {
            const SaliencyMap fold_map =
                channel_significance(fo.selected_columns, td.descriptors, td.epochs.n_channels);
            for (int c = 0; c < td.epochs.n_channels; ++c)
                out.saliency.counts[c] += fold_map.counts[c];
            if (variant != Variant::all_features && fo.j_final > best_j) {
                best_j = fo.j_final;
                out.report = std::move(report);
                out.report_fold = fold.fold_index;
                out.has_report = true;
            }
        }
        out.folds.push_back(std::move(fo));
    }

    std::vector<double> accs;
    for (const FoldOutcome& fo : out.folds)
        if (!fo.failed) accs.push_back(fo.accuracy_pct);
    if (accs.empty()) throw Error("every fold failed: no features survived selection");

    out.mean_accuracy =
        std::accumulate(accs.begin(), accs.end(), 0.0) / static_cast<double>(accs.size());
    double var = 0.0;
    for (double a : accs) var += (a - out.mean_accuracy) * (a - out.mean_accuracy);
    out.std_accuracy = std::sqrt(var / static_cast<double>(accs.size()));

    const int k_m = *std::max_element(out.saliency.counts.begin(), out.saliency.counts.end());
    if (k_m > 0)
        for (int c = 0; c < td.epochs.n_channels; ++c)
            out.saliency.significance[c] =
                static_cast<double>(out.saliency.counts[c]) / k_m;
    return out;
}

}  // namespace eegmi
