#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eegmi/epoch_set.hpp"
#include "eegmi/features.hpp"
#include "eegmi/mi.hpp"
#include "eegmi/mlp.hpp"
#include "eegmi/search.hpp"
#include "eegmi/sffs.hpp"
#include "eegmi/svm.hpp"

namespace eegmi {

// all_features skips both selection stages, mi_only stops after the MI
// filter, hybrid runs the MI filter followed by floating selection.
enum class Variant { all_features, mi_only, hybrid };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& s);  // accepts short and long forms

enum class Protocol { loso, holdout };

std::string protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& s);

struct Fold {
    int fold_index = 0;
    int test_subject = -1;  // -1 for the holdout split
    std::vector<int> train;
    std::vector<int> test;
};

// One fold per distinct subject id, ascending; the test side holds exactly
// that subject's epochs. Throws unless >= 2 subjects are present.
std::vector<Fold> loso_folds(const EpochSet& epochs);

// 100 * correct / total; throws on empty or mismatched inputs.
double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels);

struct SaliencyMap {
    std::vector<int> counts;           // selected-feature count per channel
    std::vector<double> significance;  // counts / max(counts)
};

// Counts selected columns per channel and normalizes by the busiest channel.
// Throws on an empty subset.
SaliencyMap channel_significance(const std::vector<int>& final_subset,
                                 const std::vector<FeatureDescriptor>& descriptors,
                                 int n_channels);

// Tripwire asserting that only training-fold rows reach fitting steps. Every
// violation bumps a process-wide counter (so a test suite can assert it
// stayed at zero) and throws.
class LeakageGuard {
  public:
    explicit LeakageGuard(std::vector<int> allowed_rows);

    void check(const std::vector<int>& rows) const;

    static long violations() { return violations_.load(); }
    static void reset_violations() { violations_.store(0); }

  private:
    std::vector<int> allowed_;  // sorted
    static std::atomic<long> violations_;
};

struct FoldOutcome {
    int fold_index = 0;
    int test_subject = -1;
    double accuracy_pct = 0.0;
    bool failed = false;  // MI filter left nothing to select
    std::string failure_reason;
    double j_final = 0.0;            // criterion value of the deployed subset
    std::vector<int> selected_columns;
};

struct TaskOutcome {
    TaskId task = TaskId::I;
    Variant variant = Variant::hybrid;
    Protocol protocol = Protocol::loso;
    std::vector<FoldOutcome> folds;
    double mean_accuracy = 0.0;  // over non-failed folds
    double std_accuracy = 0.0;   // population, over non-failed folds
    SaliencyMap saliency;        // counts summed over non-failed folds
    bool has_report = false;
    int report_fold = -1;        // fold whose selection scored the best J
    SelectionReport report;
};

struct RunConfig {
    ExtractConfig extract;
    MiConfig mi;
    SffsConfig sffs;
    SvmConfig svm;
    int criterion_folds = 5;
    std::optional<MlpConfig> mlp;  // fixed architecture; empty = built-in default
    bool use_search = false;       // tune per fold instead of the fixed config
    SearchSpace space;
    int mlp_epochs = 200;
    int mlp_batch_size = 32;
    double holdout_frac = 0.2;
    std::uint64_t master_seed = 0;
    // Testing seam: when set, replaces classifier training and prediction.
    std::function<std::vector<int>(const FeatureMatrix& train, const FeatureMatrix& test)>
        predictor_override;
};

// Modest single-hidden-layer fallback used when no architecture is pinned
// and the search is off.
MlpConfig default_mlp_config();

// Full protocol for one pairwise task: per fold, fit wavelet PCA /
// standardizer / selection on training rows only, train the classifier, and
// score the held-out rows. Saliency counts are summed across folds and the
// best-criterion fold's selection report is kept.
TaskOutcome run_task(const EpochSet& epochs, const TaskSpec& task, Variant variant,
                     Protocol protocol, const RunConfig& cfg);

}  // namespace eegmi
