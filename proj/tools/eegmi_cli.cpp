// Command-line front end: synthetic data generation plus the staged
// feature-extraction / selection / training / evaluation pipeline. Every
// stage reads and writes versioned artifacts so later stages can be re-run
// (or replaced with real recordings) independently.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eegmi/bundle.hpp"
#include "eegmi/config.hpp"
#include "eegmi/error.hpp"
#include "eegmi/evaluate.hpp"
#include "eegmi/features.hpp"
#include "eegmi/io_util.hpp"
#include "eegmi/mlp.hpp"
#include "eegmi/rng.hpp"
#include "eegmi/sffs.hpp"
#include "eegmi/standardize.hpp"
#include "eegmi/synthetic.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
using namespace eegmi;

namespace {

std::vector<TaskId> parse_tasks(const std::vector<std::string>& names) {
    std::vector<TaskId> tasks;
    for (const auto& n : names) tasks.push_back(task_from_name(n));
    if (tasks.empty()) throw Error("at least one task is required");
    return tasks;
}

json descriptors_to_json(const std::vector<FeatureDescriptor>& ds) {
    json arr = json::array();
    for (const auto& d : ds)
        arr.push_back({{"channel", d.channel_index},
                       {"family", family_name(d.family)},
                       {"name", d.name}});
    return arr;
}

struct LoadedFeatures {
    FeatureMatrix f;
    TaskId task = TaskId::I;
    int n_channels = 0;
    std::vector<int> subjects;
};

void write_features_artifact(const fs::path& dir, const FeatureMatrix& f, TaskId task,
                             int n_channels, const std::vector<int>& subjects,
                             const json& echo) {
    fs::create_directories(dir);
    std::vector<double> buf(static_cast<std::size_t>(f.rows()) * f.cols());
    for (int r = 0; r < f.rows(); ++r)
        for (int c = 0; c < f.cols(); ++c)
            buf[static_cast<std::size_t>(r) * f.cols() + c] = f.values(r, c);
    write_file_atomic(dir / "features.bin", buf.data(), buf.size() * sizeof(double));

    json j;
    j["schema_version"] = kSchemaVersion;
    j["task"] = task_name(task);
    j["n_rows"] = f.rows();
    j["n_cols"] = f.cols();
    j["n_channels"] = n_channels;
    j["labels"] = f.labels;
    j["subjects"] = subjects;
    j["row_ids"] = f.row_ids;
    j["descriptors"] = descriptors_to_json(f.descriptors);
    j["data_file"] = "features.bin";
    j["dtype"] = "f64le";
    j["config_echo"] = echo;
    save_json_file(dir / "features.json", j);
}

LoadedFeatures load_features(const fs::path& json_path) {
    const json j = load_json_file(json_path);
    check_schema_version(j, json_path);

    LoadedFeatures out;
    try {
        out.task = task_from_name(j.at("task").get<std::string>());
        out.n_channels = j.at("n_channels").get<int>();
        out.subjects = j.at("subjects").get<std::vector<int>>();
        out.f.labels = j.at("labels").get<std::vector<int>>();
        out.f.row_ids = j.at("row_ids").get<std::vector<int>>();
        for (const auto& d : j.at("descriptors"))
            out.f.descriptors.push_back({d.at("channel").get<int>(),
                                         family_from_name(d.at("family").get<std::string>()),
                                         d.at("name").get<std::string>()});
        const int n_rows = j.at("n_rows").get<int>();
        const int n_cols = j.at("n_cols").get<int>();
        if (j.at("dtype").get<std::string>() != "f64le")
            throw Error("unsupported feature dtype");

        const auto blob =
            read_binary_file(json_path.parent_path() / j.at("data_file").get<std::string>());
        if (blob.size() != static_cast<std::size_t>(n_rows) * n_cols * sizeof(double))
            throw Error("feature data size does not match its manifest");
        const auto* values = reinterpret_cast<const double*>(blob.data());
        out.f.values.resize(n_rows, n_cols);
        for (int r = 0; r < n_rows; ++r)
            for (int c = 0; c < n_cols; ++c)
                out.f.values(r, c) = values[static_cast<std::size_t>(r) * n_cols + c];
    } catch (const json::exception& e) {
        throw Error("corrupt feature manifest: " + std::string(e.what()));
    }
    out.f.validate();
    return out;
}

json selection_to_json(const SelectionReport& rep, TaskId task, std::uint64_t seed,
                       const json& echo) {
    json traj = json::array();
    for (const auto& s : rep.trajectory)
        traj.push_back({{"action", s.action == SelectionAction::include ? "include" : "exclude"},
                        {"index", s.index},
                        {"j", s.j_value}});
    json j;
    j["schema_version"] = kSchemaVersion;
    j["task"] = task_name(task);
    j["seed"] = seed;
    j["mi_values"] = rep.mi_values;
    j["stage1_kept"] = rep.stage1_kept;
    j["trajectory"] = traj;
    j["final_subset"] = rep.final_subset;
    j["j_final"] = rep.j_final;
    j["config_echo"] = echo;
    return j;
}

std::vector<int> final_subset_from_selection(const fs::path& path) {
    const json j = load_json_file(path);
    check_schema_version(j, path);
    try {
        return j.at("final_subset").get<std::vector<int>>();
    } catch (const json::exception& e) {
        throw Error("corrupt selection report: " + std::string(e.what()));
    }
}

void write_saliency_csv(const fs::path& path, const SaliencyMap& m) {
    std::string csv = "channel,selected_count,significance\n";
    for (std::size_t c = 0; c < m.counts.size(); ++c)
        csv += std::to_string(c) + "," + std::to_string(m.counts[c]) + "," +
               json(m.significance[c]).dump() + "\n";
    write_file_atomic(path, csv);
}

json outcome_to_json(const TaskOutcome& o) {
    json per = json::array();
    for (const auto& f : o.folds) {
        json e;
        e["subject"] = f.test_subject;
        e["fold"] = f.fold_index;
        e["failed"] = f.failed;
        if (f.failed)
            e["reason"] = f.failure_reason;
        else
            e["accuracy"] = f.accuracy_pct;
        per.push_back(e);
    }
    json j;
    j["task"] = task_name(o.task);
    j["variant"] = variant_name(o.variant);
    j["per_subject"] = per;
    j["mean"] = o.mean_accuracy;
    j["std"] = o.std_accuracy;
    j["saliency"] = {{"counts", o.saliency.counts},
                     {"significance", o.saliency.significance}};
    if (o.has_report) j["report_fold"] = o.report_fold;
    return j;
}

// Options shared by the pipeline-ish commands.
struct CommonOpts {
    std::string config_path;
    double threshold = -1.0;  // <0 = not given
    bool table2 = false;
    bool search = false;
    std::string protocol;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_protocol) {
    cmd->add_option("--config", opts.config_path, "flat JSON config file");
    cmd->add_option("--threshold", opts.threshold, "feature filter threshold in nats");
    cmd->add_flag("--table2", opts.table2, "use the per-task pinned network architecture");
    cmd->add_flag("--search", opts.search, "tune the network per fold by random search");
    if (with_protocol)
        cmd->add_option("--protocol", opts.protocol, "loso or holdout")
            ->check(CLI::IsMember({"loso", "holdout"}));
}

json effective_config(const CommonOpts& opts) {
    json effective = default_config_json();
    if (!opts.config_path.empty())
        merge_config(effective, load_config_file(opts.config_path));
    json cli = json::object();
    if (opts.threshold >= 0.0) cli["mi_threshold"] = opts.threshold;
    if (opts.table2) cli["use_table2"] = true;
    if (opts.search) cli["use_search"] = true;
    if (!opts.protocol.empty()) cli["protocol"] = opts.protocol;
    merge_config(effective, cli);
    return effective;
}

struct EvaluateArgs {
    std::string bundle;
    std::string out;
    std::vector<std::string> tasks = {"I", "II", "III", "IV", "V", "VI"};
    std::vector<std::string> variants;
    std::uint64_t seed = 0;
    CommonOpts common;
};

// Runs every (task, variant) pair and writes results JSON; when artifact_dir
// is set, also writes the per-pair selection report and saliency CSV.
void run_evaluation(const EvaluateArgs& args, const fs::path& results_path,
                    const fs::path* artifact_dir) {
    const json effective = effective_config(args.common);
    const Protocol protocol = protocol_from_json(effective);
    const EpochSet epochs = load_epoch_bundle(args.bundle);

    json results = json::array();
    for (TaskId task : parse_tasks(args.tasks)) {
        for (const std::string& vname : args.variants) {
            const Variant variant = variant_from_name(vname);
            const RunConfig rc = run_config_from_json(effective, task, args.seed);
            const TaskOutcome o = run_task(epochs, task_spec(task), variant, protocol, rc);
            results.push_back(outcome_to_json(o));

            if (artifact_dir) {
                const std::string tag = task_name(o.task) + "_" + variant_name(o.variant);
                write_saliency_csv(*artifact_dir / ("saliency_" + tag + ".csv"), o.saliency);
                if (o.has_report)
                    save_json_file(*artifact_dir / ("selection_" + tag + ".json"),
                                   selection_to_json(o.report, o.task, args.seed, effective));
            }
        }
    }

    json out;
    out["schema_version"] = kSchemaVersion;
    out["protocol"] = protocol_name(protocol);
    out["seed"] = args.seed;
    out["config_echo"] = effective;
    out["results"] = results;
    save_json_file(results_path, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EEG motor-imagery band-power / wavelet / floating-selection pipeline"};
    app.require_subcommand(1);

    // gen-synthetic
    auto* gen = app.add_subcommand("gen-synthetic", "write a planted-band benchmark bundle");
    std::string gen_out;
    SyntheticSpec spec;
    std::vector<double> band = {spec.band_lo, spec.band_hi};
    bool force = false;
    gen->add_option("--out", gen_out, "bundle directory")->required();
    gen->add_option("--seed", spec.seed, "master seed")->required();
    gen->add_option("--subjects", spec.n_subjects, "number of subjects");
    gen->add_option("--epochs-per-class", spec.epochs_per_class, "epochs per class per subject");
    gen->add_option("--channels", spec.n_channels, "number of channels");
    gen->add_option("--fs", spec.fs, "sampling rate in Hz");
    gen->add_option("--samples", spec.n_samples, "samples per epoch");
    gen->add_option("--planted", spec.planted_channels, "channels carrying the tone")
        ->delimiter(',');
    gen->add_option("--band", band, "planted band lo,hi in Hz")->delimiter(',')->expected(2);
    gen->add_option("--effect", spec.effect_size, "class-1 : class-0 amplitude ratio");
    gen->add_option("--noise", spec.noise_level, "channel noise RMS");
    gen->add_flag("--force", force, "allow effect sizes <= 1 (chance-level controls)");

    // extract
    auto* ext = app.add_subcommand("extract", "compute the per-channel feature matrix");
    std::string ext_bundle, ext_out, ext_task;
    CommonOpts ext_common;
    ext->add_option("--bundle", ext_bundle, "epoch bundle directory")->required();
    ext->add_option("--out", ext_out, "output directory")->required();
    ext->add_option("--task", ext_task, "pairwise task I..VI")->required();
    ext->add_option("--config", ext_common.config_path, "flat JSON config file");

    // select
    auto* sel = app.add_subcommand("select", "two-stage feature selection on a feature matrix");
    std::string sel_features, sel_out;
    std::uint64_t sel_seed = 0;
    CommonOpts sel_common;
    sel->add_option("--features", sel_features, "features.json path")->required();
    sel->add_option("--out", sel_out, "selection report path")->required();
    sel->add_option("--seed", sel_seed, "master seed")->required();
    add_common(sel, sel_common, false);

    // train
    auto* trn = app.add_subcommand("train", "train the network on selected features");
    std::string trn_features, trn_selection, trn_out;
    std::uint64_t trn_seed = 0;
    CommonOpts trn_common;
    trn->add_option("--features", trn_features, "features.json path")->required();
    trn->add_option("--selection", trn_selection, "selection report path")->required();
    trn->add_option("--out", trn_out, "model manifest path")->required();
    trn->add_option("--seed", trn_seed, "master seed")->required();
    add_common(trn, trn_common, false);

    // evaluate
    auto* evl = app.add_subcommand("evaluate", "cross-validated accuracy per task and variant");
    EvaluateArgs evl_args;
    evl_args.variants = {"all", "mi", "hybrid"};
    evl->add_option("--bundle", evl_args.bundle, "epoch bundle directory")->required();
    evl->add_option("--out", evl_args.out, "results JSON path")->required();
    evl->add_option("--task", evl_args.tasks, "tasks, e.g. I,IV")->delimiter(',');
    evl->add_option("--variant", evl_args.variants, "all, mi, hybrid")->delimiter(',');
    evl->add_option("--seed", evl_args.seed, "master seed")->required();
    add_common(evl, evl_args.common, true);

    // saliency
    auto* sal = app.add_subcommand("saliency", "channel significance of a selection report");
    std::string sal_selection, sal_features, sal_out;
    sal->add_option("--selection", sal_selection, "selection report path")->required();
    sal->add_option("--features", sal_features, "features.json path")->required();
    sal->add_option("--out", sal_out, "CSV path")->required();

    // pipeline
    auto* pip = app.add_subcommand("pipeline", "evaluate and write all per-pair artifacts");
    EvaluateArgs pip_args;
    pip_args.variants = {"hybrid"};
    pip->add_option("--bundle", pip_args.bundle, "epoch bundle directory")->required();
    pip->add_option("--out", pip_args.out, "output directory")->required();
    pip->add_option("--task", pip_args.tasks, "tasks, e.g. I,IV")->delimiter(',');
    pip->add_option("--variant", pip_args.variants, "all, mi, hybrid")->delimiter(',');
    pip->add_option("--seed", pip_args.seed, "master seed")->required();
    add_common(pip, pip_args.common, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }

    try {
        if (gen->parsed()) {
            spec.band_lo = band[0];
            spec.band_hi = band[1];
            if (spec.effect_size <= 1.0 && !force)
                throw Error("effect size <= 1 is a chance-level control; pass --force to allow");
            save_epoch_bundle(generate_synthetic(spec), gen_out);
        } else if (ext->parsed()) {
            const json effective = effective_config(ext_common);
            const TaskId task = task_from_name(ext_task);
            const RunConfig rc = run_config_from_json(effective, task, 0);
            const EpochSet epochs = select_task(load_epoch_bundle(ext_bundle), task_spec(task));
            const ExtractResult er = extract_features(epochs, rc.extract);
            write_features_artifact(ext_out, er.features, task, epochs.n_channels,
                                    epochs.subjects, effective);
        } else if (sel->parsed()) {
            const json effective = effective_config(sel_common);
            const LoadedFeatures lf = load_features(sel_features);
            const RunConfig rc = run_config_from_json(effective, lf.task, sel_seed);
            const FeatureMatrix fz = standardize_apply(standardize_fit(lf.f), lf.f);
            const SelectionReport rep = select_features(
                fz, rc.mi, rc.sffs, rc.criterion_folds, derive_seed(sel_seed, "criterion"));
            save_json_file(sel_out, selection_to_json(rep, lf.task, sel_seed, effective));
        } else if (trn->parsed()) {
            const json effective = effective_config(trn_common);
            const LoadedFeatures lf = load_features(trn_features);
            const std::vector<int> subset = final_subset_from_selection(trn_selection);
            const RunConfig rc = run_config_from_json(effective, lf.task, trn_seed);
            const FeatureMatrix fz =
                take_cols(standardize_apply(standardize_fit(lf.f), lf.f), subset);

            MlpConfig mcfg = rc.mlp ? *rc.mlp : default_mlp_config();
            mcfg.epochs = rc.mlp_epochs;
            mcfg.batch_size = rc.mlp_batch_size;
            mcfg.seed = derive_seed(trn_seed, "classifier");
            const TrainResult tr = mlp_train(fz.values, fz.labels, mcfg);

            save_mlp(tr.model, trn_out);
            json manifest = load_json_file(trn_out);
            manifest["task"] = task_name(lf.task);
            manifest["seed"] = trn_seed;
            manifest["selected_columns"] = subset;
            manifest["loss_curve"] = tr.loss_curve;
            manifest["config_echo"] = effective;
            save_json_file(trn_out, manifest);
        } else if (evl->parsed()) {
            run_evaluation(evl_args, evl_args.out, nullptr);
        } else if (sal->parsed()) {
            const LoadedFeatures lf = load_features(sal_features);
            const std::vector<int> subset = final_subset_from_selection(sal_selection);
            write_saliency_csv(sal_out,
                               channel_significance(subset, lf.f.descriptors, lf.n_channels));
        } else if (pip->parsed()) {
            const fs::path out_dir = pip_args.out;
            fs::create_directories(out_dir);
            run_evaluation(pip_args, out_dir / "results.json", &out_dir);
        }
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
