#include "eegmi/config.hpp"

#include "eegmi/error.hpp"
#include "eegmi/io_util.hpp"

using nlohmann::json;

namespace eegmi {

json default_config_json() {
    json j;
    j["welch_segment_len"] = 64;
    j["welch_step"] = 32;
    j["mi_bins"] = 16;
    j["mi_threshold"] = 0.03;
    j["sffs_k_max"] = 60;
    j["sffs_patience"] = 10;
    j["sffs_k_min"] = 2;
    j["svm_c"] = 1.0;
    j["svm_epochs"] = 200;
    j["criterion_folds"] = 5;
    j["mlp_hidden_units"] = json::array();
    j["mlp_dropout"] = json::array();
    j["mlp_activations"] = json::array();
    j["mlp_optimizer"] = "adam";
    j["mlp_learning_rate"] = 1e-3;
    j["mlp_epochs"] = 200;
    j["mlp_batch_size"] = 32;
    j["use_table2"] = false;
    j["use_search"] = false;
    j["search_trials"] = 100;
    j["holdout_frac"] = 0.2;
    j["protocol"] = "loso";
    return j;
}

void merge_config(json& base, const json& overrides) {
    if (!overrides.is_object()) throw Error("config overrides must be a JSON object");
    for (const auto& [key, value] : overrides.items()) {
        if (!base.contains(key)) throw Error("unknown config key: " + key);
        base[key] = value;
    }
}

json load_config_file(const std::filesystem::path& path) {
    const json j = load_json_file(path);
    json known = default_config_json();
    merge_config(known, j);  // validates the keys
    return j;
}

RunConfig run_config_from_json(const json& effective, TaskId task, std::uint64_t seed) {
    RunConfig cfg;
    try {
        const int seg = effective.at("welch_segment_len").get<int>();
        if (seg < 2) throw Error("welch_segment_len must be >= 2");
        cfg.extract.welch.segment_len = seg;
        cfg.extract.welch.step = effective.at("welch_step").get<int>();
        cfg.extract.welch.window = hann_window(seg);

        cfg.mi.n_bins = effective.at("mi_bins").get<int>();
        cfg.mi.threshold = effective.at("mi_threshold").get<double>();
        cfg.sffs.k_max = effective.at("sffs_k_max").get<int>();
        cfg.sffs.patience = effective.at("sffs_patience").get<int>();
        cfg.sffs.k_min = effective.at("sffs_k_min").get<int>();
        cfg.svm.c = effective.at("svm_c").get<double>();
        cfg.svm.epochs = effective.at("svm_epochs").get<int>();
        cfg.criterion_folds = effective.at("criterion_folds").get<int>();

        cfg.mlp_epochs = effective.at("mlp_epochs").get<int>();
        cfg.mlp_batch_size = effective.at("mlp_batch_size").get<int>();
        cfg.use_search = effective.at("use_search").get<bool>();
        cfg.space.n_trials = effective.at("search_trials").get<int>();
        cfg.holdout_frac = effective.at("holdout_frac").get<double>();
        cfg.master_seed = seed;

        if (effective.at("use_table2").get<bool>()) {
            cfg.mlp = table2_config(task);
        } else if (!effective.at("mlp_hidden_units").empty()) {
            MlpConfig m;
            m.hidden_units = effective.at("mlp_hidden_units").get<std::vector<int>>();
            m.dropout = effective.at("mlp_dropout").get<std::vector<double>>();
            for (const auto& name : effective.at("mlp_activations"))
                m.activations.push_back(activation_from_name(name.get<std::string>()));
            m.optimizer =
                optimizer_from_name(effective.at("mlp_optimizer").get<std::string>());
            m.learning_rate = effective.at("mlp_learning_rate").get<double>();
            cfg.mlp = std::move(m);
        }
    } catch (const json::exception& e) {
        throw Error(std::string("malformed config value: ") + e.what());
    }
    return cfg;
}

Protocol protocol_from_json(const json& effective) {
    return protocol_from_name(effective.at("protocol").get<std::string>());
}

}  // namespace eegmi
