#include "eegmi/epoch_set.hpp"

#include <cmath>

#include "eegmi/error.hpp"

namespace eegmi {

void EpochSet::validate() const {
    if (n_epochs < 0 || n_channels <= 0 || n_samples <= 0)
        throw Error("epoch set has invalid shape");
    if (fs <= 0.0) throw Error("sampling rate must be positive");
    const std::size_t expected =
        static_cast<std::size_t>(n_epochs) * n_channels * n_samples;
    if (data.size() != expected) throw Error("epoch data size does not match shape");
    if (labels.size() != static_cast<std::size_t>(n_epochs) ||
        subjects.size() != static_cast<std::size_t>(n_epochs))
        throw Error("labels/subjects length does not match epoch count");
    if (!channel_names.empty() &&
        channel_names.size() != static_cast<std::size_t>(n_channels))
        throw Error("channel name count does not match channel count");
    for (double v : data)
        if (!std::isfinite(v)) throw Error("epoch data contains non-finite samples");
}

TaskSpec task_spec(TaskId id) {
    switch (id) {
        case TaskId::I:   return {id, kLeftHand, kRightHand};
        case TaskId::II:  return {id, kLeftHand, kFeet};
        case TaskId::III: return {id, kLeftHand, kTongue};
        case TaskId::IV:  return {id, kRightHand, kFeet};
        case TaskId::V:   return {id, kRightHand, kTongue};
        case TaskId::VI:  return {id, kFeet, kTongue};
    }
    throw Error("unknown task id");
}

TaskId task_from_name(const std::string& name) {
    if (name == "I") return TaskId::I;
    if (name == "II") return TaskId::II;
    if (name == "III") return TaskId::III;
    if (name == "IV") return TaskId::IV;
    if (name == "V") return TaskId::V;
    if (name == "VI") return TaskId::VI;
    throw Error("unknown task name: " + name + " (expected I..VI)");
}

std::string task_name(TaskId id) {
    switch (id) {
        case TaskId::I:   return "I";
        case TaskId::II:  return "II";
        case TaskId::III: return "III";
        case TaskId::IV:  return "IV";
        case TaskId::V:   return "V";
        case TaskId::VI:  return "VI";
    }
    throw Error("unknown task id");
}

EpochSet select_task(const EpochSet& epochs, const TaskSpec& task) {
    if (task.class_a == task.class_b) throw Error("task classes must differ");
    std::vector<int> picked;
    bool saw_a = false, saw_b = false;
    for (int e = 0; e < epochs.n_epochs; ++e) {
        const int label = epochs.labels[e];
        if (label == task.class_a) {
            saw_a = true;
            picked.push_back(e);
        } else if (label == task.class_b) {
            saw_b = true;
            picked.push_back(e);
        }
    }
    if (!saw_a || !saw_b)
        throw Error("task " + task_name(task.id) + ": a class has no epochs");

    EpochSet out;
    out.n_epochs = static_cast<int>(picked.size());
    out.n_channels = epochs.n_channels;
    out.n_samples = epochs.n_samples;
    out.fs = epochs.fs;
    out.channel_names = epochs.channel_names;
    out.data.resize(static_cast<std::size_t>(out.n_epochs) * out.n_channels * out.n_samples);
    out.labels.resize(picked.size());
    out.subjects.resize(picked.size());
    const std::size_t epoch_len =
        static_cast<std::size_t>(epochs.n_channels) * epochs.n_samples;
    for (std::size_t i = 0; i < picked.size(); ++i) {
        const int e = picked[i];
        std::copy(epochs.data.begin() + e * epoch_len,
                  epochs.data.begin() + (e + 1) * epoch_len,
                  out.data.begin() + i * epoch_len);
        out.labels[i] = (epochs.labels[e] == task.class_a) ? 0 : 1;
        out.subjects[i] = epochs.subjects[e];
    }
    return out;
}

}  // namespace eegmi
