#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace eegmi {

// Class ids are fixed: 0 = left hand, 1 = right hand, 2 = feet, 3 = tongue.
inline constexpr int kLeftHand = 0;
inline constexpr int kRightHand = 1;
inline constexpr int kFeet = 2;
inline constexpr int kTongue = 3;

// Multi-channel epoched recordings. Data is laid out epoch-major, then
// channel, then sample, matching the on-disk bundle order.
struct EpochSet {
    std::vector<double> data;
    int n_epochs = 0;
    int n_channels = 0;
    int n_samples = 0;
    double fs = 0.0;
    std::vector<std::string> channel_names;
    std::vector<int> labels;
    std::vector<int> subjects;

    double& at(int e, int c, int s) {
        return data[(static_cast<std::size_t>(e) * n_channels + c) * n_samples + s];
    }
    double at(int e, int c, int s) const {
        return data[(static_cast<std::size_t>(e) * n_channels + c) * n_samples + s];
    }
    Eigen::Map<const Eigen::VectorXd> channel(int e, int c) const {
        return Eigen::Map<const Eigen::VectorXd>(
            data.data() + (static_cast<std::size_t>(e) * n_channels + c) * n_samples, n_samples);
    }

    // Throws Error on any invariant breach (shape mismatch, non-finite
    // samples, fs <= 0).
    void validate() const;
};

enum class TaskId { I, II, III, IV, V, VI };

// One pairwise classification task: epochs of class_a map to label 0,
// class_b to label 1.
struct TaskSpec {
    TaskId id;
    int class_a;
    int class_b;
};

TaskSpec task_spec(TaskId id);
TaskId task_from_name(const std::string& name);
std::string task_name(TaskId id);

// Keeps only the task's two classes, remapping labels to {0, 1}; subject ids
// and epoch order are preserved. Throws if either class is absent.
EpochSet select_task(const EpochSet& epochs, const TaskSpec& task);

}  // namespace eegmi
