#pragma once

#include <cstdint>
#include <filesystem>

#include <json.hpp>

#include "eegmi/epoch_set.hpp"
#include "eegmi/evaluate.hpp"

namespace eegmi {

// Pipeline settings travel as a flat key-value JSON document: defaults,
// overlaid by an optional config file, overlaid by explicit CLI flags. The
// effective document is echoed into every output artifact.
nlohmann::json default_config_json();

// Reads a flat JSON object; keys outside the default set are rejected so
// typos fail loudly.
nlohmann::json load_config_file(const std::filesystem::path& path);

// Overlays `overrides` onto `base` (overrides win). Keys must be known.
void merge_config(nlohmann::json& base, const nlohmann::json& overrides);

// Materializes the programmatic run configuration for one task. The task
// matters only when use_table2 picks that task's pinned architecture.
RunConfig run_config_from_json(const nlohmann::json& effective, TaskId task,
                               std::uint64_t seed);

Protocol protocol_from_json(const nlohmann::json& effective);

}  // namespace eegmi
