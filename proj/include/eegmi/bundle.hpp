#pragma once

#include <filesystem>

#include "eegmi/epoch_set.hpp"

namespace eegmi {

inline constexpr int kSchemaVersion = 1;

// An epoch bundle is a directory holding manifest.json plus data.bin
// (little-endian float32, epoch-major, then channel, then sample).
EpochSet load_epoch_bundle(const std::filesystem::path& dir);
void save_epoch_bundle(const EpochSet& epochs, const std::filesystem::path& dir);

}  // namespace eegmi
