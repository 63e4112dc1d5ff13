#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace eegmi {

// Write-to-temp plus atomic rename so concurrent readers never observe a
// partially written artifact.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
void write_file_atomic(const std::filesystem::path& path, const void* data, std::size_t bytes);

std::string read_text_file(const std::filesystem::path& path);
std::vector<unsigned char> read_binary_file(const std::filesystem::path& path);

nlohmann::json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const nlohmann::json& j);

// Rejects artifacts whose schema_version is present and unexpected; a
// missing field is accepted as version 1 for hand-written bundles.
void check_schema_version(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace eegmi
