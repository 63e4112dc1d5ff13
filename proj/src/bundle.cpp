#include "eegmi/bundle.hpp"

#include <cstring>
#include <fstream>

#include "eegmi/error.hpp"
#include "eegmi/io_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace eegmi {

void write_file_atomic(const fs::path& path, const void* data, std::size_t bytes) {
    const fs::path tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open " + tmp.string() + " for writing");
        f.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
        if (!f) throw Error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
    write_file_atomic(path, contents.data(), contents.size());
}

std::string read_text_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

std::vector<unsigned char> read_binary_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path.string());
    f.seekg(0, std::ios::end);
    const auto size = f.tellg();
    f.seekg(0, std::ios::beg);
    std::vector<unsigned char> buf(static_cast<std::size_t>(size));
    f.read(reinterpret_cast<char*>(buf.data()), size);
    if (!f) throw Error("short read from " + path.string());
    return buf;
}

json load_json_file(const fs::path& path) {
    json j = json::parse(read_text_file(path), nullptr, false);
    if (j.is_discarded()) throw Error("corrupt JSON in " + path.string());
    return j;
}

void save_json_file(const fs::path& path, const json& j) {
    write_file_atomic(path, j.dump(2) + "\n");
}

void check_schema_version(const json& j, const fs::path& path) {
    if (!j.contains("schema_version")) return;
    const auto& v = j.at("schema_version");
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
        throw Error("unsupported schema_version in " + path.string() + " (expected " +
                    std::to_string(kSchemaVersion) + ")");
}

EpochSet load_epoch_bundle(const fs::path& dir) {
    const fs::path manifest_path = dir / "manifest.json";
    if (!fs::exists(manifest_path))
        throw Error("missing manifest: " + manifest_path.string());
    const json m = load_json_file(manifest_path);
    check_schema_version(m, manifest_path);

    EpochSet out;
    try {
        out.n_epochs = m.at("n_epochs").get<int>();
        out.n_channels = m.at("n_channels").get<int>();
        out.n_samples = m.at("n_samples").get<int>();
        out.fs = m.at("fs_hz").get<double>();
        out.channel_names = m.at("channel_names").get<std::vector<std::string>>();
        out.labels = m.at("labels").get<std::vector<int>>();
        out.subjects = m.at("subjects").get<std::vector<int>>();
        if (m.at("dtype").get<std::string>() != "f32le")
            throw Error("unsupported dtype in " + manifest_path.string());
        if (m.at("order").get<std::string>() != "epoch,channel,sample")
            throw Error("unsupported sample order in " + manifest_path.string());
    } catch (const json::exception& e) {
        throw Error("corrupt manifest " + manifest_path.string() + ": " + e.what());
    }

    const std::size_t n_values =
        static_cast<std::size_t>(out.n_epochs) * out.n_channels * out.n_samples;
    const auto raw = read_binary_file(dir / "data.bin");
    if (raw.size() != n_values * sizeof(float))
        throw Error("data.bin size " + std::to_string(raw.size()) + " does not match manifest shape (" +
                    std::to_string(n_values * sizeof(float)) + " bytes expected)");

    out.data.resize(n_values);
    const auto* src = reinterpret_cast<const float*>(raw.data());
    for (std::size_t i = 0; i < n_values; ++i) out.data[i] = static_cast<double>(src[i]);
    out.validate();
    return out;
}

void save_epoch_bundle(const EpochSet& epochs, const fs::path& dir) {
    epochs.validate();
    fs::create_directories(dir);

    std::vector<float> raw(epochs.data.size());
    for (std::size_t i = 0; i < epochs.data.size(); ++i)
        raw[i] = static_cast<float>(epochs.data[i]);
    write_file_atomic(dir / "data.bin", raw.data(), raw.size() * sizeof(float));

    json m;
    m["schema_version"] = kSchemaVersion;
    m["n_epochs"] = epochs.n_epochs;
    m["n_channels"] = epochs.n_channels;
    m["n_samples"] = epochs.n_samples;
    m["fs_hz"] = epochs.fs;
    m["channel_names"] = epochs.channel_names;
    m["labels"] = epochs.labels;
    m["subjects"] = epochs.subjects;
    m["dtype"] = "f32le";
    m["order"] = "epoch,channel,sample";
    save_json_file(dir / "manifest.json", m);
}

}  // namespace eegmi
