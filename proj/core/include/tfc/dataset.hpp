#pragma once

#include "tfc/classifier.hpp"
#include "tfc/pipeline.hpp"
#include "tfc/tsa.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tfc {

struct ManifestItem {
    std::string tensor_path; // relative to the manifest directory
    std::size_t label = 0;
    std::optional<double> snr_db;
    Split split = Split::train;
    std::string sha256;
    std::string source; // descriptor JSON
};

struct Manifest {
    std::uint32_t schema_version = 1;
    std::string tool_version;
    std::uint64_t seed = 0;
    std::vector<std::string> label_map;
    std::vector<ManifestItem> items;
};

void to_json(nlohmann::json& j, const Manifest& m);
void from_json(const nlohmann::json& j, Manifest& m);

std::string sha256_file(const std::string& path);

/// Dataset build configuration, parsed from a JSON config file. kind is
/// "radar" (catalog x snr grid x n_per_class) or "tsa" (surrogate cases).
struct DatasetBuildConfig {
    std::string kind = "radar";
    std::uint64_t master_seed = 1;

    // radar
    Catalog catalog;
    std::vector<double> snr_grid_db = {-2.0, 4.0, 10.0};
    std::size_t n_per_class = 2;
    double fs = 100e3;
    TransformConfig transform;
    RasterPolicy raster;

    // tsa
    TsaImaging imaging = TsaImaging::gadf;
    std::size_t n_cases = 200;
    SurrogateParams surrogate;
    double window_seconds = 0.1;
    double clearing_lo = 0.05, clearing_hi = 0.5;

    double train_ratio = 0.7, val_ratio = 0.15;
    std::size_t n_threads = 1;
};

DatasetBuildConfig parse_build_config(const std::string& config_path);

/// Synthesizes, transforms, rasterizes, and exports TFTN tensors plus
/// manifest.json into out_dir. Fully reproducible from (config, seed).
Manifest dataset_build(const DatasetBuildConfig& cfg, const std::string& out_dir);

void write_manifest(const Manifest& m, const std::string& path);
Manifest read_manifest(const std::string& path);

/// Re-hashes every tensor; throws on a missing or bit-altered file.
void validate_manifest(const Manifest& m, const std::string& base_dir);

/// Loads the manifest's tensors into an in-memory Dataset.
Dataset load_dataset(const Manifest& m, const std::string& base_dir);

} // namespace tfc
