#include "tfc/dataset.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>

using namespace tfc;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

DatasetBuildConfig small_radar_config() {
    DatasetBuildConfig cfg;
    cfg.kind = "radar";
    cfg.master_seed = 11;
    cfg.n_per_class = 2;
    cfg.snr_grid_db = {-2.0, 4.0, 10.0};
    cfg.catalog = waveform_catalog();
    cfg.transform.kind = TfKind::stft; // cheapest transform for the I/O tests
    cfg.transform.window = WindowSpec::gauss(128);
    cfg.raster.height = 32;
    cfg.raster.width = 32;
    cfg.n_threads = 0;
    return cfg;
}

} // namespace

TEST_CASE("radar build produces 18 * n_per_class * n_snr items") {
    const auto dir = scratch_dir("tfc_ds_build");
    const DatasetBuildConfig cfg = small_radar_config();
    const Manifest m = dataset_build(cfg, dir.string());
    CHECK(m.items.size() == 18 * 2 * 3);
    CHECK(m.label_map.size() == 18);
    CHECK(m.schema_version == 1);
    CHECK(m.seed == 11);
    CHECK(fs::exists(dir / "manifest.json"));
    validate_manifest(m, dir.string());

    bool has_split[3] = {false, false, false};
    for (const auto& it : m.items) {
        has_split[static_cast<int>(it.split)] = true;
        CHECK(it.snr_db.has_value());
        CHECK_FALSE(it.sha256.empty());
    }
    CHECK(has_split[0]);
    CHECK(has_split[1]);

    const Dataset d = load_dataset(m, dir.string());
    CHECK(d.items.size() == m.items.size());
    CHECK(d.items[0].image.height == 32);
    fs::remove_all(dir);
}

TEST_CASE("rebuilding with the same config and seed is bit-identical") {
    const auto dir1 = scratch_dir("tfc_ds_a");
    const auto dir2 = scratch_dir("tfc_ds_b");
    DatasetBuildConfig cfg = small_radar_config();
    cfg.n_per_class = 1;
    cfg.snr_grid_db = {4.0};
    dataset_build(cfg, dir1.string());
    cfg.n_threads = 3; // thread count must not matter
    dataset_build(cfg, dir2.string());
    std::ifstream a(dir1 / "manifest.json"), b(dir2 / "manifest.json");
    const std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    const std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("unknown transform name in a config names the field") {
    const auto dir = scratch_dir("tfc_ds_cfg");
    const std::string path = (dir / "bad.json").string();
    std::ofstream(path) << R"({"kind":"radar","transform":{"method":"wigner"}})";
    CHECK_THROWS_WITH_AS(parse_build_config(path), doctest::Contains("transform"),
                         std::invalid_argument);
    std::ofstream(path) << R"({"kind":"sonar"})";
    CHECK_THROWS_WITH_AS(parse_build_config(path), doctest::Contains("kind"),
                         std::invalid_argument);
    CHECK_THROWS_AS(parse_build_config((dir / "absent.json").string()), std::runtime_error);
    fs::remove_all(dir);
}

TEST_CASE("validate_manifest detects a bit-altered tensor") {
    const auto dir = scratch_dir("tfc_ds_tamper");
    DatasetBuildConfig cfg = small_radar_config();
    cfg.n_per_class = 1;
    cfg.snr_grid_db = {10.0};
    cfg.catalog.specs.resize(2); // two classes keep it quick
    const Manifest m = dataset_build(cfg, dir.string());
    validate_manifest(m, dir.string());

    // Flip one byte of the first tensor.
    const std::string victim = (dir / m.items[0].tensor_path).string();
    std::fstream f(victim, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(20);
    char byte;
    f.seekg(20);
    f.read(&byte, 1);
    byte = static_cast<char>(byte ^ 0x01);
    f.seekp(20);
    f.write(&byte, 1);
    f.close();
    CHECK_THROWS_WITH_AS(validate_manifest(m, dir.string()), doctest::Contains("hash mismatch"),
                         std::runtime_error);

    fs::remove(victim);
    CHECK_THROWS_WITH_AS(validate_manifest(m, dir.string()), doctest::Contains("missing"),
                         std::runtime_error);
    fs::remove_all(dir);
}

TEST_CASE("manifest JSON round trips") {
    Manifest m;
    m.tool_version = "0.1.0";
    m.seed = 42;
    m.label_map = {"stable", "unstable"};
    ManifestItem it;
    it.tensor_path = "case_000000.tftn";
    it.label = 1;
    it.split = Split::val;
    it.sha256 = "deadbeef";
    it.source = R"({"imaging":"gadf"})";
    m.items.push_back(it);
    nlohmann::json j = m;
    const Manifest back = j.get<Manifest>();
    CHECK(back.seed == 42);
    CHECK(back.label_map == m.label_map);
    REQUIRE(back.items.size() == 1);
    CHECK(back.items[0].tensor_path == it.tensor_path);
    CHECK(back.items[0].split == Split::val);
    CHECK_FALSE(back.items[0].snr_db.has_value());
    CHECK(nlohmann::json::parse(back.items[0].source) == nlohmann::json::parse(it.source));

    j["schema_version"] = 9;
    CHECK_THROWS_AS(j.get<Manifest>(), std::runtime_error);
}

TEST_CASE("tsa build kind produces labeled stable/unstable cases") {
    const auto dir = scratch_dir("tfc_ds_tsa");
    DatasetBuildConfig cfg;
    cfg.kind = "tsa";
    cfg.master_seed = 4;
    cfg.n_cases = 24;
    cfg.imaging = TsaImaging::gadf;
    cfg.n_threads = 0;
    const Manifest m = dataset_build(cfg, dir.string());
    CHECK(m.items.size() == 24);
    CHECK(m.label_map == std::vector<std::string>{"stable", "unstable"});
    validate_manifest(m, dir.string());
    bool has_split[3] = {false, false, false};
    for (const auto& it : m.items) has_split[static_cast<int>(it.split)] = true;
    CHECK(has_split[0]);
    CHECK(has_split[1]);
    CHECK(has_split[2]);
    const Dataset d = load_dataset(m, dir.string());
    CHECK(d.items[0].image.channels == 3);
    fs::remove_all(dir);
}
