#include "tfc/dataset.hpp"

#include "tfc/parallel.hpp"
#include "tfc/rng.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace fs = std::filesystem;

namespace tfc {

namespace {
constexpr const char* kToolVersion = "0.1.0";
}

void to_json(nlohmann::json& j, const Manifest& m) {
    j = nlohmann::json{
        {"schema_version", m.schema_version},
        {"tool_version", m.tool_version},
        {"seed", m.seed},
        {"label_map", m.label_map},
    };
    nlohmann::json items = nlohmann::json::array();
    for (const auto& it : m.items) {
        nlohmann::json row;
        row["path"] = it.tensor_path;
        row["label"] = it.label;
        if (it.snr_db) row["snr_db"] = *it.snr_db;
        row["split"] = split_name(it.split);
        row["sha256"] = it.sha256;
        row["source"] = it.source.empty() ? nlohmann::json{} : nlohmann::json::parse(it.source);
        items.push_back(std::move(row));
    }
    j["items"] = std::move(items);
}

void from_json(const nlohmann::json& j, Manifest& m) {
    m.schema_version = j.at("schema_version");
    if (m.schema_version != 1)
        throw std::runtime_error("manifest: unrecognized schema version");
    m.tool_version = j.at("tool_version");
    m.seed = j.at("seed");
    m.label_map = j.at("label_map").get<std::vector<std::string>>();
    m.items.clear();
    for (const auto& row : j.at("items")) {
        ManifestItem it;
        it.tensor_path = row.at("path");
        it.label = row.at("label");
        if (row.contains("snr_db") && !row["snr_db"].is_null()) it.snr_db = row["snr_db"].get<double>();
        it.split = split_from_name(row.at("split"));
        it.sha256 = row.at("sha256");
        it.source = row.contains("source") && !row["source"].is_null() ? row["source"].dump() : "";
        m.items.push_back(std::move(it));
    }
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 init failed");
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        if (in.gcount() > 0)
            EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

DatasetBuildConfig parse_build_config(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config: " + config_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("config parse error in " + config_path + ": " + e.what());
    }

    DatasetBuildConfig cfg;
    cfg.kind = j.value("kind", "radar");
    if (cfg.kind != "radar" && cfg.kind != "tsa")
        throw std::invalid_argument("config field 'kind' must be \"radar\" or \"tsa\" in " + config_path);
    cfg.master_seed = j.value("master_seed", std::uint64_t{1});
    cfg.train_ratio = j.value("train_ratio", 0.7);
    cfg.val_ratio = j.value("val_ratio", 0.15);
    cfg.n_threads = j.value("n_threads", std::size_t{1});

    if (cfg.kind == "radar") {
        cfg.catalog = j.contains("catalog") ? j["catalog"].get<Catalog>() : waveform_catalog();
        if (j.contains("snr_grid_db")) cfg.snr_grid_db = j["snr_grid_db"].get<std::vector<double>>();
        cfg.n_per_class = j.value("n_per_class", std::size_t{2});
        cfg.fs = j.value("fs", 100e3);
        if (j.contains("transform")) {
            try {
                cfg.transform = j["transform"].get<TransformConfig>();
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("config field 'transform' invalid in " + config_path +
                                            ": " + e.what());
            }
        }
        if (j.contains("raster")) {
            cfg.raster.scaling = j["raster"].value("scaling", "db") == std::string("db")
                                     ? RasterScaling::db
                                     : RasterScaling::linear;
            cfg.raster.db_floor = j["raster"].value("db_floor", -60.0);
            cfg.raster.height = j["raster"].value("height", std::size_t{224});
            cfg.raster.width = j["raster"].value("width", std::size_t{224});
        }
    } else {
        cfg.imaging = tsa_imaging_from_name(j.value("imaging", "gadf"));
        cfg.n_cases = j.value("n_cases", std::size_t{200});
        cfg.window_seconds = j.value("window_seconds", 0.1);
        cfg.clearing_lo = j.value("clearing_lo", 0.05);
        cfg.clearing_hi = j.value("clearing_hi", 0.5);
    }
    return cfg;
}

namespace {

Split ratio_split(std::size_t index, std::size_t total, double train_ratio, double val_ratio) {
    const double u = static_cast<double>(index) / static_cast<double>(total);
    if (u < train_ratio) return Split::train;
    if (u < train_ratio + val_ratio) return Split::val;
    return Split::test;
}

} // namespace

Manifest dataset_build(const DatasetBuildConfig& cfg, const std::string& out_dir) {
    fs::create_directories(out_dir);

    Manifest manifest;
    manifest.tool_version = kToolVersion;
    manifest.seed = cfg.master_seed;

    if (cfg.kind == "radar") {
        const auto labels = cfg.catalog.labels();
        manifest.label_map = labels;
        const std::size_t n_classes = labels.size();
        const std::size_t n_snr = cfg.snr_grid_db.size();
        const std::size_t n_items = n_classes * n_snr * cfg.n_per_class;
        manifest.items.resize(n_items);

        parallel_for(n_items, cfg.n_threads, [&](std::size_t idx) {
            const std::size_t c = idx / (n_snr * cfg.n_per_class);
            const std::size_t si = (idx / cfg.n_per_class) % n_snr;
            const std::uint64_t seed = item_seed(cfg.master_seed, idx);
            Signal s = synthesize(cfg.catalog.specs[c], cfg.fs, seed);
            s = add_awgn(s, cfg.snr_grid_db[si], CounterRng::mix(seed, 0xA3));
            const TfMatrix m = apply_transform(cfg.transform, s);
            const RasterImage img = rasterize(m, cfg.raster);

            char name[64];
            std::snprintf(name, sizeof(name), "item_%06zu.tftn", idx);
            const std::string rel = name;
            export_raster(img, ExportFormat::tensor, (fs::path(out_dir) / rel).string());

            ManifestItem item;
            item.tensor_path = rel;
            item.label = c;
            item.snr_db = cfg.snr_grid_db[si];
            item.split = ratio_split(idx % (n_snr * cfg.n_per_class), n_snr * cfg.n_per_class,
                                     cfg.train_ratio, cfg.val_ratio);
            item.sha256 = sha256_file((fs::path(out_dir) / rel).string());
            nlohmann::json src;
            src["waveform"] = labels[c];
            src["seed"] = seed;
            src["snr_db"] = cfg.snr_grid_db[si];
            src["transform"] = nlohmann::json::parse(m.descriptor);
            item.source = src.dump();
            manifest.items[idx] = std::move(item);
        });
    } else {
        manifest.label_map = {"stable", "unstable"};
        manifest.items.resize(cfg.n_cases);
        parallel_for(cfg.n_cases, cfg.n_threads, [&](std::size_t i) {
            CounterRng rng(item_seed(cfg.master_seed, i));
            SurrogateParams p = cfg.surrogate;
            p.clearing_time = rng.uniform(cfg.clearing_lo, cfg.clearing_hi);
            const SurrogateResult r = gen_tsa_surrogate(p, 0);
            const RasterImage img = tsa_case_image(r, p, cfg.imaging, cfg.window_seconds);

            char name[64];
            std::snprintf(name, sizeof(name), "case_%06zu.tftn", i);
            const std::string rel = name;
            export_raster(img, ExportFormat::tensor, (fs::path(out_dir) / rel).string());

            ManifestItem item;
            item.tensor_path = rel;
            item.label = r.stable ? 0 : 1;
            item.split = ratio_split(i, cfg.n_cases, cfg.train_ratio, cfg.val_ratio);
            item.sha256 = sha256_file((fs::path(out_dir) / rel).string());
            nlohmann::json src;
            src["imaging"] = tsa_imaging_name(cfg.imaging);
            src["clearing_time"] = p.clearing_time;
            item.source = src.dump();
            manifest.items[i] = std::move(item);
        });
    }

    write_manifest(manifest, (fs::path(out_dir) / "manifest.json").string());
    return manifest;
}

void write_manifest(const Manifest& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << nlohmann::json(m).dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

Manifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return nlohmann::json::parse(in).get<Manifest>();
}

void validate_manifest(const Manifest& m, const std::string& base_dir) {
    for (const auto& it : m.items) {
        const std::string full = (fs::path(base_dir) / it.tensor_path).string();
        if (!fs::exists(full)) throw std::runtime_error("manifest: missing tensor " + full);
        if (sha256_file(full) != it.sha256)
            throw std::runtime_error("manifest: hash mismatch for " + full);
        if (it.label >= m.label_map.size())
            throw std::runtime_error("manifest: label outside map for " + full);
    }
}

Dataset load_dataset(const Manifest& m, const std::string& base_dir) {
    Dataset d;
    d.label_map = m.label_map;
    for (const auto& it : m.items) {
        DatasetItem item;
        item.image = read_tftn((fs::path(base_dir) / it.tensor_path).string());
        item.label = it.label;
        item.snr_db = it.snr_db;
        item.split = it.split;
        d.items.push_back(std::move(item));
    }
    return d;
}

} // namespace tfc
