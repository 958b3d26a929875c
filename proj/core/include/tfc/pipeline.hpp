#pragma once

#include "tfc/classifier.hpp"
#include "tfc/imaging.hpp"
#include "tfc/transforms.hpp"
#include "tfc/waveforms.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <string>
#include <vector>

namespace tfc {

/// Parameter record for one transform invocation; only the fields relevant
/// to `kind` are used. Defaults follow the engine-wide analysis defaults.
struct TransformConfig {
    TfKind kind = TfKind::fsst;
    WindowSpec window = WindowSpec::gauss(128);   // stft / fsst analysis window
    std::size_t hop = 32;                         // stft
    std::size_t nfft = 256;                       // stft / fsst
    double fsst_threshold = 1e-4;
    WindowSpec g_time = WindowSpec::hann(33);     // spwvd time smoothing
    std::size_t h_lag_length = 0;                 // spwvd lag window; 0 = N/4*2+1
    double sigma = 1.0;                           // cwd
    std::size_t n_scales = 128;                   // cwt
    double f_min_frac = 0.01, f_max_frac = 0.5;   // cwt band as fraction of fs
    RpMode rp_mode = RpMode::distance;            // rp
    double rp_eps = 0.1;
    WaveletKind wavelet = WaveletKind::haar;      // dwt image
    std::size_t dwt_levels = 2;
};

/// Dispatches on kind. Real-sample signals passed to the quadratic
/// distributions (wvd/spwvd/cwd) are routed through analytic_signal first.
TfMatrix apply_transform(const TransformConfig& cfg, const Signal& s);

void to_json(nlohmann::json& j, const TransformConfig& cfg);
void from_json(const nlohmann::json& j, TransformConfig& cfg);

/// Fig.-style multi-stage routing: stage 1 classifies FSST images into the
/// binary {polyphase, other}; polyphase hits go to a 4-class SPWVD branch,
/// everything else to a 14-class FSST branch.
struct PipelineConfig {
    TransformConfig stage1_transform;                 // default fsst
    TransformConfig poly_transform;                   // default spwvd
    TransformConfig other_transform;                  // default fsst
    RasterPolicy stage1_raster, poly_raster, other_raster;
    Model stage1_model; // binary, labels {"P1-P4", "other"}
    Model poly_model;   // {"P1","P2","P3","P4"}
    Model other_model;  // the remaining 14 classes
    std::string positive_label = "P1-P4";

    PipelineConfig();

    /// Stage-1 map must be binary and contain positive_label; branch maps
    /// must partition the catalog's 18 labels into 4 + 14. Throws on any
    /// inconsistency (load-time check, not per signal).
    void validate_label_maps(const Catalog& catalog) const;
};

struct StageTrace {
    std::string stage; // "stage1", "branch_poly", "branch_other"
    std::string transform_descriptor;
    std::vector<double> probabilities;
    std::string decision;
};

struct PipelineResult {
    std::string label;
    std::vector<StageTrace> trace;
};

PipelineResult run_radar_pipeline(const PipelineConfig& cfg, const Signal& s);

/// Desk-scale training set recipe for the pipeline's three models and the
/// two single-stage 18-class baselines.
struct DeskTrainConfig {
    std::size_t n_per_class = 8;
    std::vector<double> snr_grid_db = {0.0, 10.0};
    double fs = 100e3;
    Arch arch = Arch::mlp;
    Hyper hyper;
    std::uint64_t seed = 1;
    std::size_t n_threads = 1;
};

/// Synthesizes one desk training corpus and trains all five models in place:
/// cfg's stage-1 binary, 4-class polyphase, and 14-class branch models, plus
/// the fsst/spwvd 18-class baselines. Deterministic in (catalog, config).
void train_desk_models(PipelineConfig& cfg, Model& fsst18, Model& spwvd18,
                       const Catalog& catalog, const DeskTrainConfig& dt);

struct SweepConfig {
    std::vector<double> snr_grid_db = {-14, -12, -10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10, 12};
    std::size_t n_per_class = 10;
    std::uint64_t master_seed = 1;
    double fs = 100e3;
    std::size_t n_threads = 1;
};

struct SweepReport {
    std::vector<double> snr_grid_db;
    std::vector<std::string> class_labels;
    // method -> [class][snr] accuracy; methods: "pipeline", "fsst18", "spwvd18"
    std::map<std::string, std::vector<std::vector<double>>> accuracy;
    std::map<std::string, std::vector<double>> overall; // method -> per-snr average
    // pipeline confusion matrix per snr, row-major K x K
    std::vector<std::vector<std::size_t>> confusion_per_snr;
};

/// Runs the pipeline and both single-stage 18-class baselines over fresh
/// item-seeded signals at every (class, snr) cell.
SweepReport snr_sweep(const PipelineConfig& cfg, const Model& fsst18, const Model& spwvd18,
                      const Catalog& catalog, const SweepConfig& sweep);

void write_sweep_csv(const SweepReport& report, const std::string& path);
void write_sweep_confusions(const SweepReport& report, const std::string& path);

} // namespace tfc
