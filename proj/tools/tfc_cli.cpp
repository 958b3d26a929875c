// tfc: time-frequency classification toolkit CLI.

#include "tfc/dataset.hpp"
#include "tfc/imaging.hpp"
#include "tfc/pipeline.hpp"
#include "tfc/raster.hpp"
#include "tfc/rng.hpp"
#include "tfc/signal.hpp"
#include "tfc/tsa.hpp"
#include "tfc/waveforms.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
    return j;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

json metrics_to_json(const tfc::Metrics& m) {
    json j;
    j["n_classes"] = m.n_classes;
    j["acc"] = m.acc;
    if (m.tur) j["tur"] = *m.tur;
    if (m.tsr) j["tsr"] = *m.tsr;
    j["per_class_acc"] = m.per_class_acc;
    j["confusion"] = m.confusion;
    json cells = json::array();
    for (const auto& c : m.per_snr)
        cells.push_back({{"label", c.label}, {"snr_db", c.snr_db},
                         {"correct", c.correct}, {"total", c.total}});
    j["per_snr"] = cells;
    return j;
}

tfc::SeriesWindow signal_as_series(const tfc::Signal& s) {
    tfc::SeriesWindow w;
    w.fs = s.fs;
    w.values.reserve(s.size());
    for (const auto& v : s.samples) w.values.push_back(v.real());
    return w;
}

const std::vector<std::string> kMethods = {"stft", "fsst", "wvd", "spwvd",
                                           "cwd", "cwt", "rp", "gadf", "dwt"};

tfc::TfMatrix run_method(const std::string& method, const tfc::TransformConfig& cfg,
                         const tfc::Signal& s) {
    if (method == "rp") return tfc::recurrence_plot(signal_as_series(s), cfg.rp_mode, cfg.rp_eps);
    if (method == "gadf") return tfc::gadf(signal_as_series(s));
    if (method == "dwt") return tfc::dwt_image(signal_as_series(s), cfg.wavelet, cfg.dwt_levels);
    tfc::TransformConfig c = cfg;
    c.kind = tfc::tf_kind_from_name(method);
    return tfc::apply_transform(c, s);
}

// Pipeline config file: either five model paths under "models", or a
// "desk_train" recipe used to train them in-process. Transform blocks are
// optional overrides of the fsst/spwvd/fsst defaults.
struct PipelineBundle {
    tfc::PipelineConfig cfg;
    tfc::Model fsst18, spwvd18;
    tfc::SweepConfig sweep;
};

PipelineBundle load_pipeline_bundle(const std::string& path, bool need_baselines) {
    const json j = load_json(path);
    PipelineBundle b;
    if (j.contains("stage1_transform")) b.cfg.stage1_transform = j["stage1_transform"].get<tfc::TransformConfig>();
    if (j.contains("poly_transform")) b.cfg.poly_transform = j["poly_transform"].get<tfc::TransformConfig>();
    if (j.contains("other_transform")) b.cfg.other_transform = j["other_transform"].get<tfc::TransformConfig>();

    const tfc::Catalog catalog = tfc::waveform_catalog();
    if (j.contains("models")) {
        const auto& m = j["models"];
        const auto base = std::filesystem::path(path).parent_path();
        auto resolve = [&](const std::string& p) {
            std::filesystem::path q(p);
            return q.is_absolute() ? q.string() : (base / q).string();
        };
        b.cfg.stage1_model = tfc::load_model(resolve(m.at("stage1").get<std::string>()));
        b.cfg.poly_model = tfc::load_model(resolve(m.at("poly").get<std::string>()));
        b.cfg.other_model = tfc::load_model(resolve(m.at("other").get<std::string>()));
        if (need_baselines) {
            b.fsst18 = tfc::load_model(resolve(m.at("fsst18").get<std::string>()));
            b.spwvd18 = tfc::load_model(resolve(m.at("spwvd18").get<std::string>()));
        }
        b.cfg.validate_label_maps(catalog);
    } else {
        tfc::DeskTrainConfig dt;
        if (j.contains("desk_train")) {
            const auto& d = j["desk_train"];
            dt.n_per_class = d.value("n_per_class", dt.n_per_class);
            dt.snr_grid_db = d.value("snr_grid_db", dt.snr_grid_db);
            dt.fs = d.value("fs", dt.fs);
            dt.arch = d.value("arch", std::string("mlp")) == "logreg" ? tfc::Arch::logreg : tfc::Arch::mlp;
            dt.hyper.epochs = d.value("epochs", dt.hyper.epochs);
            dt.hyper.lr = d.value("lr", dt.hyper.lr);
            dt.hyper.hidden = d.value("hidden", dt.hyper.hidden);
            dt.n_threads = d.value("n_threads", dt.n_threads);
        }
        dt.seed = j.value("seed", std::uint64_t{1});
        tfc::train_desk_models(b.cfg, b.fsst18, b.spwvd18, catalog, dt);
    }
    if (j.contains("sweep")) {
        const auto& s = j["sweep"];
        b.sweep.snr_grid_db = s.value("snr_grid_db", b.sweep.snr_grid_db);
        b.sweep.n_per_class = s.value("n_per_class", b.sweep.n_per_class);
        b.sweep.fs = s.value("fs", b.sweep.fs);
        b.sweep.n_threads = s.value("n_threads", b.sweep.n_threads);
    }
    b.sweep.master_seed = j.value("seed", std::uint64_t{1});
    return b;
}

json trace_to_json(const tfc::PipelineResult& r) {
    json j;
    j["label"] = r.label;
    json stages = json::array();
    for (const auto& t : r.trace)
        stages.push_back({{"stage", t.stage},
                          {"transform", json::parse(t.transform_descriptor)},
                          {"probabilities", t.probabilities},
                          {"decision", t.decision}});
    j["trace"] = stages;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-frequency signal classification toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize one catalog waveform to a TFSG file");
    std::string synth_label = "LFM", synth_out = "signal.tfsg";
    double synth_fs = 100e3, synth_snr = 1e9;
    std::uint64_t synth_seed = 1;
    synth->add_option("--label", synth_label, "catalog label, e.g. LFM, Costas, P1");
    synth->add_option("--fs", synth_fs, "sample rate, Hz");
    synth->add_option("--seed", synth_seed, "synthesis seed");
    synth->add_option("--snr", synth_snr, "add AWGN at this SNR (dB); omit for clean");
    synth->add_option("--out", synth_out, "output .tfsg path")->required();

    // transform
    auto* transform = app.add_subcommand("transform", "apply a time-frequency or imaging transform");
    std::string tr_method = "fsst", tr_input, tr_out, tr_config;
    transform->add_option("--method", tr_method, "one of: stft fsst wvd spwvd cwd cwt rp gadf dwt");
    transform->add_option("--input", tr_input, "input .tfsg signal")->required();
    transform->add_option("--out", tr_out, "output .tftm matrix")->required();
    transform->add_option("--config", tr_config, "transform parameter JSON");

    // render
    auto* render = app.add_subcommand("render", "rasterize a TFTM matrix to PNG or TFTN tensor");
    std::string rn_input, rn_out, rn_scaling = "db";
    double rn_floor = -60.0;
    std::size_t rn_h = 224, rn_w = 224;
    render->add_option("--input", rn_input, "input .tftm matrix")->required();
    render->add_option("--out", rn_out, "output .png or .tftn path")->required();
    render->add_option("--scaling", rn_scaling, "db or linear");
    render->add_option("--db-floor", rn_floor, "dB floor for db scaling");
    render->add_option("--height", rn_h, "raster height");
    render->add_option("--width", rn_w, "raster width");

    // dataset
    auto* dataset = app.add_subcommand("dataset", "build a TFTN dataset + manifest, or validate one");
    std::string ds_config, ds_out, ds_validate;
    dataset->add_option("--config", ds_config, "build config JSON");
    dataset->add_option("--out", ds_out, "output directory");
    dataset->add_option("--validate", ds_validate, "manifest.json to re-hash instead of building");

    // train
    auto* train_cmd = app.add_subcommand("train", "train a classifier on a built dataset");
    std::string tn_manifest, tn_out = "model.tfcm", tn_arch = "mlp";
    tfc::Hyper tn_hyper;
    std::uint64_t tn_seed = 1;
    train_cmd->add_option("--manifest", tn_manifest, "manifest.json of a built dataset")->required();
    train_cmd->add_option("--arch", tn_arch, "logreg or mlp");
    train_cmd->add_option("--epochs", tn_hyper.epochs, "training epochs");
    train_cmd->add_option("--lr", tn_hyper.lr, "learning rate");
    train_cmd->add_option("--batch", tn_hyper.batch, "minibatch size");
    train_cmd->add_option("--l2", tn_hyper.l2, "L2 penalty");
    train_cmd->add_option("--hidden", tn_hyper.hidden, "hidden layer sizes (mlp)");
    train_cmd->add_option("--seed", tn_seed, "training seed");
    train_cmd->add_option("--out", tn_out, "output model path")->required();

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a model on a dataset split");
    std::string ev_manifest, ev_model, ev_split = "test", ev_out;
    eval_cmd->add_option("--manifest", ev_manifest, "manifest.json")->required();
    eval_cmd->add_option("--model", ev_model, "model file")->required();
    eval_cmd->add_option("--split", ev_split, "train, val, or test");
    eval_cmd->add_option("--out", ev_out, "write metrics JSON here");

    // pipeline run / sweep
    auto* pipeline = app.add_subcommand("pipeline", "multi-stage radar classification");
    pipeline->require_subcommand(1);
    auto* prun = pipeline->add_subcommand("run", "classify one signal through the two-stage pipeline");
    std::string pr_config, pr_input, pr_out;
    prun->add_option("--config", pr_config, "pipeline config JSON")->required();
    prun->add_option("--input", pr_input, "input .tfsg signal")->required();
    prun->add_option("--out", pr_out, "write decision + trace JSON here");
    auto* psweep = pipeline->add_subcommand("sweep", "accuracy-vs-SNR sweep with baselines");
    std::string ps_config, ps_out;
    psweep->add_option("--config", ps_config, "pipeline config JSON")->required();
    psweep->add_option("--out", ps_out, "output directory for CSV + confusion JSON")->required();

    // tsa run
    auto* tsa = app.add_subcommand("tsa", "transient-stability surrogate experiments");
    tsa->require_subcommand(1);
    auto* trun = tsa->add_subcommand("run", "run the surrogate experiment for one imaging method");
    std::string ta_imaging = "gadf", ta_out, ta_config;
    std::size_t ta_cases = 200;
    std::uint64_t ta_seed = 1;
    bool ta_grid = false;
    trun->add_option("--imaging", ta_imaging, "rp, gadf, or dwt");
    trun->add_option("--cases", ta_cases, "number of surrogate cases");
    trun->add_option("--seed", ta_seed, "experiment seed");
    trun->add_option("--config", ta_config, "full experiment config JSON (overrides flags)");
    trun->add_flag("--grid", ta_grid, "also emit the method x condition metric grid");
    trun->add_option("--out", ta_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 1;
    }

    try {
        if (*synth) {
            const tfc::Catalog catalog = tfc::waveform_catalog();
            tfc::Signal s = tfc::synthesize(catalog.by_label(synth_label), synth_fs, synth_seed);
            if (synth_snr < 1e8)
                s = tfc::add_awgn(s, synth_snr, tfc::CounterRng::mix(synth_seed, 0xA3));
            tfc::write_tfsg(s, synth_out);
            std::cout << "wrote " << synth_out << " (" << s.size() << " samples, label "
                      << synth_label << ")\n";
        } else if (*transform) {
            if (std::find(kMethods.begin(), kMethods.end(), tr_method) == kMethods.end()) {
                std::string list;
                for (const auto& m : kMethods) list += (list.empty() ? "" : " ") + m;
                throw std::invalid_argument("unknown method '" + tr_method + "'; expected one of: " + list);
            }
            tfc::TransformConfig cfg;
            if (!tr_config.empty()) cfg = load_json(tr_config).get<tfc::TransformConfig>();
            const tfc::Signal s = tfc::read_tfsg(tr_input);
            const tfc::TfMatrix m = run_method(tr_method, cfg, s);
            tfc::write_tftm(m, tr_out);
            std::cout << "wrote " << tr_out << " (" << m.n_freq << " x " << m.n_time << ")\n";
        } else if (*render) {
            tfc::RasterPolicy policy;
            if (rn_scaling == "db") policy.scaling = tfc::RasterScaling::db;
            else if (rn_scaling == "linear") policy.scaling = tfc::RasterScaling::linear;
            else throw std::invalid_argument("unknown scaling '" + rn_scaling + "'; expected db or linear");
            policy.db_floor = rn_floor;
            policy.height = rn_h;
            policy.width = rn_w;
            const tfc::TfMatrix m = tfc::read_tftm(rn_input);
            const tfc::RasterImage img = tfc::rasterize(m, policy);
            const bool png = rn_out.size() >= 4 && rn_out.substr(rn_out.size() - 4) == ".png";
            tfc::export_raster(img, png ? tfc::ExportFormat::png : tfc::ExportFormat::tensor, rn_out);
            std::cout << "wrote " << rn_out << '\n';
        } else if (*dataset) {
            if (!ds_validate.empty()) {
                const tfc::Manifest m = tfc::read_manifest(ds_validate);
                tfc::validate_manifest(m, std::filesystem::path(ds_validate).parent_path().string());
                std::cout << "manifest ok: " << m.items.size() << " items\n";
            } else {
                if (ds_config.empty() || ds_out.empty())
                    throw std::invalid_argument("dataset: --config and --out are required to build");
                const tfc::DatasetBuildConfig cfg = tfc::parse_build_config(ds_config);
                const tfc::Manifest m = tfc::dataset_build(cfg, ds_out);
                std::cout << "built " << m.items.size() << " items into " << ds_out << '\n';
            }
        } else if (*train_cmd) {
            if (tn_arch != "mlp" && tn_arch != "logreg")
                throw std::invalid_argument("unknown arch '" + tn_arch + "'; expected logreg or mlp");
            const tfc::Manifest m = tfc::read_manifest(tn_manifest);
            const tfc::Dataset d =
                tfc::load_dataset(m, std::filesystem::path(tn_manifest).parent_path().string());
            const tfc::Model model = tfc::train(
                d, tn_arch == "mlp" ? tfc::Arch::mlp : tfc::Arch::logreg, tn_hyper, tn_seed);
            tfc::save_model(model, tn_out);
            std::cout << "wrote " << tn_out << " (final loss " << model.final_loss << ")\n";
        } else if (*eval_cmd) {
            const tfc::Manifest m = tfc::read_manifest(ev_manifest);
            const tfc::Dataset d =
                tfc::load_dataset(m, std::filesystem::path(ev_manifest).parent_path().string());
            const tfc::Model model = tfc::load_model(ev_model);
            const tfc::Metrics metrics = tfc::evaluate(model, d, tfc::split_from_name(ev_split));
            const json j = metrics_to_json(metrics);
            std::cout << "acc " << metrics.acc;
            if (metrics.tur) std::cout << "  tur " << *metrics.tur;
            if (metrics.tsr) std::cout << "  tsr " << *metrics.tsr;
            std::cout << '\n';
            if (!ev_out.empty()) write_json(j, ev_out);
        } else if (*prun) {
            const PipelineBundle b = load_pipeline_bundle(pr_config, false);
            const tfc::Signal s = tfc::read_tfsg(pr_input);
            const tfc::PipelineResult r = tfc::run_radar_pipeline(b.cfg, s);
            std::cout << r.label << '\n';
            if (!pr_out.empty()) write_json(trace_to_json(r), pr_out);
        } else if (*psweep) {
            const PipelineBundle b = load_pipeline_bundle(ps_config, true);
            std::filesystem::create_directories(ps_out);
            const tfc::SweepReport report =
                tfc::snr_sweep(b.cfg, b.fsst18, b.spwvd18, tfc::waveform_catalog(), b.sweep);
            const auto dir = std::filesystem::path(ps_out);
            tfc::write_sweep_csv(report, (dir / "sweep.csv").string());
            tfc::write_sweep_confusions(report, (dir / "confusions.json").string());
            std::cout << "wrote " << (dir / "sweep.csv").string() << " and "
                      << (dir / "confusions.json").string() << '\n';
        } else if (*trun) {
            tfc::TsaExperimentConfig cfg;
            if (!ta_config.empty()) {
                const json j = load_json(ta_config);
                cfg.imaging = tfc::tsa_imaging_from_name(j.value("imaging", "gadf"));
                cfg.n_cases = j.value("n_cases", cfg.n_cases);
                cfg.train_ratio = j.value("train_ratio", cfg.train_ratio);
                cfg.val_ratio = j.value("val_ratio", cfg.val_ratio);
                cfg.window_seconds = j.value("window_seconds", cfg.window_seconds);
                cfg.clearing_lo = j.value("clearing_lo", cfg.clearing_lo);
                cfg.clearing_hi = j.value("clearing_hi", cfg.clearing_hi);
                cfg.hyper.epochs = j.value("epochs", cfg.hyper.epochs);
                cfg.n_threads = j.value("n_threads", cfg.n_threads);
                ta_seed = j.value("seed", ta_seed);
            } else {
                cfg.imaging = tfc::tsa_imaging_from_name(ta_imaging == "dwt" ? "dwtimg" : ta_imaging);
                cfg.n_cases = ta_cases;
            }
            std::filesystem::create_directories(ta_out);
            const auto dir = std::filesystem::path(ta_out);
            const tfc::Metrics metrics = tfc::tsa_experiment(cfg, ta_seed);
            write_json(metrics_to_json(metrics), (dir / "metrics.json").string());
            std::cout << "acc " << metrics.acc << "  tur " << (metrics.tur ? *metrics.tur : 0.0)
                      << "  tsr " << (metrics.tsr ? *metrics.tsr : 0.0) << '\n';
            if (ta_grid)
                write_json(tfc::tsa_condition_grid(cfg, ta_seed), (dir / "condition_grid.json").string());
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
