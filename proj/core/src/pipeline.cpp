#include "tfc/pipeline.hpp"

#include "tfc/parallel.hpp"
#include "tfc/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace tfc {

TfMatrix apply_transform(const TransformConfig& cfg, const Signal& s) {
    const bool quadratic = cfg.kind == TfKind::wvd || cfg.kind == TfKind::spwvd || cfg.kind == TfKind::cwd;
    const Signal* in = &s;
    Signal analytic;
    if (quadratic && !s.is_complex) {
        analytic = analytic_signal(s);
        in = &analytic;
    }
    switch (cfg.kind) {
        case TfKind::stft:
            return stft(*in, cfg.window, cfg.hop, cfg.nfft);
        case TfKind::fsst: {
            WindowSpec w = cfg.window;
            if (w.kind != WindowKind::gauss) w = WindowSpec::gauss(w.length);
            return fsst(*in, w, cfg.nfft, cfg.fsst_threshold);
        }
        case TfKind::wvd:
            return wvd(*in);
        case TfKind::spwvd: {
            std::size_t lh = cfg.h_lag_length;
            if (lh == 0) lh = (in->size() / 4) * 2 + 1;
            if (lh % 2 == 0) lh += 1;
            return spwvd(*in, cfg.g_time, WindowSpec::hann(lh));
        }
        case TfKind::cwd:
            return cwd(*in, cfg.sigma);
        case TfKind::cwt:
            return cwt(*in, cfg.n_scales, cfg.f_min_frac * in->fs, cfg.f_max_frac * in->fs);
        default:
            throw std::invalid_argument("apply_transform: kind " + tf_kind_name(cfg.kind) +
                                        " is an imaging method, not a signal transform");
    }
}

void to_json(nlohmann::json& j, const TransformConfig& cfg) {
    j = nlohmann::json{
        {"method", tf_kind_name(cfg.kind)},
        {"window", {{"kind", window_kind_name(cfg.window.kind)}, {"length", cfg.window.length}, {"shape", cfg.window.shape}}},
        {"hop", cfg.hop},
        {"nfft", cfg.nfft},
        {"fsst_threshold", cfg.fsst_threshold},
        {"g_time_length", cfg.g_time.length},
        {"h_lag_length", cfg.h_lag_length},
        {"sigma", cfg.sigma},
        {"n_scales", cfg.n_scales},
        {"f_min_frac", cfg.f_min_frac},
        {"f_max_frac", cfg.f_max_frac},
    };
}

void from_json(const nlohmann::json& j, TransformConfig& cfg) {
    cfg.kind = tf_kind_from_name(j.at("method").get<std::string>());
    if (j.contains("window")) {
        cfg.window.kind = window_kind_from_name(j["window"].value("kind", "gauss"));
        cfg.window.length = j["window"].value("length", std::size_t{128});
        cfg.window.shape = j["window"].value("shape", 0.0);
    }
    cfg.hop = j.value("hop", std::size_t{32});
    cfg.nfft = j.value("nfft", std::size_t{256});
    cfg.fsst_threshold = j.value("fsst_threshold", 1e-4);
    cfg.g_time = WindowSpec::hann(j.value("g_time_length", std::size_t{33}));
    cfg.h_lag_length = j.value("h_lag_length", std::size_t{0});
    cfg.sigma = j.value("sigma", 1.0);
    cfg.n_scales = j.value("n_scales", std::size_t{128});
    cfg.f_min_frac = j.value("f_min_frac", 0.01);
    cfg.f_max_frac = j.value("f_max_frac", 0.5);
}

PipelineConfig::PipelineConfig() {
    stage1_transform.kind = TfKind::fsst;
    poly_transform.kind = TfKind::spwvd;
    other_transform.kind = TfKind::fsst;
}

void PipelineConfig::validate_label_maps(const Catalog& catalog) const {
    if (stage1_model.label_map.size() != 2)
        throw std::invalid_argument("pipeline: stage-1 model must be binary");
    if (std::find(stage1_model.label_map.begin(), stage1_model.label_map.end(), positive_label) ==
        stage1_model.label_map.end())
        throw std::invalid_argument("pipeline: stage-1 model lacks label " + positive_label);
    if (poly_model.label_map.size() != 4)
        throw std::invalid_argument("pipeline: polyphase branch model must have 4 classes");
    const auto cat_labels = catalog.labels();
    if (other_model.label_map.size() != cat_labels.size() - 4)
        throw std::invalid_argument("pipeline: other branch must cover the remaining classes");
    std::set<std::string> uni(poly_model.label_map.begin(), poly_model.label_map.end());
    uni.insert(other_model.label_map.begin(), other_model.label_map.end());
    for (const auto& l : cat_labels)
        if (!uni.count(l))
            throw std::invalid_argument("pipeline: branches do not cover catalog label " + l);
    if (uni.size() != cat_labels.size())
        throw std::invalid_argument("pipeline: branch label maps overlap or exceed the catalog");
}

namespace {

StageTrace make_trace(const std::string& stage, const TfMatrix& m,
                      const std::vector<double>& probs, const std::string& decision) {
    return {stage, m.descriptor, probs, decision};
}

} // namespace

PipelineResult run_radar_pipeline(const PipelineConfig& cfg, const Signal& s) {
    s.validate();
    PipelineResult result;

    const TfMatrix m1 = apply_transform(cfg.stage1_transform, s);
    const RasterImage r1 = rasterize(m1, cfg.stage1_raster);
    const std::vector<double> p1 = predict(cfg.stage1_model, r1);
    const std::size_t arg1 = static_cast<std::size_t>(
        std::max_element(p1.begin(), p1.end()) - p1.begin());
    const bool poly = cfg.stage1_model.label_map[arg1] == cfg.positive_label;
    result.trace.push_back(make_trace("stage1", m1, p1, cfg.stage1_model.label_map[arg1]));

    // Only the taken branch computes its transform.
    const TransformConfig& tcfg = poly ? cfg.poly_transform : cfg.other_transform;
    const RasterPolicy& rpol = poly ? cfg.poly_raster : cfg.other_raster;
    const Model& model = poly ? cfg.poly_model : cfg.other_model;
    const TfMatrix m2 = apply_transform(tcfg, s);
    const RasterImage r2 = rasterize(m2, rpol);
    const std::vector<double> p2 = predict(model, r2);
    const std::size_t arg2 = static_cast<std::size_t>(
        std::max_element(p2.begin(), p2.end()) - p2.begin());
    result.label = model.label_map[arg2];
    result.trace.push_back(
        make_trace(poly ? "branch_poly" : "branch_other", m2, p2, result.label));
    return result;
}

void train_desk_models(PipelineConfig& cfg, Model& fsst18, Model& spwvd18,
                       const Catalog& catalog, const DeskTrainConfig& dt) {
    if (dt.n_per_class < 1) throw std::invalid_argument("train_desk_models: n_per_class must be >= 1");
    if (dt.snr_grid_db.empty()) throw std::invalid_argument("train_desk_models: empty snr grid");

    const std::vector<std::string> labels = catalog.labels();
    const std::size_t n_classes = labels.size();
    const std::size_t n_snr = dt.snr_grid_db.size();
    const std::size_t n_items = n_classes * n_snr * dt.n_per_class;

    const std::set<std::string> poly_labels = {"P1", "P2", "P3", "P4"};
    std::vector<std::string> other_labels;
    for (const auto& l : labels)
        if (!poly_labels.count(l)) other_labels.push_back(l);

    std::vector<RasterImage> fsst_imgs(n_items), spwvd_imgs(n_items);
    parallel_for(n_items, dt.n_threads, [&](std::size_t idx) {
        const std::size_t c = idx / (n_snr * dt.n_per_class);
        const std::size_t si = (idx / dt.n_per_class) % n_snr;
        const std::uint64_t seed = item_seed(CounterRng::mix(dt.seed, 0xDE5C), idx);
        Signal s = synthesize(catalog.specs[c], dt.fs, seed);
        s = add_awgn(s, dt.snr_grid_db[si], CounterRng::mix(seed, 0xA3));
        fsst_imgs[idx] = rasterize(apply_transform(cfg.stage1_transform, s), cfg.stage1_raster);
        spwvd_imgs[idx] = rasterize(apply_transform(cfg.poly_transform, s), cfg.poly_raster);
    });

    Dataset ds18f, ds18s, ds_bin, ds_poly, ds_other;
    ds18f.label_map = labels;
    ds18s.label_map = labels;
    ds_bin.label_map = {cfg.positive_label, "other"};
    ds_poly.label_map = {"P1", "P2", "P3", "P4"};
    ds_other.label_map = other_labels;
    auto index_of = [](const std::vector<std::string>& map, const std::string& l) {
        return static_cast<std::size_t>(std::find(map.begin(), map.end(), l) - map.begin());
    };
    for (std::size_t idx = 0; idx < n_items; ++idx) {
        const std::size_t c = idx / (n_snr * dt.n_per_class);
        const std::size_t si = (idx / dt.n_per_class) % n_snr;
        const std::string& label = labels[c];
        const bool poly = poly_labels.count(label) != 0;
        const double snr = dt.snr_grid_db[si];
        ds18f.items.push_back({fsst_imgs[idx], c, snr, Split::train});
        ds18s.items.push_back({spwvd_imgs[idx], c, snr, Split::train});
        // The positive class covers 4 of 18 labels; replicate its items so the
        // binary router trains on a roughly balanced set.
        const std::size_t copies = poly ? (n_classes - poly_labels.size()) / poly_labels.size() : 1;
        for (std::size_t r = 0; r < copies; ++r)
            ds_bin.items.push_back({fsst_imgs[idx], poly ? std::size_t{0} : std::size_t{1}, snr, Split::train});
        if (poly)
            ds_poly.items.push_back({spwvd_imgs[idx], index_of(ds_poly.label_map, label), snr, Split::train});
        else
            ds_other.items.push_back({fsst_imgs[idx], index_of(other_labels, label), snr, Split::train});
    }

    cfg.stage1_model = train(ds_bin, dt.arch, dt.hyper, CounterRng::mix(dt.seed, 0xB1));
    cfg.poly_model = train(ds_poly, dt.arch, dt.hyper, CounterRng::mix(dt.seed, 0xB2));
    cfg.other_model = train(ds_other, dt.arch, dt.hyper, CounterRng::mix(dt.seed, 0xB3));
    fsst18 = train(ds18f, dt.arch, dt.hyper, CounterRng::mix(dt.seed, 0xB4));
    spwvd18 = train(ds18s, dt.arch, dt.hyper, CounterRng::mix(dt.seed, 0xB5));
    cfg.validate_label_maps(catalog);
}

SweepReport snr_sweep(const PipelineConfig& cfg, const Model& fsst18, const Model& spwvd18,
                      const Catalog& catalog, const SweepConfig& sweep) {
    if (sweep.n_per_class < 1) throw std::invalid_argument("snr_sweep: n_per_class must be >= 1");
    cfg.validate_label_maps(catalog);

    const std::vector<std::string> labels = catalog.labels();
    const std::size_t n_classes = labels.size();
    const std::size_t n_snr = sweep.snr_grid_db.size();

    SweepReport report;
    report.snr_grid_db = sweep.snr_grid_db;
    report.class_labels = labels;
    for (const char* method : {"pipeline", "fsst18", "spwvd18"})
        report.accuracy[method] = std::vector<std::vector<double>>(
            n_classes, std::vector<double>(n_snr, 0.0));
    report.confusion_per_snr.assign(n_snr, std::vector<std::size_t>(n_classes * n_classes, 0));

    auto label_index = [&](const std::string& l) {
        return static_cast<std::size_t>(
            std::find(labels.begin(), labels.end(), l) - labels.begin());
    };

    struct ItemOutcome {
        std::size_t pipeline_pred, fsst_pred, spwvd_pred;
    };
    const std::size_t n_items = n_classes * n_snr * sweep.n_per_class;
    std::vector<ItemOutcome> outcomes(n_items);

    parallel_for(n_items, sweep.n_threads, [&](std::size_t idx) {
        const std::size_t c = idx / (n_snr * sweep.n_per_class);
        const std::size_t si = (idx / sweep.n_per_class) % n_snr;
        const std::uint64_t seed = item_seed(sweep.master_seed, idx);
        Signal s = synthesize(catalog.specs[c], sweep.fs, seed);
        s = add_awgn(s, sweep.snr_grid_db[si], CounterRng::mix(seed, 0xA3));

        ItemOutcome out;
        out.pipeline_pred = label_index(run_radar_pipeline(cfg, s).label);

        const TfMatrix mf = apply_transform(cfg.stage1_transform, s);
        const auto pf = predict(fsst18, rasterize(mf, cfg.stage1_raster));
        out.fsst_pred = label_index(
            fsst18.label_map[static_cast<std::size_t>(std::max_element(pf.begin(), pf.end()) - pf.begin())]);

        const TfMatrix ms = apply_transform(cfg.poly_transform, s);
        const auto ps = predict(spwvd18, rasterize(ms, cfg.poly_raster));
        out.spwvd_pred = label_index(
            spwvd18.label_map[static_cast<std::size_t>(std::max_element(ps.begin(), ps.end()) - ps.begin())]);
        outcomes[idx] = out;
    });

    for (std::size_t idx = 0; idx < n_items; ++idx) {
        const std::size_t c = idx / (n_snr * sweep.n_per_class);
        const std::size_t si = (idx / sweep.n_per_class) % n_snr;
        const auto& out = outcomes[idx];
        report.accuracy["pipeline"][c][si] += out.pipeline_pred == c ? 1.0 : 0.0;
        report.accuracy["fsst18"][c][si] += out.fsst_pred == c ? 1.0 : 0.0;
        report.accuracy["spwvd18"][c][si] += out.spwvd_pred == c ? 1.0 : 0.0;
        report.confusion_per_snr[si][c * n_classes + out.pipeline_pred] += 1;
    }
    for (auto& [method, acc] : report.accuracy) {
        auto& overall = report.overall[method];
        overall.assign(n_snr, 0.0);
        for (std::size_t c = 0; c < n_classes; ++c)
            for (std::size_t si = 0; si < n_snr; ++si) {
                acc[c][si] /= static_cast<double>(sweep.n_per_class);
                overall[si] += acc[c][si] / static_cast<double>(n_classes);
            }
    }
    return report;
}

void write_sweep_csv(const SweepReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "class,snr_db,accuracy,method\n";
    for (const auto& [method, acc] : report.accuracy)
        for (std::size_t c = 0; c < report.class_labels.size(); ++c)
            for (std::size_t si = 0; si < report.snr_grid_db.size(); ++si)
                out << report.class_labels[c] << ',' << report.snr_grid_db[si] << ','
                    << acc[c][si] << ',' << method << '\n';
    for (const auto& [method, overall] : report.overall)
        for (std::size_t si = 0; si < report.snr_grid_db.size(); ++si)
            out << "OVERALL," << report.snr_grid_db[si] << ',' << overall[si] << ',' << method << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_sweep_confusions(const SweepReport& report, const std::string& path) {
    nlohmann::json j;
    j["labels"] = report.class_labels;
    j["snr_grid_db"] = report.snr_grid_db;
    j["confusion_per_snr"] = report.confusion_per_snr;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace tfc
