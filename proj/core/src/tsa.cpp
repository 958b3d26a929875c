#include "tfc/tsa.hpp"

#include "tfc/parallel.hpp"
#include "tfc/rng.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace tfc {

namespace {

struct State {
    double delta;
    double omega; // d(delta)/dt
};

State deriv(const State& s, double pm, double pmax, double damping, double inertia) {
    return {s.omega, (pm - pmax * std::sin(s.delta) - damping * s.omega) / inertia};
}

State rk4_step(const State& s, double h, double pm, double pmax, double damping, double inertia) {
    const State k1 = deriv(s, pm, pmax, damping, inertia);
    const State k2 = deriv({s.delta + 0.5 * h * k1.delta, s.omega + 0.5 * h * k1.omega}, pm, pmax, damping, inertia);
    const State k3 = deriv({s.delta + 0.5 * h * k2.delta, s.omega + 0.5 * h * k2.omega}, pm, pmax, damping, inertia);
    const State k4 = deriv({s.delta + h * k3.delta, s.omega + h * k3.omega}, pm, pmax, damping, inertia);
    return {s.delta + h / 6.0 * (k1.delta + 2.0 * k2.delta + 2.0 * k3.delta + k4.delta),
            s.omega + h / 6.0 * (k1.omega + 2.0 * k2.omega + 2.0 * k3.omega + k4.omega)};
}

} // namespace

SurrogateResult gen_tsa_surrogate(const SurrogateParams& p, std::uint64_t /*seed*/) {
    if (!(p.horizon > p.clearing_time) || p.clearing_time < 0.0)
        throw std::invalid_argument("tsa surrogate: need horizon > clearing_time >= 0");
    if (!(p.inertia > 0.0) || !(p.fs > 0.0))
        throw std::invalid_argument("tsa surrogate: inertia and fs must be > 0");
    if (p.pm >= p.pmax_pre)
        throw std::invalid_argument("tsa surrogate: no pre-fault equilibrium (pm >= pmax_pre)");

    const double h = 1.0 / p.fs;
    const std::size_t n = static_cast<std::size_t>(std::llround(p.horizon * p.fs));

    SurrogateResult r;
    r.delta.resize(n);
    r.delta_dot.resize(n);

    State s{std::asin(p.pm / p.pmax_pre), 0.0};
    bool stable = true;
    for (std::size_t i = 0; i < n; ++i) {
        r.delta[i] = s.delta;
        r.delta_dot[i] = s.omega;
        if (!std::isfinite(s.delta) || !std::isfinite(s.omega))
            throw std::runtime_error("tsa surrogate: integration diverged");
        if (std::abs(s.delta) >= M_PI) stable = false;
        const double t = static_cast<double>(i) * h;
        const double pmax = t < p.clearing_time ? p.pmax_fault : p.pmax_post;
        s = rk4_step(s, h, p.pm, pmax, p.damping, p.inertia);
    }
    r.stable = stable;

    auto make_channel = [&](SeriesChannel ch) {
        SeriesWindow w;
        w.fs = p.fs;
        w.channel = ch;
        w.t0 = 0.0;
        w.values.resize(n);
        return w;
    };
    r.vm = make_channel(SeriesChannel::VM);
    r.va = make_channel(SeriesChannel::VA);
    r.vf = make_channel(SeriesChannel::VF);
    const double E = 1.0, V = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        r.vm.values[i] = std::sqrt(E * E + V * V + 2.0 * E * V * std::cos(r.delta[i])) / 2.0;
        r.va.values[i] = r.delta[i] / 2.0;
        r.vf.values[i] = p.f0 + r.delta_dot[i] / (2.0 * M_PI);
    }
    return r;
}

std::string tsa_imaging_name(TsaImaging m) {
    switch (m) {
        case TsaImaging::rp: return "rp";
        case TsaImaging::gadf: return "gadf";
        case TsaImaging::dwtimg: return "dwtimg";
    }
    throw std::logic_error("unreachable imaging kind");
}

TsaImaging tsa_imaging_from_name(const std::string& name) {
    if (name == "rp") return TsaImaging::rp;
    if (name == "gadf") return TsaImaging::gadf;
    if (name == "dwtimg") return TsaImaging::dwtimg;
    throw std::invalid_argument("unknown imaging method: " + name);
}

RasterImage tsa_case_image(const SurrogateResult& r, const SurrogateParams& params,
                           TsaImaging imaging, double window_seconds) {
    const std::size_t start = static_cast<std::size_t>(std::llround(params.clearing_time * params.fs));
    const std::size_t len = static_cast<std::size_t>(std::llround(window_seconds * params.fs));
    if (start + len > r.delta.size())
        throw std::invalid_argument("tsa window extends past the simulated horizon");

    auto slice = [&](const SeriesWindow& full) {
        SeriesWindow w = full;
        w.values.assign(full.values.begin() + static_cast<std::ptrdiff_t>(start),
                        full.values.begin() + static_cast<std::ptrdiff_t>(start + len));
        w.t0 = params.clearing_time;
        return w;
    };

    auto image_one = [&](const SeriesWindow& w) {
        TfMatrix m;
        switch (imaging) {
            case TsaImaging::rp: m = recurrence_plot(w, RpMode::distance); break;
            case TsaImaging::gadf: m = gadf(w); break;
            case TsaImaging::dwtimg: m = dwt_image(w, WaveletKind::haar, 2); break;
        }
        RasterPolicy policy;
        policy.scaling = RasterScaling::linear;
        policy.height = len;
        policy.width = len;
        return rasterize(m, policy);
    };

    return stack_channels(image_one(slice(r.vm)), image_one(slice(r.va)), image_one(slice(r.vf)));
}

namespace {

Dataset build_tsa_dataset(const TsaExperimentConfig& cfg, std::uint64_t seed) {
    if (cfg.n_cases < 20) throw std::invalid_argument("tsa_experiment: n_cases must be >= 20");
    Dataset d;
    d.label_map = {"stable", "unstable"};
    d.items.resize(cfg.n_cases);

    parallel_for(cfg.n_cases, cfg.n_threads, [&](std::size_t i) {
        CounterRng rng(item_seed(seed, i));
        SurrogateParams p = cfg.base;
        p.clearing_time = rng.uniform(cfg.clearing_lo, cfg.clearing_hi);
        const SurrogateResult r = gen_tsa_surrogate(p, 0);
        DatasetItem item;
        item.image = tsa_case_image(r, p, cfg.imaging, cfg.window_seconds);
        item.label = r.stable ? 0 : 1;
        const double u = static_cast<double>(i) / static_cast<double>(cfg.n_cases);
        item.split = u < cfg.train_ratio              ? Split::train
                     : u < cfg.train_ratio + cfg.val_ratio ? Split::val
                                                           : Split::test;
        d.items[i] = std::move(item);
    });

    bool has[2] = {false, false};
    for (const auto& it : d.items) has[it.label] = true;
    if (!has[0] || !has[1]) throw std::runtime_error("tsa_experiment: resample: one class absent");
    return d;
}

} // namespace

Metrics tsa_experiment(const TsaExperimentConfig& cfg, std::uint64_t seed) {
    const Dataset d = build_tsa_dataset(cfg, seed);
    const Model m = train(d, Arch::mlp, cfg.hyper, item_seed(seed, 0xDEC0DEULL));
    return evaluate(m, d, Split::test);
}

nlohmann::json tsa_condition_grid(const TsaExperimentConfig& cfg, std::uint64_t seed) {
    nlohmann::json grid = nlohmann::json::array();
    for (const TsaImaging method : {TsaImaging::rp, TsaImaging::gadf, TsaImaging::dwtimg}) {
        for (const bool loaded : {false, true}) {
            TsaExperimentConfig c = cfg;
            c.imaging = method;
            // Loaded condition: heavier mechanical loading of the surrogate
            // machine, standing in for extra charging-station demand.
            if (loaded) c.base.pm = cfg.base.pm * 1.15;
            const Metrics m = tsa_experiment(c, seed);
            nlohmann::json row;
            row["method"] = tsa_imaging_name(method);
            row["condition"] = loaded ? "after" : "before";
            row["acc"] = m.acc;
            row["tur"] = m.tur ? nlohmann::json(*m.tur) : nlohmann::json();
            row["tsr"] = m.tsr ? nlohmann::json(*m.tsr) : nlohmann::json();
            grid.push_back(std::move(row));
        }
    }
    return grid;
}

} // namespace tfc
