#pragma once

#include "tfc/classifier.hpp"
#include "tfc/imaging.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <vector>

namespace tfc {

/// Single-machine-infinite-bus swing-equation surrogate. The fault hits at
/// t = 0 with reduced transfer capacity and clears at `clearing_time`.
struct SurrogateParams {
    double clearing_time = 0.2; // s
    double damping = 0.02;      // D
    double inertia = 0.05;      // M, s^2/rad
    double horizon = 2.0;       // s
    double pm = 0.8;            // mechanical power, p.u.
    double pmax_pre = 1.5;      // transfer capacity pre/post fault
    double pmax_fault = 0.3;    // during fault
    double pmax_post = 1.5;
    double f0 = 60.0;           // Hz
    double fs = 1000.0;         // sample rate of the emitted channels
};

struct SurrogateResult {
    SeriesWindow vm, va, vf; // full-horizon traces at params.fs
    std::vector<double> delta;
    std::vector<double> delta_dot;
    bool stable = false;
};

/// RK4 integration of M*dd(delta) = Pm - Pmax(t)*sin(delta) - D*d(delta);
/// stable iff |delta| stays below pi over the horizon. The seed is accepted
/// for interface symmetry with the other generators; the surrogate itself is
/// deterministic in its parameters.
SurrogateResult gen_tsa_surrogate(const SurrogateParams& params, std::uint64_t seed = 0);

enum class TsaImaging { rp, gadf, dwtimg };
std::string tsa_imaging_name(TsaImaging m);
TsaImaging tsa_imaging_from_name(const std::string& name);

struct TsaExperimentConfig {
    TsaImaging imaging = TsaImaging::gadf;
    std::size_t n_cases = 200;
    double train_ratio = 0.7;
    double val_ratio = 0.15; // remainder is test
    double window_seconds = 0.1;
    double clearing_lo = 0.05;
    double clearing_hi = 0.5;
    SurrogateParams base; // clearing_time overridden per case
    Hyper hyper;
    std::size_t n_threads = 1;
};

/// Builds the 3-channel (VM, VA, VF) image of the 0.1 s post-clearing window
/// for one surrogate case.
RasterImage tsa_case_image(const SurrogateResult& r, const SurrogateParams& params,
                           TsaImaging imaging, double window_seconds);

/// Generates surrogate cases with seeded clearing times, images them, trains
/// the desk MLP, and reports test metrics (ACC/TUR/TSR). Throws
/// "resample: one class absent" on a degenerate single-class draw.
Metrics tsa_experiment(const TsaExperimentConfig& cfg, std::uint64_t seed);

/// Method x condition metric grid (each imaging method under the base and a
/// loaded condition); mirrors a before/after load-integration table.
nlohmann::json tsa_condition_grid(const TsaExperimentConfig& cfg, std::uint64_t seed);

} // namespace tfc
