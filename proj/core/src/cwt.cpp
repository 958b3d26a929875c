#include "tfc/transforms.hpp"

#include "tfc/fft.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace tfc {

// Analytic Morlet, omega0 = 6. Evaluated in the frequency domain with unit
// peak response, so a tone lands exactly on the scale row whose
// pseudo-frequency matches it.
TfMatrix cwt(const Signal& s, std::size_t n_scales, double f_min, double f_max) {
    s.validate();
    if (n_scales < 2) throw std::invalid_argument("cwt: n_scales must be >= 2");
    if (!(0.0 < f_min && f_min < f_max && f_max <= s.fs / 2.0))
        throw std::invalid_argument("cwt: need 0 < f_min < f_max <= fs/2");

    const std::size_t N = s.size();
    const double omega0 = 6.0;
    const std::vector<cplx> X = fft(s.samples);

    TfMatrix M;
    M.kind = TfKind::cwt;
    M.is_complex = true;
    M.n_freq = n_scales;
    M.n_time = N;
    M.values.assign(n_scales * N, cplx(0.0, 0.0));
    M.f_axis.resize(n_scales);

    const double log_lo = std::log(f_min);
    const double log_hi = std::log(f_max);
    std::vector<cplx> row(N);
    for (std::size_t i = 0; i < n_scales; ++i) {
        const double fi = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                                static_cast<double>(n_scales - 1));
        M.f_axis[i] = fi;
        const double scale = omega0 * s.fs / (2.0 * M_PI * fi); // samples per wavelet unit
        for (std::size_t k = 0; k < N; ++k) {
            // Positive-frequency half only; the analytic Morlet is one-sided.
            if (k == 0 || k > N / 2) {
                row[k] = 0.0;
                continue;
            }
            const double w = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(N);
            const double d = scale * w - omega0;
            row[k] = X[k] * std::exp(-0.5 * d * d);
        }
        fft_inplace(row, true);
        for (std::size_t n = 0; n < N; ++n) M.at(i, n) = row[n];
    }

    M.t_axis.resize(N);
    for (std::size_t n = 0; n < N; ++n) M.t_axis[n] = static_cast<double>(n) / s.fs;
    // Cone of influence at the lowest frequency: ~ scale samples each side.
    const std::size_t coi = std::min(N / 2, static_cast<std::size_t>(omega0 * s.fs / (2.0 * M_PI * f_min)));
    M.interior_begin = coi;
    M.interior_end = N > coi ? N - coi : 0;

    nlohmann::json desc;
    desc["transform"] = "cwt";
    desc["n_scales"] = n_scales;
    desc["f_min"] = f_min;
    desc["f_max"] = f_max;
    desc["omega0"] = omega0;
    desc["fs"] = s.fs;
    desc["n_samples"] = N;
    M.descriptor = desc.dump();
    return M;
}

} // namespace tfc
