#include "tfc/imaging.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tfc {

void SeriesWindow::validate() const {
    if (values.size() < 4) throw std::invalid_argument("series window: length must be >= 4");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("series window: non-finite value");
    if (!(fs > 0.0)) throw std::invalid_argument("series window: fs must be > 0");
}

namespace {

TfMatrix square_matrix(TfKind kind, std::size_t n, nlohmann::json desc) {
    TfMatrix m;
    m.kind = kind;
    m.is_complex = false;
    m.n_freq = n;
    m.n_time = n;
    m.values.assign(n * n, cplx(0.0, 0.0));
    m.t_axis.resize(n);
    m.f_axis.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.t_axis[i] = static_cast<double>(i); // unitless sample indices
        m.f_axis[i] = static_cast<double>(i);
    }
    m.interior_begin = 0;
    m.interior_end = n;
    m.descriptor = desc.dump();
    return m;
}

} // namespace

TfMatrix recurrence_plot(const SeriesWindow& w, RpMode mode, double eps) {
    w.validate();
    if (w.values.size() < 2) throw std::invalid_argument("recurrence_plot: length must be >= 2");
    if (mode == RpMode::thresholded && !(eps > 0.0))
        throw std::invalid_argument("recurrence_plot: eps must be > 0 in thresholded mode");
    const std::size_t n = w.values.size();
    nlohmann::json desc;
    desc["transform"] = "rp";
    desc["mode"] = mode == RpMode::distance ? "distance" : "thresholded";
    desc["eps"] = eps;
    TfMatrix m = square_matrix(TfKind::rp, n, std::move(desc));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double d = std::abs(w.values[i] - w.values[j]);
            m.at(i, j) = mode == RpMode::distance ? d : (d <= eps ? 1.0 : 0.0);
        }
    return m;
}

TfMatrix gadf(const SeriesWindow& w) {
    w.validate();
    const std::size_t n = w.values.size();
    double lo = w.values[0], hi = w.values[0];
    for (double v : w.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    nlohmann::json desc;
    desc["transform"] = "gadf";
    TfMatrix m = square_matrix(TfKind::gadf, n, std::move(desc));
    if (hi == lo) return m; // degenerate constant window -> zero matrix

    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 2.0 * (w.values[i] - lo) / (hi - lo) - 1.0;
        phi[i] = std::acos(std::clamp(x, -1.0, 1.0));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = std::sin(phi[i] - phi[j]);
    return m;
}

namespace {

// Daubechies analysis lowpass taps (sum = sqrt(2)). "db4" follows the
// 4-vanishing-moment naming, 8 taps.
const std::vector<double>& lowpass_taps(WaveletKind k) {
    static const std::vector<double> haar = {M_SQRT1_2, M_SQRT1_2};
    static const std::vector<double> db4 = {
        0.230377813308855230, 0.714846570552541500,  0.630880767929590400,
        -0.027983769416983850, -0.187034811718881140, 0.030841381835986965,
        0.032883011666982945, -0.010597401784997278,
    };
    return k == WaveletKind::haar ? haar : db4;
}

std::vector<double> highpass_taps(WaveletKind k) {
    const auto& h = lowpass_taps(k);
    const std::size_t L = h.size();
    std::vector<double> g(L);
    for (std::size_t i = 0; i < L; ++i)
        g[i] = (i % 2 == 0 ? 1.0 : -1.0) * h[L - 1 - i];
    return g;
}

} // namespace

DwtBands dwt_decompose(const SeriesWindow& w, WaveletKind wavelet, std::size_t levels) {
    w.validate();
    if (levels < 1) throw std::invalid_argument("dwt: levels must be >= 1");
    if (w.values.size() < (std::size_t{1} << levels))
        throw std::invalid_argument("dwt: input shorter than 2^levels");

    const auto& h = lowpass_taps(wavelet);
    const auto g = highpass_taps(wavelet);
    const std::size_t L = h.size();

    DwtBands out;
    out.wavelet = wavelet;
    out.levels = levels;
    std::vector<std::vector<double>> details;
    std::vector<double> cur = w.values;
    for (std::size_t lvl = 0; lvl < levels; ++lvl) {
        const std::size_t n = cur.size();
        if (n % 2 != 0)
            throw std::invalid_argument("dwt: length not divisible by 2 at level " + std::to_string(lvl + 1));
        const std::size_t half = n / 2;
        std::vector<double> approx(half, 0.0), detail(half, 0.0);
        for (std::size_t i = 0; i < half; ++i) {
            for (std::size_t k = 0; k < L; ++k) {
                const double v = cur[(2 * i + k) % n]; // periodic extension
                approx[i] += h[k] * v;
                detail[i] += g[k] * v;
            }
        }
        details.push_back(std::move(detail));
        cur = std::move(approx);
    }
    out.bands.push_back(std::move(cur)); // approx_L
    for (auto it = details.rbegin(); it != details.rend(); ++it)
        out.bands.push_back(std::move(*it)); // detail_L ... detail_1
    return out;
}

std::vector<double> dwt_reconstruct(const DwtBands& b, std::size_t length) {
    if (b.bands.size() != b.levels + 1) throw std::invalid_argument("dwt_reconstruct: band count mismatch");
    const auto& h = lowpass_taps(b.wavelet);
    const auto g = highpass_taps(b.wavelet);
    const std::size_t L = h.size();

    std::vector<double> cur = b.bands[0];
    for (std::size_t lvl = 0; lvl < b.levels; ++lvl) {
        const auto& detail = b.bands[1 + lvl]; // detail_L first
        if (detail.size() != cur.size()) throw std::invalid_argument("dwt_reconstruct: band size mismatch");
        const std::size_t n = 2 * cur.size();
        std::vector<double> next(n, 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t k = 0; k < L; ++k) {
                const std::size_t m = (2 * i + k) % n;
                next[m] += h[k] * cur[i] + g[k] * detail[i];
            }
        cur = std::move(next);
    }
    if (cur.size() != length) throw std::invalid_argument("dwt_reconstruct: length mismatch");
    return cur;
}

TfMatrix dwt_image(const SeriesWindow& w, WaveletKind wavelet, std::size_t levels) {
    const DwtBands b = dwt_decompose(w, wavelet, levels);
    const std::size_t n = w.values.size();
    const std::size_t n_bands = b.bands.size();

    nlohmann::json desc;
    desc["transform"] = "dwtimg";
    desc["wavelet"] = wavelet == WaveletKind::haar ? "haar" : "db4";
    desc["levels"] = levels;
    TfMatrix m = square_matrix(TfKind::dwtimg, n, std::move(desc));

    // Row r shows band floor(r * n_bands / n), approx at row 0.
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t band = r * n_bands / n;
        const auto& coeffs = b.bands[band];
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t idx = c * coeffs.size() / n; // nearest-neighbor upsample
            m.at(r, c) = std::abs(coeffs[idx]);
        }
    }
    return m;
}

} // namespace tfc
