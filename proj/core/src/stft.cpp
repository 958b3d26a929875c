#include "tfc/transforms.hpp"

#include "tfc/fft.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace tfc {

TfMatrix stft(const Signal& s, const WindowSpec& w, std::size_t hop, std::size_t nfft) {
    s.validate();
    const std::size_t N = s.size();
    const std::size_t L = w.length;
    if (hop < 1) throw std::invalid_argument("stft: hop must be >= 1");
    if (nfft < L) throw std::invalid_argument("stft: nfft must be >= window length");
    if (L > N) throw std::invalid_argument("stft: window longer than signal");

    const std::vector<double> g = make_window(w);
    const std::size_t n_frames = (N - 1) / hop + 1;

    TfMatrix V;
    V.kind = TfKind::stft;
    V.is_complex = true;
    V.n_freq = nfft;
    V.n_time = n_frames;
    V.values.assign(nfft * n_frames, cplx(0.0, 0.0));

    std::vector<cplx> frame(nfft);
    for (std::size_t m = 0; m < n_frames; ++m) {
        const std::size_t start = m * hop;
        std::fill(frame.begin(), frame.end(), cplx(0.0, 0.0));
        for (std::size_t n = 0; n < L && start + n < N; ++n)
            frame[n] = s.samples[start + n] * g[n];
        fft_inplace(frame);
        for (std::size_t k = 0; k < nfft; ++k) V.at(k, m) = frame[k];
    }

    V.t_axis.resize(n_frames);
    for (std::size_t m = 0; m < n_frames; ++m)
        V.t_axis[m] = (static_cast<double>(m * hop) + static_cast<double>(L) / 2.0) / s.fs;
    V.f_axis.resize(nfft);
    const double df = s.fs / static_cast<double>(nfft);
    for (std::size_t k = 0; k < nfft; ++k) V.f_axis[k] = df * static_cast<double>(k);

    // Interior: frames whose window lies fully inside the record.
    V.interior_begin = 0;
    V.interior_end = (N >= L) ? (N - L) / hop + 1 : 0;

    nlohmann::json desc;
    desc["transform"] = "stft";
    desc["window"] = {{"kind", window_kind_name(w.kind)}, {"length", w.length}, {"shape", w.shape}};
    desc["hop"] = hop;
    desc["nfft"] = nfft;
    desc["fs"] = s.fs;
    desc["n_samples"] = N;
    V.descriptor = desc.dump();
    return V;
}

namespace {

// COLA check: sum of shifted windows constant over the fully covered region.
void require_cola(const std::vector<double>& g, std::size_t hop) {
    const std::size_t L = g.size();
    // Evaluate the periodic sum over one hop period deep inside the overlap.
    std::vector<double> acc(hop, 0.0);
    for (std::size_t n = 0; n < hop; ++n)
        for (std::size_t m = 0; m * hop + n < L; ++m) acc[n] += g[m * hop + n];
    double lo = acc[0], hi = acc[0];
    for (double v : acc) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi - lo > 1e-8 || hi <= 0.0) throw std::invalid_argument("istft: COLA violated");
}

} // namespace

Signal istft(const TfMatrix& V, const WindowSpec& w, std::size_t hop) {
    V.validate();
    if (V.kind != TfKind::stft) throw std::invalid_argument("istft: input is not an STFT matrix");
    const std::vector<double> g = make_window(w);
    require_cola(g, hop);
    double cola = 0.0;
    for (std::size_t m = 0; m * hop < g.size(); ++m) cola += g[m * hop];

    const nlohmann::json desc = V.descriptor_json();
    const std::size_t N = desc.at("n_samples").get<std::size_t>();
    const double fs = desc.at("fs").get<double>();
    const std::size_t nfft = V.n_freq;
    const std::size_t L = g.size();

    Signal out;
    out.fs = fs;
    out.is_complex = true;
    out.samples.assign(N, cplx(0.0, 0.0));

    std::vector<cplx> frame(nfft);
    for (std::size_t m = 0; m < V.n_time; ++m) {
        for (std::size_t k = 0; k < nfft; ++k) frame[k] = V.at(k, m);
        fft_inplace(frame, true);
        const std::size_t start = m * hop;
        for (std::size_t n = 0; n < L && start + n < N; ++n)
            out.samples[start + n] += frame[n];
    }
    for (auto& v : out.samples) v /= cola;
    return out;
}

} // namespace tfc
