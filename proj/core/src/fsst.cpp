#include "tfc/transforms.hpp"

#include "tfc/fft.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tfc {

namespace {

// Dense STFT phase-referenced to the window center c = L/2:
//   V[m,k] = (1/nfft) * sum_n x[m + n - c] * g[n] * exp(-j*2pi*k*(n-c)/nfft)
// The 1/nfft and center reference make the column sum collapse to
// x[m] * g[c], which is what the synchrosqueezing inverse relies on.
std::vector<cplx> centered_dense_stft(const Signal& s, const std::vector<double>& g,
                                      std::size_t nfft) {
    const std::size_t N = s.size();
    const std::size_t L = g.size();
    const std::size_t c = L / 2;
    std::vector<cplx> V(nfft * N);
    std::vector<cplx> buf(nfft);
    for (std::size_t m = 0; m < N; ++m) {
        std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
        for (std::size_t n = 0; n < L; ++n) {
            const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(m + n) - static_cast<std::ptrdiff_t>(c);
            if (src < 0 || src >= static_cast<std::ptrdiff_t>(N)) continue;
            const std::size_t slot = (n + nfft - c % nfft) % nfft;
            buf[slot] += s.samples[static_cast<std::size_t>(src)] * g[n];
        }
        fft_inplace(buf);
        const double scale = 1.0 / static_cast<double>(nfft);
        for (std::size_t k = 0; k < nfft; ++k) V[k * N + m] = buf[k] * scale;
    }
    return V;
}

} // namespace

TfMatrix fsst(const Signal& s, const WindowSpec& w, std::size_t nfft, double threshold) {
    s.validate();
    if (w.kind != WindowKind::gauss)
        throw std::invalid_argument("fsst: gaussian window required (derivative window is analytic)");
    const std::size_t N = s.size();
    const std::size_t L = w.length;
    if (nfft < L) throw std::invalid_argument("fsst: nfft must be >= window length");
    if (L > N) throw std::invalid_argument("fsst: window longer than signal");

    const std::vector<double> g = make_window(w);
    const std::vector<double> dg = make_window_derivative(w);
    const std::vector<cplx> Vg = centered_dense_stft(s, g, nfft);
    const std::vector<cplx> Vdg = centered_dense_stft(s, dg, nfft);

    double vmax = 0.0;
    for (const auto& v : Vg) vmax = std::max(vmax, std::abs(v));
    const double gamma = threshold * vmax;

    const double df = s.fs / static_cast<double>(nfft);
    const double two_pi = 2.0 * M_PI;

    TfMatrix T;
    T.kind = TfKind::fsst;
    T.is_complex = true;
    T.n_freq = nfft;
    T.n_time = N;
    T.values.assign(nfft * N, cplx(0.0, 0.0));

    for (std::size_t m = 0; m < N; ++m) {
        for (std::size_t k = 0; k < nfft; ++k) {
            const cplx v = Vg[k * N + m];
            if (std::abs(v) <= gamma) continue;
            const cplx dv = Vdg[k * N + m];
            const double f_k = df * static_cast<double>(k);
            const double f_hat = f_k - (s.fs / two_pi) * std::imag(dv / v);
            const double bin = std::round(f_hat / df);
            const std::size_t target = static_cast<std::size_t>(
                std::clamp(bin, 0.0, static_cast<double>(nfft - 1)));
            T.at(target, m) += v;
        }
    }

    T.t_axis.resize(N);
    for (std::size_t m = 0; m < N; ++m) T.t_axis[m] = static_cast<double>(m) / s.fs;
    T.f_axis.resize(nfft);
    for (std::size_t k = 0; k < nfft; ++k) T.f_axis[k] = df * static_cast<double>(k);
    T.interior_begin = L / 2;
    T.interior_end = N > L / 2 ? N - L / 2 : 0;

    nlohmann::json desc;
    desc["transform"] = "fsst";
    desc["window"] = {{"kind", window_kind_name(w.kind)}, {"length", w.length}, {"shape", w.shape}};
    desc["nfft"] = nfft;
    desc["threshold"] = threshold;
    desc["fs"] = s.fs;
    desc["n_samples"] = N;
    T.descriptor = desc.dump();
    return T;
}

Signal fsst_reconstruct(const TfMatrix& T, const WindowSpec& w) {
    T.validate();
    if (T.kind != TfKind::fsst) throw std::invalid_argument("fsst_reconstruct: input is not an FSST matrix");
    const nlohmann::json desc = T.descriptor_json();
    if (desc.value("transform", "") != "fsst" ||
        desc.at("window").at("kind").get<std::string>() != window_kind_name(w.kind) ||
        desc.at("window").at("length").get<std::size_t>() != w.length)
        throw std::invalid_argument("fsst_reconstruct: window does not match matrix descriptor");

    const std::vector<double> g = make_window(w);
    const double gc = g[w.length / 2];

    Signal out;
    out.fs = desc.at("fs").get<double>();
    out.is_complex = true;
    out.samples.resize(T.n_time);
    for (std::size_t m = 0; m < T.n_time; ++m) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < T.n_freq; ++k) acc += T.at(k, m);
        out.samples[m] = acc / gc;
    }
    return out;
}

} // namespace tfc
