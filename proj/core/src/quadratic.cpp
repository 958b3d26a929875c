#include "tfc/transforms.hpp"

#include "tfc/fft.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace tfc {

namespace {

void require_complex_even(const Signal& s, const char* who) {
    s.validate();
    if (!s.is_complex)
        throw std::invalid_argument(std::string(who) +
                                    ": complex input required (apply analytic_signal to real data)");
    if (s.size() % 2 != 0)
        throw std::invalid_argument(std::string(who) + ": even length required");
}

// Instantaneous autocorrelation row K[n, tau] = z[n+tau] * conj(z[n-tau]),
// zero outside the record, laid out over tau mod N for the lag DFT.
void fill_iaf_row(const Signal& s, std::size_t n, std::ptrdiff_t tau_max,
                  std::vector<cplx>& row) {
    const std::ptrdiff_t N = static_cast<std::ptrdiff_t>(s.size());
    std::fill(row.begin(), row.end(), cplx(0.0, 0.0));
    for (std::ptrdiff_t tau = -tau_max; tau <= tau_max; ++tau) {
        const std::ptrdiff_t a = static_cast<std::ptrdiff_t>(n) + tau;
        const std::ptrdiff_t b = static_cast<std::ptrdiff_t>(n) - tau;
        if (a < 0 || a >= N || b < 0 || b >= N) continue;
        row[static_cast<std::size_t>((tau + N) % N)] =
            s.samples[static_cast<std::size_t>(a)] * std::conj(s.samples[static_cast<std::size_t>(b)]);
    }
}

// Lag DFT + realness assertion + 2/fs scaling shared by the Cohen-class
// distributions. rows[tau mod N][n] indexing is handled by the caller; here
// each column n arrives as a length-N lag vector.
TfMatrix finalize_cohen(const Signal& s, std::vector<std::vector<cplx>>& lag_columns,
                        TfKind kind, nlohmann::json desc) {
    const std::size_t N = s.size();
    TfMatrix W;
    W.kind = kind;
    W.is_complex = false;
    W.n_freq = N;
    W.n_time = N;
    W.values.assign(N * N, cplx(0.0, 0.0));

    const double scale = 2.0 / s.fs; // makes the time marginal sum to |z[n]|^2 * (1/df)
    double max_re = 0.0, max_im = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        fft_inplace(lag_columns[n]);
        for (std::size_t k = 0; k < N; ++k) {
            const cplx v = lag_columns[n][k] * scale;
            max_re = std::max(max_re, std::abs(v.real()));
            max_im = std::max(max_im, std::abs(v.imag()));
            W.at(k, n) = cplx(v.real(), 0.0);
        }
    }
    if (max_re > 0.0 && max_im / max_re > 1e-10)
        throw std::runtime_error(tf_kind_name(kind) + ": lost Hermitian lag symmetry (imaginary residue)");

    W.t_axis.resize(N);
    for (std::size_t n = 0; n < N; ++n) W.t_axis[n] = static_cast<double>(n) / s.fs;
    W.f_axis.resize(N);
    const double df = s.fs / (2.0 * static_cast<double>(N));
    for (std::size_t k = 0; k < N; ++k) W.f_axis[k] = df * static_cast<double>(k);
    // Columns with at least half the maximum lag support.
    W.interior_begin = N / 4;
    W.interior_end = 3 * N / 4;

    desc["fs"] = s.fs;
    desc["n_samples"] = N;
    W.descriptor = desc.dump();
    return W;
}

// Symmetric (non-periodic) smoothing window with peak 1 at the center,
// length odd.
std::vector<double> smoothing_window(const WindowSpec& spec) {
    const std::size_t L = spec.length;
    std::vector<double> w(L, 1.0);
    if (L == 1) return w;
    switch (spec.kind) {
        case WindowKind::rect:
            break;
        case WindowKind::hann:
            for (std::size_t n = 0; n < L; ++n)
                w[n] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(n) / static_cast<double>(L - 1));
            break;
        case WindowKind::gauss: {
            const double edge = (spec.shape > 0.0 && spec.shape < 1.0) ? spec.shape : 1e-4;
            const double c = static_cast<double>(L - 1) / 2.0;
            const double sigma = c / std::sqrt(2.0 * std::log(1.0 / edge));
            for (std::size_t n = 0; n < L; ++n) {
                const double d = static_cast<double>(n) - c;
                w[n] = std::exp(-d * d / (2.0 * sigma * sigma));
            }
            break;
        }
        case WindowKind::kaiser:
            w = make_window(spec);
            break;
    }
    return w;
}

} // namespace

TfMatrix wvd(const Signal& s) {
    require_complex_even(s, "wvd");
    const std::size_t N = s.size();
    const std::ptrdiff_t cap = static_cast<std::ptrdiff_t>(N) / 2 - 1;

    std::vector<std::vector<cplx>> cols(N, std::vector<cplx>(N));
    for (std::size_t n = 0; n < N; ++n) fill_iaf_row(s, n, cap, cols[n]);

    nlohmann::json desc;
    desc["transform"] = "wvd";
    return finalize_cohen(s, cols, TfKind::wvd, std::move(desc));
}

TfMatrix spwvd(const Signal& s, const WindowSpec& g_time, const WindowSpec& h_lag) {
    require_complex_even(s, "spwvd");
    const std::size_t N = s.size();
    if (g_time.length % 2 != 1) throw std::invalid_argument("spwvd: time window length must be odd");
    if (h_lag.length % 2 != 1) throw std::invalid_argument("spwvd: lag window length must be odd");
    const std::ptrdiff_t hl = static_cast<std::ptrdiff_t>(h_lag.length - 1) / 2;
    if (hl > static_cast<std::ptrdiff_t>(N) / 2)
        throw std::invalid_argument("spwvd: lag window half-width exceeds N/2");
    const std::ptrdiff_t tau_max = std::min<std::ptrdiff_t>(hl, static_cast<std::ptrdiff_t>(N) / 2 - 1);

    std::vector<double> g = g_time.length == 1 ? std::vector<double>{1.0} : smoothing_window(g_time);
    double gsum = 0.0;
    for (double v : g) gsum += v;
    for (double& v : g) v /= gsum; // unit sum
    const std::vector<double> h = smoothing_window(h_lag); // unit peak at center
    const std::ptrdiff_t pg = static_cast<std::ptrdiff_t>(g.size() - 1) / 2;
    const std::ptrdiff_t iN = static_cast<std::ptrdiff_t>(N);

    std::vector<std::vector<cplx>> cols(N, std::vector<cplx>(N, cplx(0.0, 0.0)));
    for (std::ptrdiff_t n = 0; n < iN; ++n) {
        auto& col = cols[static_cast<std::size_t>(n)];
        for (std::ptrdiff_t tau = -tau_max; tau <= tau_max; ++tau) {
            cplx acc = 0.0;
            for (std::ptrdiff_t p = -pg; p <= pg; ++p) {
                const std::ptrdiff_t a = n + p + tau;
                const std::ptrdiff_t b = n + p - tau;
                if (a < 0 || a >= iN || b < 0 || b >= iN) continue;
                acc += g[static_cast<std::size_t>(p + pg)] *
                       s.samples[static_cast<std::size_t>(a)] *
                       std::conj(s.samples[static_cast<std::size_t>(b)]);
            }
            col[static_cast<std::size_t>((tau + iN) % iN)] =
                h[static_cast<std::size_t>(tau + hl)] * acc;
        }
    }

    nlohmann::json desc;
    desc["transform"] = "spwvd";
    desc["g_time"] = {{"kind", window_kind_name(g_time.kind)}, {"length", g_time.length}, {"shape", g_time.shape}};
    desc["h_lag"] = {{"kind", window_kind_name(h_lag.kind)}, {"length", h_lag.length}, {"shape", h_lag.shape}};
    return finalize_cohen(s, cols, TfKind::spwvd, std::move(desc));
}

TfMatrix cwd(const Signal& s, double sigma) {
    require_complex_even(s, "cwd");
    if (!(sigma > 0.0)) throw std::invalid_argument("cwd: sigma must be > 0");
    const std::size_t N = s.size();
    const std::ptrdiff_t iN = static_cast<std::ptrdiff_t>(N);
    const std::ptrdiff_t cap = iN / 2 - 1;

    // IAF indexed [tau mod N][n] for the Doppler DFT over n.
    std::vector<std::vector<cplx>> iaf(N, std::vector<cplx>(N, cplx(0.0, 0.0)));
    for (std::ptrdiff_t n = 0; n < iN; ++n) {
        for (std::ptrdiff_t tau = -cap; tau <= cap; ++tau) {
            const std::ptrdiff_t a = n + tau;
            const std::ptrdiff_t b = n - tau;
            if (a < 0 || a >= iN || b < 0 || b >= iN) continue;
            iaf[static_cast<std::size_t>((tau + iN) % iN)][static_cast<std::size_t>(n)] =
                s.samples[static_cast<std::size_t>(a)] * std::conj(s.samples[static_cast<std::size_t>(b)]);
        }
    }

    // Ambiguity domain over n (A[theta, tau] = sum_n K e^{+j theta n}), kernel,
    // then back to the time-lag domain.
    for (std::ptrdiff_t tau = -cap; tau <= cap; ++tau) {
        auto& row = iaf[static_cast<std::size_t>((tau + iN) % iN)];
        fft_inplace(row, true); // e^{+j 2pi m n / N}, scaled 1/N
        for (std::size_t m = 0; m < N; ++m) {
            const std::ptrdiff_t ms = static_cast<std::ptrdiff_t>(m) <= iN / 2
                                          ? static_cast<std::ptrdiff_t>(m)
                                          : static_cast<std::ptrdiff_t>(m) - iN;
            const double theta = 2.0 * M_PI * static_cast<double>(ms) / static_cast<double>(N);
            const double t = static_cast<double>(tau);
            row[m] *= std::exp(-(theta * theta * t * t) / sigma);
        }
        fft_inplace(row, false); // undoes the (1/N)-scaled inverse exactly in pairing
    }

    std::vector<std::vector<cplx>> cols(N, std::vector<cplx>(N, cplx(0.0, 0.0)));
    for (std::size_t ti = 0; ti < N; ++ti)
        for (std::size_t n = 0; n < N; ++n) cols[n][ti] = iaf[ti][n];

    nlohmann::json desc;
    desc["transform"] = "cwd";
    desc["sigma"] = sigma;
    return finalize_cohen(s, cols, TfKind::cwd, std::move(desc));
}

} // namespace tfc
