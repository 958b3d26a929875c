#pragma once

#include "tfc/signal.hpp"
#include "tfc/tfmatrix.hpp"
#include "tfc/window.hpp"

#include <cstddef>

namespace tfc {

/// Short-time Fourier transform. Frame m covers samples [m*hop, m*hop+L),
/// zero-padded past the signal end:
///   V[m,k] = sum_n x[m*hop + n] * g[n] * exp(-j*2*pi*k*n/nfft).
/// Column m is stamped at t = (m*hop + L/2) / fs; rows are the nfft DFT bins
/// over [0, fs).
TfMatrix stft(const Signal& s, const WindowSpec& w, std::size_t hop, std::size_t nfft);

/// Overlap-add inverse. Requires the analysis window to satisfy COLA at the
/// given hop (sum_m g[n - m*hop] constant within 1e-8 over the interior);
/// throws "COLA violated" otherwise. Exact over the fully overlapped region.
Signal istft(const TfMatrix& V, const WindowSpec& w, std::size_t hop);

/// Fourier synchrosqueezing. Dense (hop 1) Gaussian STFT, phase-referenced to
/// the window center; per-bin instantaneous frequency
///   f_hat[m,k] = f_k - (fs/2pi) * Im(Vdg[m,k] / Vg[m,k])
/// computed where |Vg| exceeds `threshold` times the global max, and each
/// above-threshold V value is accumulated into the bin nearest f_hat.
TfMatrix fsst(const Signal& s, const WindowSpec& w, std::size_t nfft, double threshold = 1e-4);

/// Column-sum synchrosqueezing inverse: x_hat[m] = sum_k T[m,k] / g[L/2].
Signal fsst_reconstruct(const TfMatrix& T, const WindowSpec& w);

/// Wigner-Ville distribution of a complex (analytic) signal. Real-valued
/// output, N frequency rows covering [0, fs/2), scaled so the time marginal
/// sum_k W[n,k]*df equals |z[n]|^2.
TfMatrix wvd(const Signal& s);

/// Smoothed pseudo WVD: time smoothing by g (odd length, normalized to unit
/// sum) and lag windowing by h (odd length, unit peak, half-width at most
/// N/2). g of length 1 with a full-lag rectangular h reduces to wvd().
TfMatrix spwvd(const Signal& s, const WindowSpec& g_time, const WindowSpec& h_lag);

/// Choi-Williams distribution: ambiguity-domain kernel
/// exp(-(theta^2 * tau^2)/sigma) with theta the signed normalized angular
/// Doppler (rad/sample) and tau the lag in samples.
TfMatrix cwd(const Signal& s, double sigma);

/// Morlet (omega0 = 6) continuous wavelet transform over n_scales log-spaced
/// pseudo-frequencies in [f_min, f_max]; rows ordered by ascending frequency.
TfMatrix cwt(const Signal& s, std::size_t n_scales, double f_min, double f_max);

} // namespace tfc
