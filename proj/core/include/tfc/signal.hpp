#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tfc {

using cplx = std::complex<double>;

/// Uniformly sampled time series. Samples are stored as complex numbers;
/// `is_complex` records whether the imaginary parts are meaningful (a real
/// signal keeps them at exactly zero).
struct Signal {
    std::vector<cplx> samples;
    double fs = 1.0;
    bool is_complex = true;
    std::optional<std::string> label;
    std::optional<double> snr_db;

    std::size_t size() const { return samples.size(); }
    double duration() const { return static_cast<double>(samples.size()) / fs; }

    /// Mean of |x[n]|^2 over the record.
    double mean_power() const;

    /// Throws std::invalid_argument on empty/non-finite samples or bad fs.
    void validate() const;
};

struct Spectrum {
    std::vector<cplx> bins;
    double df = 0.0;
};

/// Adds white Gaussian noise at the given SNR relative to mean signal power.
/// Complex circular noise for complex signals, real noise for real signals.
/// Deterministic for a fixed seed.
Signal add_awgn(const Signal& s, double snr_db, std::uint64_t seed);

/// One-sided-spectrum (analytic) signal of a real input. Requires even length.
Signal analytic_signal(const Signal& s);

/// Direct O(N^2) DFT. Test oracle for every FFT-backed path.
Spectrum dft_oracle(const Signal& s);

/// TFSG container: magic "TFSG", u32 version=1, f64 fs, u64 N, u8 is_complex,
/// then N f32 (real) or 2N f32 interleaved re/im, all little-endian.
void write_tfsg(const Signal& s, const std::string& path);
Signal read_tfsg(const std::string& path);

} // namespace tfc
