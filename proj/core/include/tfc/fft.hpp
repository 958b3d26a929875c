#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tfc {

// Thin FFTW wrapper. Plans are cached per length and created under a lock
// (FFTW planning is not thread-safe); execution on caller-owned buffers is.
// Plans use FFTW_ESTIMATE so the butterfly schedule, and therefore the
// floating-point result, is reproducible across runs.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse = false);

std::vector<std::complex<double>> fft(std::vector<std::complex<double>> data);
std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> data); // scaled by 1/N

} // namespace tfc
