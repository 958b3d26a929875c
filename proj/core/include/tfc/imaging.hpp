#pragma once

#include "tfc/tfmatrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace tfc {

enum class SeriesChannel { VM, VA, VF };

struct SeriesWindow {
    std::vector<double> values;
    double fs = 1000.0;
    SeriesChannel channel = SeriesChannel::VM;
    double t0 = 0.0;

    void validate() const; // length >= 4, finite values
};

enum class RpMode { distance, thresholded };

/// Recurrence plot. distance: D[i,j] = |v_i - v_j|; thresholded:
/// R[i,j] = 1 if D[i,j] <= eps else 0.
TfMatrix recurrence_plot(const SeriesWindow& w, RpMode mode = RpMode::distance, double eps = 0.0);

/// Gramian angular difference field: min-max normalize to [-1,1], map to
/// angles, G[i,j] = sin(phi_i - phi_j). A constant window yields the zero
/// matrix.
TfMatrix gadf(const SeriesWindow& w);

enum class WaveletKind { haar, db4 };

struct DwtBands {
    // [approx_L, detail_L, ..., detail_1]
    std::vector<std::vector<double>> bands;
    WaveletKind wavelet = WaveletKind::haar;
    std::size_t levels = 1;
};

/// Pyramidal analysis with periodic extension.
DwtBands dwt_decompose(const SeriesWindow& w, WaveletKind wavelet, std::size_t levels);

/// Synthesis filter bank inverse of dwt_decompose.
std::vector<double> dwt_reconstruct(const DwtBands& bands, std::size_t length);

/// |coefficients| per band, nearest-neighbor upsampled to the window length,
/// band rows stacked approx -> finest detail and replicated to a square
/// matrix.
TfMatrix dwt_image(const SeriesWindow& w, WaveletKind wavelet, std::size_t levels);

} // namespace tfc
