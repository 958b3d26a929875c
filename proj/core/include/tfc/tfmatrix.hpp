#pragma once

#include "tfc/signal.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tfc {

enum class TfKind : std::uint8_t {
    stft = 1,
    fsst = 2,
    wvd = 3,
    spwvd = 4,
    cwd = 5,
    cwt = 6,
    rp = 7,
    gadf = 8,
    dwtimg = 9,
};

std::string tf_kind_name(TfKind k);
TfKind tf_kind_from_name(const std::string& name);

/// 2-D time-frequency (or imaging) matrix, row-major [n_freq x n_time].
/// Row r holds frequency f_axis[r]; column c sits at time t_axis[c].
/// `descriptor` is a JSON record of the transform kind and every parameter
/// needed to reproduce the computation, including the interior column range
/// [interior_begin, interior_end) where edge padding has no effect.
struct TfMatrix {
    TfKind kind = TfKind::stft;
    bool is_complex = true;
    std::size_t n_freq = 0;
    std::size_t n_time = 0;
    std::vector<cplx> values; // n_freq * n_time, row-major
    std::vector<double> t_axis;
    std::vector<double> f_axis;
    std::string descriptor; // JSON text
    std::size_t interior_begin = 0;
    std::size_t interior_end = 0;

    cplx& at(std::size_t f, std::size_t t) { return values[f * n_time + t]; }
    const cplx& at(std::size_t f, std::size_t t) const { return values[f * n_time + t]; }

    void validate() const;
    nlohmann::json descriptor_json() const;
};

/// TFTM container: magic "TFTM", u32 version=1, u8 kind, u8 is_complex,
/// u32 n_freq, u32 n_time, f64 t0/dt/f0/df, u32 descriptor length + JSON
/// bytes, then row-major f32 values (re,im interleaved when complex).
/// Non-uniform axes (CWT) round-trip through the descriptor.
void write_tftm(const TfMatrix& m, const std::string& path);
TfMatrix read_tftm(const std::string& path);

} // namespace tfc
