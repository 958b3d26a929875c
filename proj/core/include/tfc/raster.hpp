#pragma once

#include "tfc/tfmatrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tfc {

enum class RasterScaling { db, linear };

struct RasterPolicy {
    RasterScaling scaling = RasterScaling::db;
    double db_floor = -60.0;
    std::size_t height = 224;
    std::size_t width = 224;
    // resize: bilinear (only mode)
};

/// H x W x C float image, values in [0,1], channel-interleaved.
struct RasterImage {
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t channels = 1;
    std::vector<float> pixels; // h*w*c, row-major, channel fastest
    RasterPolicy policy;
    std::string provenance; // source descriptor JSON

    float& at(std::size_t y, std::size_t x, std::size_t c = 0) {
        return pixels[(y * width + x) * channels + c];
    }
    float at(std::size_t y, std::size_t x, std::size_t c = 0) const {
        return pixels[(y * width + x) * channels + c];
    }
    void validate() const;
};

/// Magnitude (if complex), dB or linear min-max scaling to [0,1], frequency
/// low-at-bottom orientation, bilinear resize to the policy target. Constant
/// matrices map to all-zeros.
RasterImage rasterize(const TfMatrix& m, const RasterPolicy& policy);

/// Stacks three single-channel images of identical size into one 3-channel
/// image (channel order VM, VA, VF by convention).
RasterImage stack_channels(const RasterImage& r1, const RasterImage& r2, const RasterImage& r3);

enum class ExportFormat { png, tensor };

/// png: 8-bit grayscale or RGB, round half up. tensor: TFTN container
/// (magic "TFTN", u32 version=1, u32 H, u32 W, u32 C, row-major f32),
/// bit-exact round trip.
void export_raster(const RasterImage& r, ExportFormat format, const std::string& path);
RasterImage read_tftn(const std::string& path);

// png_io.cpp: minimal zlib-backed PNG writer (8-bit gray or RGB).
void write_png(const std::string& path, const std::vector<std::uint8_t>& bytes,
               std::size_t width, std::size_t height, std::size_t channels);

} // namespace tfc
