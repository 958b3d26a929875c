#include "tfc/raster.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace tfc {

void RasterImage::validate() const {
    if (height < 8 || width < 8) throw std::invalid_argument("raster: H and W must be >= 8");
    if (channels != 1 && channels != 3) throw std::invalid_argument("raster: C must be 1 or 3");
    if (pixels.size() != height * width * channels) throw std::invalid_argument("raster: pixel count mismatch");
    for (float v : pixels)
        if (!(v >= 0.0f && v <= 1.0f)) throw std::invalid_argument("raster: pixel outside [0,1]");
}

namespace {

// Bilinear, endpoint-aligned so that an identity resize is exact.
std::vector<float> resize_bilinear(const std::vector<float>& src, std::size_t sh, std::size_t sw,
                                   std::size_t dh, std::size_t dw) {
    std::vector<float> dst(dh * dw);
    const double ry = dh > 1 ? static_cast<double>(sh - 1) / static_cast<double>(dh - 1) : 0.0;
    const double rx = dw > 1 ? static_cast<double>(sw - 1) / static_cast<double>(dw - 1) : 0.0;
    for (std::size_t y = 0; y < dh; ++y) {
        const double fy = ry * static_cast<double>(y);
        const std::size_t y0 = std::min(static_cast<std::size_t>(fy), sh - 1);
        const std::size_t y1 = std::min(y0 + 1, sh - 1);
        const double wy = fy - static_cast<double>(y0);
        for (std::size_t x = 0; x < dw; ++x) {
            const double fx = rx * static_cast<double>(x);
            const std::size_t x0 = std::min(static_cast<std::size_t>(fx), sw - 1);
            const std::size_t x1 = std::min(x0 + 1, sw - 1);
            const double wx = fx - static_cast<double>(x0);
            const double top = (1.0 - wx) * src[y0 * sw + x0] + wx * src[y0 * sw + x1];
            const double bot = (1.0 - wx) * src[y1 * sw + x0] + wx * src[y1 * sw + x1];
            dst[y * dw + x] = static_cast<float>((1.0 - wy) * top + wy * bot);
        }
    }
    return dst;
}

} // namespace

RasterImage rasterize(const TfMatrix& m, const RasterPolicy& policy) {
    m.validate();
    const std::size_t nf = m.n_freq, nt = m.n_time;

    // Magnitude, frequency low-at-bottom (row 0 of the image = highest freq).
    std::vector<double> mag(nf * nt);
    for (std::size_t r = 0; r < nf; ++r)
        for (std::size_t c = 0; c < nt; ++c)
            mag[(nf - 1 - r) * nt + c] = std::abs(m.at(r, c));

    double vmax = 0.0;
    for (double v : mag) vmax = std::max(vmax, v);

    std::vector<float> scaled(nf * nt, 0.0f);
    if (policy.scaling == RasterScaling::db) {
        if (vmax > 0.0) {
            double lo = 0.0, hi = -1e300;
            std::vector<double> db(nf * nt);
            for (std::size_t i = 0; i < mag.size(); ++i) {
                double d = mag[i] > 0.0 ? 20.0 * std::log10(mag[i] / vmax) : policy.db_floor;
                d = std::max(d, policy.db_floor);
                db[i] = d;
            }
            lo = *std::min_element(db.begin(), db.end());
            hi = *std::max_element(db.begin(), db.end());
            if (hi > lo)
                for (std::size_t i = 0; i < db.size(); ++i)
                    scaled[i] = static_cast<float>((db[i] - lo) / (hi - lo));
        }
    } else {
        const double lo = *std::min_element(mag.begin(), mag.end());
        const double hi = *std::max_element(mag.begin(), mag.end());
        if (hi > lo)
            for (std::size_t i = 0; i < mag.size(); ++i)
                scaled[i] = static_cast<float>((mag[i] - lo) / (hi - lo));
    }

    RasterImage img;
    img.height = policy.height;
    img.width = policy.width;
    img.channels = 1;
    img.policy = policy;
    img.pixels = (nf == policy.height && nt == policy.width)
                     ? std::move(scaled)
                     : resize_bilinear(scaled, nf, nt, policy.height, policy.width);
    for (auto& v : img.pixels) v = std::clamp(v, 0.0f, 1.0f);
    img.provenance = m.descriptor;
    img.validate();
    return img;
}

RasterImage stack_channels(const RasterImage& r1, const RasterImage& r2, const RasterImage& r3) {
    const RasterImage* imgs[3] = {&r1, &r2, &r3};
    for (const auto* r : imgs) {
        r->validate();
        if (r->channels != 1) throw std::invalid_argument("stack_channels: inputs must be single-channel");
        if (r->height != r1.height || r->width != r1.width)
            throw std::invalid_argument("stack_channels: shape mismatch");
    }
    RasterImage out;
    out.height = r1.height;
    out.width = r1.width;
    out.channels = 3;
    out.policy = r1.policy;
    out.pixels.resize(out.height * out.width * 3);
    for (std::size_t i = 0; i < out.height * out.width; ++i)
        for (std::size_t c = 0; c < 3; ++c) out.pixels[i * 3 + c] = imgs[c]->pixels[i];
    nlohmann::json prov = nlohmann::json::array();
    for (const auto* r : imgs) {
        prov.push_back(r->provenance.empty() ? nlohmann::json{}
                                             : nlohmann::json::parse(r->provenance));
    }
    out.provenance = prov.dump();
    return out;
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

} // namespace

void export_raster(const RasterImage& r, ExportFormat format, const std::string& path) {
    r.validate();
    if (format == ExportFormat::png) {
        std::vector<std::uint8_t> bytes(r.pixels.size());
        for (std::size_t i = 0; i < r.pixels.size(); ++i)
            bytes[i] = static_cast<std::uint8_t>(std::floor(r.pixels[i] * 255.0f + 0.5f)); // round half up
        write_png(path, bytes, r.width, r.height, r.channels);
        return;
    }
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    auto put = [&](const void* p, std::size_t n) {
        if (std::fwrite(p, 1, n, f.get()) != n) throw std::runtime_error("write failed: " + path);
    };
    put("TFTN", 4);
    const std::uint32_t version = 1;
    const std::uint32_t h = static_cast<std::uint32_t>(r.height);
    const std::uint32_t w = static_cast<std::uint32_t>(r.width);
    const std::uint32_t c = static_cast<std::uint32_t>(r.channels);
    put(&version, 4);
    put(&h, 4);
    put(&w, 4);
    put(&c, 4);
    put(r.pixels.data(), r.pixels.size() * sizeof(float));
}

RasterImage read_tftn(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("cannot open: " + path);
    auto get = [&](void* p, std::size_t n) {
        if (std::fread(p, 1, n, f.get()) != n) throw std::runtime_error("short read: " + path);
    };
    char magic[4];
    get(magic, 4);
    if (std::memcmp(magic, "TFTN", 4) != 0) throw std::runtime_error("bad TFTN magic: " + path);
    std::uint32_t version = 0, h = 0, w = 0, c = 0;
    get(&version, 4);
    if (version != 1) throw std::runtime_error("unsupported TFTN version: " + path);
    get(&h, 4);
    get(&w, 4);
    get(&c, 4);
    RasterImage r;
    r.height = h;
    r.width = w;
    r.channels = c;
    r.pixels.resize(static_cast<std::size_t>(h) * w * c);
    get(r.pixels.data(), r.pixels.size() * sizeof(float));
    r.validate();
    return r;
}

} // namespace tfc
