#include "tfc/raster.hpp"

#include <zlib.h>

#include <cstdio>
#include <memory>
#include <stdexcept>

namespace tfc {

namespace {

void append_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(static_cast<std::uint8_t>(x >> 24));
    v.push_back(static_cast<std::uint8_t>(x >> 16));
    v.push_back(static_cast<std::uint8_t>(x >> 8));
    v.push_back(static_cast<std::uint8_t>(x));
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::vector<std::uint8_t>& data) {
    append_u32(out, static_cast<std::uint32_t>(data.size()));
    std::vector<std::uint8_t> crc_buf;
    crc_buf.insert(crc_buf.end(), type, type + 4);
    crc_buf.insert(crc_buf.end(), data.begin(), data.end());
    out.insert(out.end(), crc_buf.begin(), crc_buf.end());
    const auto crc = crc32(0L, crc_buf.data(), static_cast<uInt>(crc_buf.size()));
    append_u32(out, static_cast<std::uint32_t>(crc));
}

} // namespace

void write_png(const std::string& path, const std::vector<std::uint8_t>& bytes,
               std::size_t width, std::size_t height, std::size_t channels) {
    if (channels != 1 && channels != 3) throw std::invalid_argument("png: channels must be 1 or 3");
    if (bytes.size() != width * height * channels) throw std::invalid_argument("png: byte count mismatch");

    // Filter type 0 per scanline.
    std::vector<std::uint8_t> raw;
    raw.reserve(height * (1 + width * channels));
    for (std::size_t y = 0; y < height; ++y) {
        raw.push_back(0);
        const auto* row = bytes.data() + y * width * channels;
        raw.insert(raw.end(), row, row + width * channels);
    }
    uLongf comp_len = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> comp(comp_len);
    if (compress2(comp.data(), &comp_len, raw.data(), static_cast<uLong>(raw.size()), 9) != Z_OK)
        throw std::runtime_error("png: zlib compression failed: " + path);
    comp.resize(comp_len);

    std::vector<std::uint8_t> png = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    std::vector<std::uint8_t> ihdr;
    append_u32(ihdr, static_cast<std::uint32_t>(width));
    append_u32(ihdr, static_cast<std::uint32_t>(height));
    ihdr.push_back(8);                              // bit depth
    ihdr.push_back(channels == 1 ? 0 : 2);          // gray / truecolor
    ihdr.push_back(0);                              // compression
    ihdr.push_back(0);                              // filter
    ihdr.push_back(0);                              // no interlace
    append_chunk(png, "IHDR", ihdr);
    append_chunk(png, "IDAT", comp);
    append_chunk(png, "IEND", {});

    std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "wb"), std::fclose);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    if (std::fwrite(png.data(), 1, png.size(), f.get()) != png.size())
        throw std::runtime_error("write failed: " + path);
}

} // namespace tfc
