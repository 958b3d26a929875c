#include "tfc/signal.hpp"

#include "tfc/fft.hpp"
#include "tfc/rng.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace tfc {

double Signal::mean_power() const {
    double acc = 0.0;
    for (const auto& v : samples) acc += std::norm(v);
    return samples.empty() ? 0.0 : acc / static_cast<double>(samples.size());
}

void Signal::validate() const {
    if (samples.empty()) throw std::invalid_argument("signal: empty sample vector");
    if (!std::isfinite(fs) || fs <= 0.0) throw std::invalid_argument("signal: fs must be finite and > 0");
    for (const auto& v : samples) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("signal: non-finite sample");
    }
}

Signal add_awgn(const Signal& s, double snr_db, std::uint64_t seed) {
    s.validate();
    if (!std::isfinite(snr_db)) throw std::invalid_argument("add_awgn: snr_db must be finite");
    const double p_sig = s.mean_power();
    if (p_sig <= 0.0) throw std::invalid_argument("add_awgn: signal has no power");

    const double p_noise = p_sig * std::pow(10.0, -snr_db / 10.0);
    Signal out = s;
    out.snr_db = snr_db;
    CounterRng rng(seed);
    if (s.is_complex) {
        const double sigma = std::sqrt(p_noise / 2.0);
        for (auto& v : out.samples)
            v += cplx(sigma * rng.next_gaussian(), sigma * rng.next_gaussian());
    } else {
        const double sigma = std::sqrt(p_noise);
        for (auto& v : out.samples) v += cplx(sigma * rng.next_gaussian(), 0.0);
    }
    return out;
}

Signal analytic_signal(const Signal& s) {
    s.validate();
    const std::size_t n = s.size();
    if (n % 2 != 0) throw std::invalid_argument("analytic_signal: length must be even");
    for (const auto& v : s.samples)
        if (v.imag() != 0.0) throw std::invalid_argument("analytic_signal: input must be real");

    std::vector<cplx> spec = fft(s.samples);
    for (std::size_t k = 1; k < n / 2; ++k) spec[k] *= 2.0;
    for (std::size_t k = n / 2 + 1; k < n; ++k) spec[k] = 0.0;
    Signal out = s;
    out.samples = ifft(std::move(spec));
    out.is_complex = true;
    return out;
}

Spectrum dft_oracle(const Signal& s) {
    s.validate();
    const std::size_t n = s.size();
    Spectrum sp;
    sp.df = s.fs / static_cast<double>(n);
    sp.bins.resize(n);
    const double w = -2.0 * M_PI / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            acc += s.samples[i] * std::polar(1.0, w * static_cast<double>(k * i % n));
        sp.bins[k] = acc;
    }
    return sp;
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void put_bytes(std::FILE* f, const void* p, std::size_t n, const std::string& path) {
    if (std::fwrite(p, 1, n, f) != n) throw std::runtime_error("write failed: " + path);
}
void get_bytes(std::FILE* f, void* p, std::size_t n, const std::string& path) {
    if (std::fread(p, 1, n, f) != n) throw std::runtime_error("short read: " + path);
}

} // namespace

void write_tfsg(const Signal& s, const std::string& path) {
    s.validate();
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    put_bytes(f.get(), "TFSG", 4, path);
    const std::uint32_t version = 1;
    put_bytes(f.get(), &version, 4, path);
    put_bytes(f.get(), &s.fs, 8, path);
    const std::uint64_t n = s.size();
    put_bytes(f.get(), &n, 8, path);
    const std::uint8_t is_complex = s.is_complex ? 1 : 0;
    put_bytes(f.get(), &is_complex, 1, path);
    std::vector<float> buf;
    buf.reserve(s.is_complex ? 2 * n : n);
    for (const auto& v : s.samples) {
        buf.push_back(static_cast<float>(v.real()));
        if (s.is_complex) buf.push_back(static_cast<float>(v.imag()));
    }
    put_bytes(f.get(), buf.data(), buf.size() * sizeof(float), path);
}

Signal read_tfsg(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("cannot open: " + path);
    char magic[4];
    get_bytes(f.get(), magic, 4, path);
    if (std::memcmp(magic, "TFSG", 4) != 0) throw std::runtime_error("bad TFSG magic: " + path);
    std::uint32_t version = 0;
    get_bytes(f.get(), &version, 4, path);
    if (version != 1) throw std::runtime_error("unsupported TFSG version: " + path);
    Signal s;
    get_bytes(f.get(), &s.fs, 8, path);
    std::uint64_t n = 0;
    get_bytes(f.get(), &n, 8, path);
    std::uint8_t is_complex = 0;
    get_bytes(f.get(), &is_complex, 1, path);
    s.is_complex = is_complex != 0;
    std::vector<float> buf(s.is_complex ? 2 * n : n);
    get_bytes(f.get(), buf.data(), buf.size() * sizeof(float), path);
    s.samples.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        s.samples[i] = s.is_complex ? cplx(buf[2 * i], buf[2 * i + 1]) : cplx(buf[i], 0.0);
    }
    s.validate();
    return s;
}

} // namespace tfc
