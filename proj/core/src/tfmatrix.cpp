#include "tfc/tfmatrix.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace tfc {

std::string tf_kind_name(TfKind k) {
    switch (k) {
        case TfKind::stft: return "stft";
        case TfKind::fsst: return "fsst";
        case TfKind::wvd: return "wvd";
        case TfKind::spwvd: return "spwvd";
        case TfKind::cwd: return "cwd";
        case TfKind::cwt: return "cwt";
        case TfKind::rp: return "rp";
        case TfKind::gadf: return "gadf";
        case TfKind::dwtimg: return "dwtimg";
    }
    throw std::logic_error("unreachable tf kind");
}

TfKind tf_kind_from_name(const std::string& name) {
    for (int k = 1; k <= 9; ++k)
        if (tf_kind_name(static_cast<TfKind>(k)) == name) return static_cast<TfKind>(k);
    throw std::invalid_argument("unknown transform kind: " + name);
}

void TfMatrix::validate() const {
    if (n_freq == 0 || n_time == 0) throw std::invalid_argument("tfmatrix: empty");
    if (values.size() != n_freq * n_time) throw std::invalid_argument("tfmatrix: value count mismatch");
    if (t_axis.size() != n_time || f_axis.size() != n_freq)
        throw std::invalid_argument("tfmatrix: axis length mismatch");
    for (std::size_t i = 1; i < t_axis.size(); ++i)
        if (!(t_axis[i] > t_axis[i - 1])) throw std::invalid_argument("tfmatrix: t_axis not strictly increasing");
    for (std::size_t i = 1; i < f_axis.size(); ++i)
        if (!(f_axis[i] > f_axis[i - 1])) throw std::invalid_argument("tfmatrix: f_axis not strictly increasing");
}

nlohmann::json TfMatrix::descriptor_json() const {
    return descriptor.empty() ? nlohmann::json::object() : nlohmann::json::parse(descriptor);
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

bool axis_uniform(const std::vector<double>& a) {
    if (a.size() < 3) return true;
    const double d = a[1] - a[0];
    for (std::size_t i = 2; i < a.size(); ++i)
        if (std::abs((a[i] - a[i - 1]) - d) > 1e-9 * std::max(std::abs(d), 1.0)) return false;
    return true;
}

} // namespace

void write_tftm(const TfMatrix& m, const std::string& path) {
    m.validate();
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("cannot open for writing: " + path);

    nlohmann::json desc = m.descriptor_json();
    desc["interior"] = {m.interior_begin, m.interior_end};
    if (!axis_uniform(m.f_axis)) desc["_f_axis"] = m.f_axis;
    if (!axis_uniform(m.t_axis)) desc["_t_axis"] = m.t_axis;
    const std::string desc_text = desc.dump();

    put_bytes(f.get(), "TFTM", 4, path);
    const std::uint32_t version = 1;
    put_bytes(f.get(), &version, 4, path);
    const std::uint8_t kind = static_cast<std::uint8_t>(m.kind);
    const std::uint8_t is_complex = m.is_complex ? 1 : 0;
    put_bytes(f.get(), &kind, 1, path);
    put_bytes(f.get(), &is_complex, 1, path);
    const std::uint32_t nf = static_cast<std::uint32_t>(m.n_freq);
    const std::uint32_t nt = static_cast<std::uint32_t>(m.n_time);
    put_bytes(f.get(), &nf, 4, path);
    put_bytes(f.get(), &nt, 4, path);
    const double t0 = m.t_axis.front();
    const double dt = m.n_time > 1 ? m.t_axis[1] - m.t_axis[0] : 1.0;
    const double f0 = m.f_axis.front();
    const double df = m.n_freq > 1 ? m.f_axis[1] - m.f_axis[0] : 1.0;
    put_bytes(f.get(), &t0, 8, path);
    put_bytes(f.get(), &dt, 8, path);
    put_bytes(f.get(), &f0, 8, path);
    put_bytes(f.get(), &df, 8, path);
    const std::uint32_t desc_len = static_cast<std::uint32_t>(desc_text.size());
    put_bytes(f.get(), &desc_len, 4, path);
    put_bytes(f.get(), desc_text.data(), desc_text.size(), path);

    std::vector<float> buf;
    buf.reserve(m.values.size() * (m.is_complex ? 2 : 1));
    for (const auto& v : m.values) {
        buf.push_back(static_cast<float>(v.real()));
        if (m.is_complex) buf.push_back(static_cast<float>(v.imag()));
    }
    put_bytes(f.get(), buf.data(), buf.size() * sizeof(float), path);
}

TfMatrix read_tftm(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("cannot open: " + path);
    char magic[4];
    get_bytes(f.get(), magic, 4, path);
    if (std::memcmp(magic, "TFTM", 4) != 0) throw std::runtime_error("bad TFTM magic: " + path);
    std::uint32_t version = 0;
    get_bytes(f.get(), &version, 4, path);
    if (version != 1) throw std::runtime_error("unsupported TFTM version: " + path);

    TfMatrix m;
    std::uint8_t kind = 0, is_complex = 0;
    get_bytes(f.get(), &kind, 1, path);
    get_bytes(f.get(), &is_complex, 1, path);
    m.kind = static_cast<TfKind>(kind);
    m.is_complex = is_complex != 0;
    std::uint32_t nf = 0, nt = 0;
    get_bytes(f.get(), &nf, 4, path);
    get_bytes(f.get(), &nt, 4, path);
    m.n_freq = nf;
    m.n_time = nt;
    double t0, dt, f0, df;
    get_bytes(f.get(), &t0, 8, path);
    get_bytes(f.get(), &dt, 8, path);
    get_bytes(f.get(), &f0, 8, path);
    get_bytes(f.get(), &df, 8, path);
    std::uint32_t desc_len = 0;
    get_bytes(f.get(), &desc_len, 4, path);
    std::string desc_text(desc_len, '\0');
    get_bytes(f.get(), desc_text.data(), desc_len, path);

    nlohmann::json desc = nlohmann::json::parse(desc_text);
    if (desc.contains("interior")) {
        m.interior_begin = desc["interior"][0].get<std::size_t>();
        m.interior_end = desc["interior"][1].get<std::size_t>();
    }
    if (desc.contains("_f_axis")) {
        m.f_axis = desc["_f_axis"].get<std::vector<double>>();
    } else {
        m.f_axis.resize(nf);
        for (std::uint32_t i = 0; i < nf; ++i) m.f_axis[i] = f0 + df * i;
    }
    if (desc.contains("_t_axis")) {
        m.t_axis = desc["_t_axis"].get<std::vector<double>>();
    } else {
        m.t_axis.resize(nt);
        for (std::uint32_t i = 0; i < nt; ++i) m.t_axis[i] = t0 + dt * i;
    }
    desc.erase("_f_axis");
    desc.erase("_t_axis");
    m.descriptor = desc.dump();

    std::vector<float> buf(static_cast<std::size_t>(nf) * nt * (m.is_complex ? 2 : 1));
    get_bytes(f.get(), buf.data(), buf.size() * sizeof(float), path);
    m.values.resize(static_cast<std::size_t>(nf) * nt);
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        m.values[i] = m.is_complex ? cplx(buf[2 * i], buf[2 * i + 1]) : cplx(buf[i], 0.0);
    }
    m.validate();
    return m;
}

} // namespace tfc
