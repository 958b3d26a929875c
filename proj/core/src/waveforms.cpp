#include "tfc/waveforms.hpp"

#include "tfc/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace tfc {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

std::string waveform_kind_name(WaveformKind k) {
    switch (k) {
        case WaveformKind::lfm: return "LFM";
        case WaveformKind::costas: return "Costas";
        case WaveformKind::barker: return "Barker";
        case WaveformKind::fsk2: return "2FSK";
        case WaveformKind::fsk4: return "4FSK";
        case WaveformKind::fsk8: return "8FSK";
        case WaveformKind::sfm: return "SFM";
        case WaveformKind::eqfm: return "EQFM";
        case WaveformKind::frank: return "Frank";
        case WaveformKind::p1: return "P1";
        case WaveformKind::p2: return "P2";
        case WaveformKind::p3: return "P3";
        case WaveformKind::p4: return "P4";
        case WaveformKind::t1: return "T1";
        case WaveformKind::t2: return "T2";
        case WaveformKind::t3: return "T3";
        case WaveformKind::t4: return "T4";
        case WaveformKind::nlfm: return "NLFM";
    }
    throw std::logic_error("unreachable waveform kind");
}

WaveformKind waveform_kind_from_name(const std::string& name) {
    for (int k = 0; k <= static_cast<int>(WaveformKind::nlfm); ++k)
        if (waveform_kind_name(static_cast<WaveformKind>(k)) == name)
            return static_cast<WaveformKind>(k);
    throw std::invalid_argument("unknown waveform kind: " + name);
}

void WaveformSpec::validate(double fs) const {
    if (!(fs > 0.0)) throw std::invalid_argument("waveform: fs must be > 0");
    if (n_samples < 16) throw std::invalid_argument("waveform: n_samples too small");
    if (!(fc_frac_lo > 0.0 && fc_frac_hi >= fc_frac_lo))
        throw std::invalid_argument("waveform: bad fc range");
    if (!(bw_frac_lo >= 0.0 && bw_frac_hi >= bw_frac_lo))
        throw std::invalid_argument("waveform: bad bandwidth range");
    if (fc_frac_hi + bw_frac_hi >= 0.5)
        throw std::invalid_argument("waveform: fc + bandwidth exceeds Nyquist (parameter fc/bandwidth)");
    if (code_lo < 1 || code_hi < code_lo) throw std::invalid_argument("waveform: bad code length range (parameter Nc)");
    if (order_lo < 1 || order_hi < order_lo) throw std::invalid_argument("waveform: bad code order range (parameter M)");
}

std::vector<double> frank_phases(std::size_t M) {
    std::vector<double> phi(M * M);
    for (std::size_t i = 1; i <= M; ++i)
        for (std::size_t j = 1; j <= M; ++j)
            phi[(i - 1) * M + (j - 1)] =
                kTwoPi * static_cast<double>((i - 1) * (j - 1)) / static_cast<double>(M);
    return phi;
}

std::vector<double> p1_phases(std::size_t M) {
    std::vector<double> phi(M * M);
    const double Md = static_cast<double>(M);
    for (std::size_t i = 1; i <= M; ++i)
        for (std::size_t j = 1; j <= M; ++j)
            phi[(i - 1) * M + (j - 1)] =
                -(M_PI / Md) * (Md - (2.0 * i - 1.0)) * ((i - 1.0) * Md + (j - 1.0));
    return phi;
}

std::vector<double> p2_phases(std::size_t M) {
    std::vector<double> phi(M * M);
    const double Md = static_cast<double>(M);
    for (std::size_t i = 1; i <= M; ++i)
        for (std::size_t j = 1; j <= M; ++j)
            phi[(i - 1) * M + (j - 1)] =
                -(M_PI / (2.0 * Md)) * (2.0 * i - 1.0 - Md) * (2.0 * j - 1.0 - Md);
    return phi;
}

std::vector<double> p3_phases(std::size_t Nc) {
    std::vector<double> phi(Nc);
    for (std::size_t i = 1; i <= Nc; ++i)
        phi[i - 1] = M_PI * static_cast<double>((i - 1) * (i - 1)) / static_cast<double>(Nc);
    return phi;
}

std::vector<double> p4_phases(std::size_t Nc) {
    std::vector<double> phi(Nc);
    for (std::size_t i = 1; i <= Nc; ++i)
        phi[i - 1] = M_PI * static_cast<double>((i - 1) * (i - 1)) / static_cast<double>(Nc) -
                     M_PI * static_cast<double>(i - 1);
    return phi;
}

std::vector<double> t1_phases(std::size_t Nc, std::size_t n_states, std::size_t k_segments) {
    std::vector<double> phi(Nc);
    const double n = static_cast<double>(n_states);
    const double k = static_cast<double>(k_segments);
    for (std::size_t c = 0; c < Nc; ++c) {
        const double t = static_cast<double>(c) / static_cast<double>(Nc); // t/T in [0,1)
        const double j = std::floor(k * t);
        phi[c] = std::fmod((kTwoPi / n) * std::floor((k * t - j) * j * n), kTwoPi);
    }
    return phi;
}

std::vector<double> t2_phases(std::size_t Nc, std::size_t n_states, std::size_t k_segments) {
    std::vector<double> phi(Nc);
    const double n = static_cast<double>(n_states);
    const double k = static_cast<double>(k_segments);
    for (std::size_t c = 0; c < Nc; ++c) {
        const double t = static_cast<double>(c) / static_cast<double>(Nc);
        const double j = std::floor(k * t);
        const double raw =
            (kTwoPi / n) * std::floor((k * t - j) * (2.0 * j - k + 1.0) * n / 2.0);
        phi[c] = std::fmod(std::fmod(raw, kTwoPi) + kTwoPi, kTwoPi);
    }
    return phi;
}

std::vector<double> t3_phases(std::size_t Nc, std::size_t n_states, double bw_cycles) {
    std::vector<double> phi(Nc);
    const double n = static_cast<double>(n_states);
    for (std::size_t c = 0; c < Nc; ++c) {
        const double t = static_cast<double>(c) / static_cast<double>(Nc);
        phi[c] = std::fmod((kTwoPi / n) * std::floor(n * bw_cycles * t * t / 2.0), kTwoPi);
    }
    return phi;
}

std::vector<double> t4_phases(std::size_t Nc, std::size_t n_states, double bw_cycles) {
    std::vector<double> phi(Nc);
    const double n = static_cast<double>(n_states);
    for (std::size_t c = 0; c < Nc; ++c) {
        const double t = static_cast<double>(c) / static_cast<double>(Nc);
        const double raw =
            (kTwoPi / n) * std::floor(n * bw_cycles * t * t / 2.0 - n * bw_cycles * t / 2.0);
        phi[c] = std::fmod(std::fmod(raw, kTwoPi) + kTwoPi, kTwoPi);
    }
    return phi;
}

std::vector<int> welch_costas(int p, int g) {
    if (p < 3) throw std::invalid_argument("welch_costas: p must be an odd prime");
    std::vector<int> seq(static_cast<std::size_t>(p - 1));
    long long v = 1;
    for (int i = 1; i < p; ++i) {
        v = (v * g) % p;
        seq[static_cast<std::size_t>(i - 1)] = static_cast<int>(v);
    }
    return seq;
}

bool is_costas(const std::vector<int>& seq) {
    const std::size_t n = seq.size();
    if (n < 2) return false;
    std::set<int> uniq(seq.begin(), seq.end());
    if (uniq.size() != n) return false;
    for (std::size_t d = 1; d < n; ++d) {
        std::set<int> diffs;
        for (std::size_t i = 0; i + d < n; ++i)
            if (!diffs.insert(seq[i + d] - seq[i]).second) return false;
    }
    return true;
}

namespace {

// Primes with known small primitive roots, giving Costas orders p-1.
struct WelchPrime {
    int p;
    int roots[4];
};
constexpr WelchPrime kWelchPrimes[] = {
    {11, {2, 6, 7, 8}},
    {13, {2, 6, 7, 11}},
    {17, {3, 5, 6, 7}},
    {19, {2, 3, 10, 13}},
};

const int kBarker13[] = {1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1};

// Phase-coded carrier: chip index cycles through the code.
void fill_phase_coded(std::vector<cplx>& x, double fc_norm, const std::vector<double>& chip_phi,
                      std::size_t subpulse) {
    const std::size_t n_chips = chip_phi.size();
    for (std::size_t n = 0; n < x.size(); ++n) {
        const std::size_t chip = (n / subpulse) % n_chips;
        x[n] = std::polar(1.0, kTwoPi * fc_norm * static_cast<double>(n) + chip_phi[chip]);
    }
}

} // namespace

Signal synthesize(const WaveformSpec& spec, double fs, std::uint64_t seed) {
    spec.validate(fs);
    CounterRng rng(seed);
    const std::size_t N = spec.n_samples;
    const double fc = rng.uniform(spec.fc_frac_lo, spec.fc_frac_hi); // normalized: cycles/sample
    const double bw = rng.uniform(spec.bw_frac_lo, spec.bw_frac_hi);
    const double T = static_cast<double>(N);

    std::vector<cplx> x(N);
    switch (spec.kind) {
        case WaveformKind::lfm: {
            for (std::size_t n = 0; n < N; ++n) {
                const double t = static_cast<double>(n);
                x[n] = std::polar(1.0, kTwoPi * (fc * t + bw * t * t / (2.0 * T)));
            }
            break;
        }
        case WaveformKind::nlfm: {
            // S-shaped sweep: f(t) = fc + bw*(t/T - sin(2*pi*t/T)/(2*pi)).
            for (std::size_t n = 0; n < N; ++n) {
                const double t = static_cast<double>(n);
                const double phase =
                    kTwoPi * (fc * t +
                              bw * (t * t / (2.0 * T) +
                                    T * (std::cos(kTwoPi * t / T) - 1.0) / (4.0 * M_PI * M_PI)));
                x[n] = std::polar(1.0, phase);
            }
            break;
        }
        case WaveformKind::sfm: {
            // f(t) = fc + (bw/2)*(1 - cos(2*pi*fm*t)), two modulation cycles.
            const double fm = 2.0 / T;
            for (std::size_t n = 0; n < N; ++n) {
                const double t = static_cast<double>(n);
                const double phase =
                    kTwoPi * (fc * t + (bw / 2.0) * (t - std::sin(kTwoPi * fm * t) / (kTwoPi * fm)));
                x[n] = std::polar(1.0, phase);
            }
            break;
        }
        case WaveformKind::eqfm: {
            // f(t) = fc + bw*(2t/T - 1)^2: V-shaped even quadratic sweep.
            for (std::size_t n = 0; n < N; ++n) {
                const double t = static_cast<double>(n);
                const double poly = 4.0 * t * t * t / (3.0 * T * T) - 2.0 * t * t / T + t;
                x[n] = std::polar(1.0, kTwoPi * (fc * t + bw * poly));
            }
            break;
        }
        case WaveformKind::costas: {
            const auto& wp = kWelchPrimes[rng.uniform_int(0, 3)];
            const int root = wp.roots[rng.uniform_int(0, 3)];
            const std::vector<int> hops = welch_costas(wp.p, root);
            const std::size_t n_hops = hops.size();
            const std::size_t chip = std::max<std::size_t>(1, N / n_hops);
            for (std::size_t n = 0; n < N; ++n) {
                const std::size_t h = (n / chip) % n_hops;
                const double f = fc + bw * static_cast<double>(hops[h] - 1) / static_cast<double>(wp.p - 1);
                x[n] = std::polar(1.0, kTwoPi * f * static_cast<double>(n));
            }
            break;
        }
        case WaveformKind::barker: {
            std::vector<double> phi(13);
            for (std::size_t i = 0; i < 13; ++i) phi[i] = kBarker13[i] > 0 ? 0.0 : M_PI;
            fill_phase_coded(x, fc, phi, std::max<std::size_t>(1, N / 13));
            break;
        }
        case WaveformKind::fsk2:
        case WaveformKind::fsk4:
        case WaveformKind::fsk8: {
            const std::size_t M = spec.kind == WaveformKind::fsk2   ? 2
                                  : spec.kind == WaveformKind::fsk4 ? 4
                                                                    : 8;
            const std::size_t n_chips =
                std::clamp<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(spec.code_lo),
                                                        static_cast<std::int64_t>(spec.code_hi)),
                                        1, N);
            std::vector<std::size_t> tones(n_chips);
            for (auto& t : tones) t = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(M) - 1));
            const std::size_t chip = std::max<std::size_t>(1, N / n_chips);
            for (std::size_t n = 0; n < N; ++n) {
                const std::size_t c = (n / chip) % n_chips;
                const double f = fc + bw * static_cast<double>(tones[c]) / static_cast<double>(M - 1);
                x[n] = std::polar(1.0, kTwoPi * f * static_cast<double>(n));
            }
            break;
        }
        case WaveformKind::frank:
        case WaveformKind::p1:
        case WaveformKind::p2: {
            std::size_t M = static_cast<std::size_t>(
                rng.uniform_int(static_cast<std::int64_t>(spec.order_lo), static_cast<std::int64_t>(spec.order_hi)));
            if (spec.kind == WaveformKind::p2 && M % 2 != 0) M += 1; // P2 wants even M
            const std::vector<double> phi = spec.kind == WaveformKind::frank ? frank_phases(M)
                                            : spec.kind == WaveformKind::p1  ? p1_phases(M)
                                                                             : p2_phases(M);
            fill_phase_coded(x, fc, phi, std::max<std::size_t>(1, N / phi.size()));
            break;
        }
        case WaveformKind::p3:
        case WaveformKind::p4: {
            const std::size_t Nc = static_cast<std::size_t>(
                rng.uniform_int(static_cast<std::int64_t>(spec.code_lo), static_cast<std::int64_t>(spec.code_hi)));
            const std::vector<double> phi =
                spec.kind == WaveformKind::p3 ? p3_phases(Nc) : p4_phases(Nc);
            fill_phase_coded(x, fc, phi, std::max<std::size_t>(1, N / Nc));
            break;
        }
        case WaveformKind::t1:
        case WaveformKind::t2: {
            const std::size_t n_states = static_cast<std::size_t>(rng.uniform_int(2, 4));
            const std::size_t k_seg = static_cast<std::size_t>(rng.uniform_int(4, 6));
            const std::size_t Nc = static_cast<std::size_t>(
                rng.uniform_int(static_cast<std::int64_t>(spec.code_lo), static_cast<std::int64_t>(spec.code_hi)));
            const std::vector<double> phi = spec.kind == WaveformKind::t1
                                                ? t1_phases(Nc, n_states, k_seg)
                                                : t2_phases(Nc, n_states, k_seg);
            fill_phase_coded(x, fc, phi, std::max<std::size_t>(1, N / Nc));
            break;
        }
        case WaveformKind::t3:
        case WaveformKind::t4: {
            const std::size_t n_states = static_cast<std::size_t>(rng.uniform_int(2, 4));
            const std::size_t Nc = static_cast<std::size_t>(
                rng.uniform_int(static_cast<std::int64_t>(spec.code_lo), static_cast<std::int64_t>(spec.code_hi)));
            const double bw_cycles = bw * T; // sweep cycles over the record
            const std::vector<double> phi = spec.kind == WaveformKind::t3
                                                ? t3_phases(Nc, n_states, bw_cycles)
                                                : t4_phases(Nc, n_states, bw_cycles);
            fill_phase_coded(x, fc, phi, std::max<std::size_t>(1, N / Nc));
            break;
        }
    }

    Signal out;
    out.samples = std::move(x);
    out.fs = fs;
    out.is_complex = true;
    out.label = spec.label.empty() ? waveform_kind_name(spec.kind) : spec.label;
    const double p = out.mean_power();
    const double scale = 1.0 / std::sqrt(p);
    for (auto& v : out.samples) v *= scale;
    return out;
}

Catalog waveform_catalog() {
    Catalog c;
    for (int k = 0; k <= static_cast<int>(WaveformKind::nlfm); ++k) {
        WaveformSpec spec;
        spec.kind = static_cast<WaveformKind>(k);
        spec.label = waveform_kind_name(spec.kind);
        c.specs.push_back(spec);
    }
    return c;
}

std::vector<std::string> Catalog::labels() const {
    std::vector<std::string> out;
    out.reserve(specs.size());
    for (const auto& s : specs) out.push_back(s.label);
    return out;
}

const WaveformSpec& Catalog::by_label(const std::string& label) const {
    for (const auto& s : specs)
        if (s.label == label) return s;
    throw std::invalid_argument("catalog: no waveform labelled " + label);
}

void to_json(nlohmann::json& j, const WaveformSpec& spec) {
    j = nlohmann::json{
        {"kind", waveform_kind_name(spec.kind)},
        {"label", spec.label},
        {"fc_frac", {spec.fc_frac_lo, spec.fc_frac_hi}},
        {"bw_frac", {spec.bw_frac_lo, spec.bw_frac_hi}},
        {"code", {spec.code_lo, spec.code_hi}},
        {"order", {spec.order_lo, spec.order_hi}},
        {"n_samples", spec.n_samples},
    };
}

void from_json(const nlohmann::json& j, WaveformSpec& spec) {
    spec.kind = waveform_kind_from_name(j.at("kind").get<std::string>());
    spec.label = j.value("label", waveform_kind_name(spec.kind));
    if (j.contains("fc_frac")) {
        spec.fc_frac_lo = j["fc_frac"][0];
        spec.fc_frac_hi = j["fc_frac"][1];
    }
    if (j.contains("bw_frac")) {
        spec.bw_frac_lo = j["bw_frac"][0];
        spec.bw_frac_hi = j["bw_frac"][1];
    }
    if (j.contains("code")) {
        spec.code_lo = j["code"][0];
        spec.code_hi = j["code"][1];
    }
    if (j.contains("order")) {
        spec.order_lo = j["order"][0];
        spec.order_hi = j["order"][1];
    }
    spec.n_samples = j.value("n_samples", std::size_t{1024});
}

void to_json(nlohmann::json& j, const Catalog& c) {
    j = nlohmann::json::array();
    for (const auto& s : c.specs) j.push_back(s);
}

void from_json(const nlohmann::json& j, Catalog& c) {
    c.specs = j.get<std::vector<WaveformSpec>>();
}

} // namespace tfc
