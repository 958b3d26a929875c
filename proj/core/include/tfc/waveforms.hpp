#pragma once

#include "tfc/signal.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tfc {

enum class WaveformKind {
    lfm, costas, barker, fsk2, fsk4, fsk8, sfm, eqfm,
    frank, p1, p2, p3, p4, t1, t2, t3, t4, nlfm,
};

std::string waveform_kind_name(WaveformKind k);
WaveformKind waveform_kind_from_name(const std::string& name);

/// One waveform class template. Frequencies are stored as fractions of the
/// sample rate so a template is valid at any fs; [lo, hi] ranges are sampled
/// per synthesis seed. Pin a parameter by setting lo == hi.
struct WaveformSpec {
    WaveformKind kind = WaveformKind::lfm;
    std::string label;
    double fc_frac_lo = 1.0 / 6.0;  // carrier / fs
    double fc_frac_hi = 1.0 / 5.0;
    double bw_frac_lo = 1.0 / 20.0; // sweep or tone-span bandwidth / fs
    double bw_frac_hi = 1.0 / 10.0;
    std::size_t code_lo = 16;       // Nc for P3/P4/Barker-cycled/FSK chip count
    std::size_t code_hi = 64;
    std::size_t order_lo = 4;       // M for MxM codes (Frank, P1, P2)
    std::size_t order_hi = 8;
    std::size_t n_samples = 1024;

    void validate(double fs) const;
};

struct Catalog {
    std::vector<WaveformSpec> specs;
    std::vector<std::string> labels() const;
    const WaveformSpec& by_label(const std::string& label) const;
};

/// The default 18-class catalog: LFM, Costas, Barker(BPSK), 2/4/8-FSK, SFM,
/// EQFM, Frank, P1-P4, T1-T4, NLFM.
Catalog waveform_catalog();

/// Unit-mean-power complex synthesis; the seed resolves every randomized
/// parameter, so (spec, fs, seed) fully determines the output.
Signal synthesize(const WaveformSpec& spec, double fs, std::uint64_t seed);

/// Polyphase chip phase tables (radians), chip-ordered. For the MxM codes the
/// chip index runs j fastest: chip (i-1)*M + (j-1) carries phi(i, j).
std::vector<double> frank_phases(std::size_t M);
std::vector<double> p1_phases(std::size_t M);
std::vector<double> p2_phases(std::size_t M);
std::vector<double> p3_phases(std::size_t Nc);
std::vector<double> p4_phases(std::size_t Nc);

/// Polytime phase sequences sampled per chip over Nc chips with n phase
/// states and k segments (T1/T2) or sweep bandwidth in cycles-per-record
/// (T3/T4).
std::vector<double> t1_phases(std::size_t Nc, std::size_t n_states, std::size_t k_segments);
std::vector<double> t2_phases(std::size_t Nc, std::size_t n_states, std::size_t k_segments);
std::vector<double> t3_phases(std::size_t Nc, std::size_t n_states, double bw_cycles);
std::vector<double> t4_phases(std::size_t Nc, std::size_t n_states, double bw_cycles);

/// Welch-construction Costas sequence for prime p and primitive root g:
/// a_i = g^i mod p, i = 1..p-1. Values are in 1..p-1.
std::vector<int> welch_costas(int p, int g);
/// Definitional check: all values distinct and no repeated entry in any row
/// of the difference triangle.
bool is_costas(const std::vector<int>& seq);

void to_json(nlohmann::json& j, const WaveformSpec& spec);
void from_json(const nlohmann::json& j, WaveformSpec& spec);
void to_json(nlohmann::json& j, const Catalog& c);
void from_json(const nlohmann::json& j, Catalog& c);

} // namespace tfc
