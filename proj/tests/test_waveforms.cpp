#include "tfc/waveforms.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <set>

using namespace tfc;

namespace {

// Direct textbook phase laws, evaluated independently of the library.
double frank_direct(std::size_t M, std::size_t i, std::size_t j) {
    return 2.0 * M_PI / static_cast<double>(M) * static_cast<double>((i - 1) * (j - 1));
}
double p1_direct(std::size_t M, std::size_t i, std::size_t j) {
    const double Md = static_cast<double>(M);
    return -M_PI / Md * (Md + 1.0 - 2.0 * static_cast<double>(i)) *
           ((static_cast<double>(i) - 1.0) * Md + static_cast<double>(j) - 1.0);
}
double p2_direct(std::size_t M, std::size_t i, std::size_t j) {
    const double Md = static_cast<double>(M);
    return -(M_PI / (2.0 * Md)) * (2.0 * static_cast<double>(i) - 1.0 - Md) *
           (2.0 * static_cast<double>(j) - 1.0 - Md);
}
double p3_direct(std::size_t Nc, std::size_t i) {
    return M_PI / static_cast<double>(Nc) * (static_cast<double>(i) - 1.0) * (static_cast<double>(i) - 1.0);
}
double p4_direct(std::size_t Nc, std::size_t i) {
    const double id = static_cast<double>(i);
    return M_PI / static_cast<double>(Nc) * (id - 1.0) * (id - 1.0 - static_cast<double>(Nc));
}

} // namespace

TEST_CASE("Frank/P1/P2 phase tables match the direct formulas for M in {2,4,8}") {
    for (std::size_t M : {std::size_t{2}, std::size_t{4}, std::size_t{8}}) {
        const auto frank = frank_phases(M);
        const auto p1 = p1_phases(M);
        const auto p2 = p2_phases(M % 2 == 0 ? M : M + 1);
        REQUIRE(frank.size() == M * M);
        for (std::size_t i = 1; i <= M; ++i)
            for (std::size_t j = 1; j <= M; ++j) {
                const std::size_t c = (i - 1) * M + (j - 1);
                CHECK(frank[c] == frank_direct(M, i, j));
                CHECK(p1[c] == p1_direct(M, i, j));
                CHECK(p2[c] == p2_direct(M, i, j));
            }
    }
}

TEST_CASE("P3/P4 phase tables match the direct formulas") {
    for (std::size_t Nc : {std::size_t{4}, std::size_t{16}, std::size_t{64}}) {
        const auto p3 = p3_phases(Nc);
        const auto p4 = p4_phases(Nc);
        REQUIRE(p3.size() == Nc);
        for (std::size_t i = 1; i <= Nc; ++i) {
            // The oracle multiplies in a different order, so allow rounding
            // at the last few bits.
            CHECK(p3[i - 1] == doctest::Approx(p3_direct(Nc, i)).epsilon(1e-14));
            CHECK(p4[i - 1] == doctest::Approx(p4_direct(Nc, i)).epsilon(1e-14));
        }
    }
}

TEST_CASE("Welch Costas sequences pass the difference-triangle test") {
    for (auto [p, g] : {std::pair{11, 2}, {13, 2}, {17, 3}, {19, 2}}) {
        const auto seq = welch_costas(p, g);
        REQUIRE(seq.size() == static_cast<std::size_t>(p - 1));
        CHECK(std::set<int>(seq.begin(), seq.end()).size() == seq.size());
        CHECK(is_costas(seq));
    }
    // Corrupting one hop breaks the property.
    auto bad = welch_costas(11, 2);
    bad[2] = bad[5];
    CHECK_FALSE(is_costas(bad));
    CHECK_FALSE(is_costas({1, 2, 3, 4})); // arithmetic ramp repeats differences
}

TEST_CASE("all 18 catalog entries synthesize at unit mean power") {
    const Catalog catalog = waveform_catalog();
    REQUIRE(catalog.specs.size() == 18);
    for (const auto& spec : catalog.specs)
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            const Signal s = synthesize(spec, 100e3, seed);
            CHECK(s.size() == spec.n_samples);
            CHECK(std::abs(s.mean_power() - 1.0) < 1e-9);
            // Constant modulus everywhere for the phase/frequency coded kinds.
            s.validate();
        }
}

TEST_CASE("synthesis is deterministic in (spec, fs, seed)") {
    const Catalog catalog = waveform_catalog();
    const auto& spec = catalog.by_label("P3");
    const Signal a = synthesize(spec, 100e3, 9);
    const Signal b = synthesize(spec, 100e3, 9);
    CHECK(a.samples == b.samples); // bitwise
    const Signal c = synthesize(spec, 100e3, 10);
    CHECK_FALSE(a.samples == c.samples);
}

TEST_CASE("catalog labels are the published 18 and lookup works") {
    const Catalog catalog = waveform_catalog();
    const std::vector<std::string> expected = {"LFM", "Costas", "Barker", "2FSK", "4FSK", "8FSK",
                                               "SFM", "EQFM",   "Frank",  "P1",   "P2",   "P3",
                                               "P4",  "T1",     "T2",     "T3",   "T4",   "NLFM"};
    CHECK(catalog.labels() == expected);
    CHECK(catalog.by_label("Frank").kind == WaveformKind::frank);
    CHECK_THROWS_AS(catalog.by_label("QAM"), std::invalid_argument);
}

TEST_CASE("spec validation rejects out-of-band parameters") {
    WaveformSpec spec = waveform_catalog().by_label("LFM");
    spec.fc_frac_hi = 0.7; // beyond Nyquist once bandwidth is added
    CHECK_THROWS_AS(spec.validate(100e3), std::invalid_argument);
    spec = waveform_catalog().by_label("P3");
    spec.code_lo = 0;
    CHECK_THROWS_AS(spec.validate(100e3), std::invalid_argument);
}

TEST_CASE("catalog JSON round trip preserves every field") {
    const Catalog catalog = waveform_catalog();
    nlohmann::json j = catalog;
    const Catalog back = j.get<Catalog>();
    REQUIRE(back.specs.size() == catalog.specs.size());
    for (std::size_t i = 0; i < catalog.specs.size(); ++i) {
        CHECK(back.specs[i].kind == catalog.specs[i].kind);
        CHECK(back.specs[i].label == catalog.specs[i].label);
        CHECK(back.specs[i].fc_frac_lo == catalog.specs[i].fc_frac_lo);
        CHECK(back.specs[i].code_hi == catalog.specs[i].code_hi);
        CHECK(back.specs[i].n_samples == catalog.specs[i].n_samples);
    }
}

TEST_CASE("polytime sequences quantize to the requested number of phase states") {
    const auto t1 = t1_phases(64, 2, 4);
    for (double ph : t1) {
        const double steps = ph / (2.0 * M_PI / 2.0);
        CHECK(std::abs(steps - std::round(steps)) < 1e-9);
    }
    const auto t3 = t3_phases(64, 4, 8.0);
    for (double ph : t3) {
        const double steps = ph / (2.0 * M_PI / 4.0);
        CHECK(std::abs(steps - std::round(steps)) < 1e-9);
    }
}
