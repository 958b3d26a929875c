#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tfc/raster.hpp"
#include "tfc/signal.hpp"
#include "tfc/tfmatrix.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(TFC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "tfc_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("synth -> transform -> render pipeline succeeds with exit 0") {
    const auto dir = scratch_dir();
    const std::string sig = (dir / "x.tfsg").string();
    const std::string mat = (dir / "x.tftm").string();
    CHECK(run("synth --label Frank --seed 4 --snr 6 --out " + sig) == 0);
    const tfc::Signal s = tfc::read_tfsg(sig);
    CHECK(s.size() == 1024);

    CHECK(run("transform --method fsst --input " + sig + " --out " + mat) == 0);
    const tfc::TfMatrix m = tfc::read_tftm(mat);
    CHECK(m.kind == tfc::TfKind::fsst);
    CHECK(m.n_time == 1024);

    const std::string png = (dir / "x.png").string();
    const std::string ten = (dir / "x.tftn").string();
    CHECK(run("render --input " + mat + " --out " + png) == 0);
    CHECK(run("render --input " + mat + " --out " + ten + " --scaling linear --height 64 --width 64") == 0);
    CHECK(fs::file_size(png) > 8);
    const tfc::RasterImage img = tfc::read_tftn(ten);
    CHECK(img.height == 64);
    fs::remove_all(dir);
}

TEST_CASE("imaging methods are reachable through the transform subcommand") {
    const auto dir = scratch_dir();
    const std::string sig = (dir / "x.tfsg").string();
    REQUIRE(run("synth --label LFM --seed 1 --out " + sig) == 0);
    for (const char* method : {"stft", "wvd", "cwt", "rp", "gadf", "dwt"}) {
        const std::string mat = (dir / (std::string(method) + ".tftm")).string();
        CHECK(run(std::string("transform --method ") + method + " --input " + sig + " --out " + mat) == 0);
    }
    fs::remove_all(dir);
}

TEST_CASE("validation failures exit 1, I/O failures exit 2") {
    const auto dir = scratch_dir();
    const std::string sig = (dir / "x.tfsg").string();
    REQUIRE(run("synth --label LFM --seed 1 --out " + sig) == 0);
    CHECK(run("transform --method bogus --input " + sig + " --out " + (dir / "y.tftm").string()) == 1);
    CHECK(run("synth --label QAM --out " + (dir / "z.tfsg").string()) == 1);
    CHECK(run("transform --method fsst --input " + (dir / "missing.tfsg").string() + " --out " +
              (dir / "y.tftm").string()) == 2);
    CHECK(run("nonsense") == 1);
    CHECK(run("transform --what x") == 1);
    fs::remove_all(dir);
}

TEST_CASE("dataset/train/eval workflow runs end to end") {
    const auto dir = scratch_dir();
    const std::string cfg = (dir / "cfg.json").string();
    std::ofstream(cfg) << R"({"kind":"radar","master_seed":3,"n_per_class":4,
        "snr_grid_db":[10.0],"transform":{"method":"stft"},
        "raster":{"height":32,"width":32},"n_threads":0})";
    const std::string ds = (dir / "ds").string();
    CHECK(run("dataset --config " + cfg + " --out " + ds) == 0);
    CHECK(run("dataset --validate " + ds + "/manifest.json") == 0);
    const std::string model = (dir / "m.tfcm").string();
    CHECK(run("train --manifest " + ds + "/manifest.json --arch logreg --epochs 40 --seed 1 --out " +
              model) == 0);
    const std::string metrics = (dir / "metrics.json").string();
    CHECK(run("eval --manifest " + ds + "/manifest.json --model " + model +
              " --split train --out " + metrics) == 0);
    CHECK(fs::exists(metrics));

    std::ofstream(cfg) << R"({"kind":"radar","transform":{"method":"wigner"}})";
    CHECK(run("dataset --config " + cfg + " --out " + ds) == 1);
    fs::remove_all(dir);
}

TEST_CASE("pipeline sweep emits CSV and confusion artifacts") {
    const auto dir = scratch_dir();
    const std::string cfg = (dir / "p.json").string();
    std::ofstream(cfg) << R"({"seed":5,
        "desk_train":{"n_per_class":2,"snr_grid_db":[10.0],"epochs":20,"n_threads":0},
        "sweep":{"snr_grid_db":[10.0],"n_per_class":1,"n_threads":0}})";
    const std::string rep = (dir / "report").string();
    CHECK(run("pipeline sweep --config " + cfg + " --out " + rep) == 0);
    CHECK(fs::exists(rep + "/sweep.csv"));
    CHECK(fs::exists(rep + "/confusions.json"));
    std::ifstream csv(rep + "/sweep.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "class,snr_db,accuracy,method");
    fs::remove_all(dir);
}

TEST_CASE("tsa run writes metrics and the condition grid") {
    const auto dir = scratch_dir();
    const std::string out = (dir / "tsa").string();
    CHECK(run("tsa run --imaging gadf --cases 40 --seed 2 --out " + out) == 0);
    CHECK(fs::exists(out + "/metrics.json"));
    fs::remove_all(dir);
}
