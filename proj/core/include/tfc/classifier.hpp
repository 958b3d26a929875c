#pragma once

#include "tfc/raster.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tfc {

enum class Split { train, val, test };

std::string split_name(Split s);
Split split_from_name(const std::string& name);

struct DatasetItem {
    RasterImage image;
    std::size_t label = 0;
    std::optional<double> snr_db;
    Split split = Split::train;
};

struct Dataset {
    std::vector<DatasetItem> items;
    std::vector<std::string> label_map;

    std::vector<const DatasetItem*> split_items(Split s) const;
};

struct Metrics {
    std::size_t n_classes = 0;
    std::vector<std::size_t> confusion; // K x K, row = true label
    double acc = 0.0;
    std::optional<double> tur; // recall on unstable (binary only)
    std::optional<double> tsr; // recall on stable (binary only)
    std::vector<double> per_class_acc;
    struct SnrCell {
        std::size_t label;
        double snr_db;
        std::size_t correct;
        std::size_t total;
    };
    std::vector<SnrCell> per_snr;

    std::size_t cm(std::size_t truth, std::size_t pred) const {
        return confusion[truth * n_classes + pred];
    }
};

enum class Arch { logreg, mlp };

struct Hyper {
    double lr = 0.05;
    std::size_t epochs = 200;
    std::size_t batch = 32;
    double l2 = 1e-4;
    std::vector<std::size_t> hidden = {64}; // mlp only
};

/// Dense softmax classifier over average-pooled image features. `weights[l]`
/// is row-major (out x in); logreg has a single layer, the MLP applies tanh
/// between hidden layers.
struct Model {
    Arch arch = Arch::logreg;
    std::vector<std::size_t> layer_sizes; // [in, hidden..., K]
    std::size_t pool_h = 16, pool_w = 16, channels = 1;
    std::vector<std::string> label_map;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
    std::uint64_t seed = 0;
    std::size_t epochs = 0;
    double lr = 0.0;
    double final_loss = 0.0;

    std::size_t n_classes() const { return label_map.size(); }
};

/// Per-channel average pooling to pool_h x pool_w, flattened channel-major.
std::vector<double> pool_features(const RasterImage& img, std::size_t pool_h, std::size_t pool_w);

/// Mini-batch gradient descent on softmax cross-entropy. Deterministic for a
/// fixed seed (seeded init, seeded shuffling, fixed summation order). Throws
/// "diverged; reduce lr" on NaN loss.
Model train(const Dataset& d, Arch arch, const Hyper& hyper, std::uint64_t seed);

/// Softmax probability vector; sums to 1 within 1e-9.
std::vector<double> predict(const Model& m, const RasterImage& img);

/// Argmax confusion metrics over the given split. Binary tasks also report
/// TUR/TSR, mapping "unstable"/"stable" labels (fallback: index 1/0).
Metrics evaluate(const Model& m, const Dataset& d, Split split);

/// Mean cross-entropy (+ L2 penalty) and its gradient over a batch of
/// (features, label) pairs; exposed so tests can check the analytic gradient
/// against finite differences.
double loss_and_grad(const Model& m, const std::vector<std::vector<double>>& xs,
                     const std::vector<std::size_t>& ys, double l2,
                     std::vector<std::vector<double>>& grad_w,
                     std::vector<std::vector<double>>& grad_b);

/// Model file: u32 header length + JSON header + f32 weight blob.
void save_model(const Model& m, const std::string& path);
Model load_model(const std::string& path);

} // namespace tfc
