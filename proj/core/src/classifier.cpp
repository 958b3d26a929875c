#include "tfc/classifier.hpp"

#include "tfc/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace tfc {

std::string split_name(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::val: return "val";
        case Split::test: return "test";
    }
    throw std::logic_error("unreachable split");
}

Split split_from_name(const std::string& name) {
    if (name == "train") return Split::train;
    if (name == "val") return Split::val;
    if (name == "test") return Split::test;
    throw std::invalid_argument("unknown split: " + name);
}

std::vector<const DatasetItem*> Dataset::split_items(Split s) const {
    std::vector<const DatasetItem*> out;
    for (const auto& it : items)
        if (it.split == s) out.push_back(&it);
    return out;
}

std::vector<double> pool_features(const RasterImage& img, std::size_t pool_h, std::size_t pool_w) {
    img.validate();
    std::vector<double> out(pool_h * pool_w * img.channels, 0.0);
    for (std::size_t py = 0; py < pool_h; ++py) {
        const std::size_t y0 = py * img.height / pool_h;
        const std::size_t y1 = (py + 1) * img.height / pool_h;
        for (std::size_t px = 0; px < pool_w; ++px) {
            const std::size_t x0 = px * img.width / pool_w;
            const std::size_t x1 = (px + 1) * img.width / pool_w;
            for (std::size_t c = 0; c < img.channels; ++c) {
                double acc = 0.0;
                for (std::size_t y = y0; y < y1; ++y)
                    for (std::size_t x = x0; x < x1; ++x) acc += img.at(y, x, c);
                const std::size_t count = (y1 - y0) * (x1 - x0);
                out[(py * pool_w + px) * img.channels + c] = count ? acc / static_cast<double>(count) : 0.0;
            }
        }
    }
    return out;
}

namespace {

void softmax_inplace(std::vector<double>& z) {
    const double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (auto& v : z) {
        v = std::exp(v - zmax);
        sum += v;
    }
    for (auto& v : z) v /= sum;
}

// Forward pass keeping per-layer activations (activations[0] = input).
std::vector<std::vector<double>> forward(const Model& m, const std::vector<double>& x) {
    std::vector<std::vector<double>> acts;
    acts.push_back(x);
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        const std::size_t in = m.layer_sizes[l];
        const std::size_t out = m.layer_sizes[l + 1];
        std::vector<double> z(out, 0.0);
        for (std::size_t o = 0; o < out; ++o) {
            double acc = m.biases[l][o];
            const double* wrow = m.weights[l].data() + o * in;
            for (std::size_t i = 0; i < in; ++i) acc += wrow[i] * acts.back()[i];
            z[o] = acc;
        }
        const bool last = l + 1 == m.weights.size();
        if (!last)
            for (auto& v : z) v = std::tanh(v);
        acts.push_back(std::move(z));
    }
    softmax_inplace(acts.back());
    return acts;
}

} // namespace

std::vector<double> predict(const Model& m, const RasterImage& img) {
    if (img.channels != m.channels)
        throw std::invalid_argument("predict: channel count mismatch");
    const std::vector<double> x = pool_features(img, m.pool_h, m.pool_w);
    if (x.size() != m.layer_sizes.front())
        throw std::invalid_argument("predict: feature size mismatch");
    return forward(m, x).back();
}

double loss_and_grad(const Model& m, const std::vector<std::vector<double>>& xs,
                     const std::vector<std::size_t>& ys, double l2,
                     std::vector<std::vector<double>>& grad_w,
                     std::vector<std::vector<double>>& grad_b) {
    const std::size_t B = xs.size();
    if (B == 0 || ys.size() != B) throw std::invalid_argument("loss_and_grad: empty or mismatched batch");
    grad_w.resize(m.weights.size());
    grad_b.resize(m.biases.size());
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        grad_w[l].assign(m.weights[l].size(), 0.0);
        grad_b[l].assign(m.biases[l].size(), 0.0);
    }

    double loss = 0.0;
    for (std::size_t b = 0; b < B; ++b) {
        const auto acts = forward(m, xs[b]);
        const auto& p = acts.back();
        loss += -std::log(std::max(p[ys[b]], 1e-300));

        // delta at the output: softmax + cross-entropy.
        std::vector<double> delta = p;
        delta[ys[b]] -= 1.0;
        for (std::size_t l = m.weights.size(); l-- > 0;) {
            const std::size_t in = m.layer_sizes[l];
            const std::size_t out = m.layer_sizes[l + 1];
            for (std::size_t o = 0; o < out; ++o) {
                grad_b[l][o] += delta[o];
                double* grow = grad_w[l].data() + o * in;
                for (std::size_t i = 0; i < in; ++i) grow[i] += delta[o] * acts[l][i];
            }
            if (l > 0) {
                std::vector<double> prev(in, 0.0);
                for (std::size_t i = 0; i < in; ++i) {
                    double acc = 0.0;
                    for (std::size_t o = 0; o < out; ++o)
                        acc += m.weights[l][o * in + i] * delta[o];
                    // activation of layer l is tanh; acts[l] holds tanh(z)
                    prev[i] = acc * (1.0 - acts[l][i] * acts[l][i]);
                }
                delta = std::move(prev);
            }
        }
    }

    const double inv_b = 1.0 / static_cast<double>(B);
    loss *= inv_b;
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        for (std::size_t i = 0; i < grad_w[l].size(); ++i) {
            grad_w[l][i] = grad_w[l][i] * inv_b + l2 * m.weights[l][i];
        }
        for (auto& v : grad_b[l]) v *= inv_b;
    }
    double penalty = 0.0;
    for (const auto& w : m.weights)
        for (double v : w) penalty += v * v;
    loss += 0.5 * l2 * penalty;
    return loss;
}

Model train(const Dataset& d, Arch arch, const Hyper& hyper, std::uint64_t seed) {
    const auto train_items = d.split_items(Split::train);
    if (train_items.empty()) throw std::invalid_argument("train: empty train split");
    const std::size_t K = d.label_map.size();
    if (K < 2) throw std::invalid_argument("train: need at least 2 classes");
    for (const auto* it : train_items)
        if (it->label >= K) throw std::invalid_argument("train: label outside map");

    Model m;
    m.arch = arch;
    m.channels = train_items.front()->image.channels;
    m.label_map = d.label_map;
    m.seed = seed;
    m.epochs = hyper.epochs;
    m.lr = hyper.lr;
    const std::size_t D = m.pool_h * m.pool_w * m.channels;
    m.layer_sizes = {D};
    if (arch == Arch::mlp)
        for (std::size_t h : hyper.hidden) m.layer_sizes.push_back(h);
    m.layer_sizes.push_back(K);

    CounterRng rng(seed);
    for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
        const std::size_t in = m.layer_sizes[l], out = m.layer_sizes[l + 1];
        const double scale = 1.0 / std::sqrt(static_cast<double>(in));
        std::vector<double> w(in * out);
        for (auto& v : w) v = scale * rng.next_gaussian();
        m.weights.push_back(std::move(w));
        m.biases.emplace_back(out, 0.0);
    }

    // Features cached once; order fixed by the dataset.
    std::vector<std::vector<double>> xs;
    std::vector<std::size_t> ys;
    xs.reserve(train_items.size());
    for (const auto* it : train_items) {
        xs.push_back(pool_features(it->image, m.pool_h, m.pool_w));
        ys.push_back(it->label);
    }

    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::vector<double>> gw, gb;
    double last_loss = 0.0;
    for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
        // Fisher-Yates with the counter rng: deterministic per (seed, epoch).
        CounterRng shuffle_rng(seed ^ 0x5bf03635u, epoch + 1);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1],
                      order[static_cast<std::size_t>(shuffle_rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);

        double epoch_loss = 0.0;
        std::size_t n_batches = 0;
        for (std::size_t start = 0; start < order.size(); start += hyper.batch) {
            const std::size_t stop = std::min(order.size(), start + hyper.batch);
            std::vector<std::vector<double>> bx;
            std::vector<std::size_t> by;
            for (std::size_t i = start; i < stop; ++i) {
                bx.push_back(xs[order[i]]);
                by.push_back(ys[order[i]]);
            }
            const double loss = loss_and_grad(m, bx, by, hyper.l2, gw, gb);
            if (!std::isfinite(loss)) throw std::runtime_error("train: diverged; reduce lr");
            epoch_loss += loss;
            ++n_batches;
            for (std::size_t l = 0; l < m.weights.size(); ++l) {
                for (std::size_t i = 0; i < m.weights[l].size(); ++i)
                    m.weights[l][i] -= hyper.lr * gw[l][i];
                for (std::size_t i = 0; i < m.biases[l].size(); ++i)
                    m.biases[l][i] -= hyper.lr * gb[l][i];
            }
        }
        last_loss = epoch_loss / static_cast<double>(n_batches);
    }
    m.final_loss = last_loss;
    return m;
}

Metrics evaluate(const Model& m, const Dataset& d, Split split) {
    const auto items = d.split_items(split);
    if (items.empty()) throw std::invalid_argument("evaluate: empty split");
    const std::size_t K = m.n_classes();

    Metrics metrics;
    metrics.n_classes = K;
    metrics.confusion.assign(K * K, 0);

    std::map<std::pair<std::size_t, long long>, std::pair<std::size_t, std::size_t>> snr_cells;
    for (const auto* it : items) {
        if (it->label >= K) throw std::invalid_argument("evaluate: label outside map");
        const auto probs = predict(m, it->image);
        const std::size_t pred = static_cast<std::size_t>(
            std::max_element(probs.begin(), probs.end()) - probs.begin());
        metrics.confusion[it->label * K + pred] += 1;
        if (it->snr_db) {
            // Keyed on centi-dB so float SNRs group exactly.
            const long long snr_key = std::llround(*it->snr_db * 100.0);
            auto& cell = snr_cells[{it->label, snr_key}];
            cell.second += 1;
            if (pred == it->label) cell.first += 1;
        }
    }

    std::size_t total = 0, correct = 0;
    metrics.per_class_acc.assign(K, 0.0);
    for (std::size_t t = 0; t < K; ++t) {
        std::size_t row = 0;
        for (std::size_t p = 0; p < K; ++p) row += metrics.confusion[t * K + p];
        total += row;
        correct += metrics.confusion[t * K + t];
        metrics.per_class_acc[t] =
            row ? static_cast<double>(metrics.confusion[t * K + t]) / static_cast<double>(row) : 0.0;
    }
    metrics.acc = static_cast<double>(correct) / static_cast<double>(total);

    if (K == 2) {
        std::size_t unstable = 1, stable = 0;
        for (std::size_t i = 0; i < 2; ++i) {
            if (m.label_map[i] == "unstable") unstable = i;
            if (m.label_map[i] == "stable") stable = i;
        }
        const auto recall = [&](std::size_t cls) -> std::optional<double> {
            std::size_t row = metrics.confusion[cls * 2] + metrics.confusion[cls * 2 + 1];
            if (row == 0) return std::nullopt;
            return static_cast<double>(metrics.confusion[cls * 2 + cls]) / static_cast<double>(row);
        };
        metrics.tur = recall(unstable);
        metrics.tsr = recall(stable);
    }

    for (const auto& [key, cell] : snr_cells)
        metrics.per_snr.push_back({key.first, static_cast<double>(key.second) / 100.0,
                                   cell.first, cell.second});
    return metrics;
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

} // namespace

void save_model(const Model& m, const std::string& path) {
    nlohmann::json header;
    header["arch"] = m.arch == Arch::logreg ? "logreg" : "mlp";
    header["layer_sizes"] = m.layer_sizes;
    header["pool"] = {m.pool_h, m.pool_w, m.channels};
    header["label_map"] = m.label_map;
    header["training"] = {{"seed", m.seed}, {"epochs", m.epochs}, {"lr", m.lr}, {"final_loss", m.final_loss}};
    const std::string text = header.dump();

    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    auto put = [&](const void* p, std::size_t n) {
        if (std::fwrite(p, 1, n, f.get()) != n) throw std::runtime_error("write failed: " + path);
    };
    const std::uint32_t len = static_cast<std::uint32_t>(text.size());
    put(&len, 4);
    put(text.data(), text.size());
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        std::vector<float> blob;
        for (double v : m.weights[l]) blob.push_back(static_cast<float>(v));
        for (double v : m.biases[l]) blob.push_back(static_cast<float>(v));
        put(blob.data(), blob.size() * sizeof(float));
    }
}

Model load_model(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("cannot open: " + path);
    auto get = [&](void* p, std::size_t n) {
        if (std::fread(p, 1, n, f.get()) != n) throw std::runtime_error("short read: " + path);
    };
    std::uint32_t len = 0;
    get(&len, 4);
    std::string text(len, '\0');
    get(text.data(), len);
    const nlohmann::json header = nlohmann::json::parse(text);

    Model m;
    m.arch = header.at("arch").get<std::string>() == "logreg" ? Arch::logreg : Arch::mlp;
    m.layer_sizes = header.at("layer_sizes").get<std::vector<std::size_t>>();
    m.pool_h = header.at("pool")[0];
    m.pool_w = header.at("pool")[1];
    m.channels = header.at("pool")[2];
    m.label_map = header.at("label_map").get<std::vector<std::string>>();
    m.seed = header.at("training").at("seed");
    m.epochs = header.at("training").at("epochs");
    m.lr = header.at("training").at("lr");
    m.final_loss = header.at("training").at("final_loss");

    for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
        const std::size_t in = m.layer_sizes[l], out = m.layer_sizes[l + 1];
        std::vector<float> blob(in * out + out);
        get(blob.data(), blob.size() * sizeof(float));
        std::vector<double> w(in * out), b(out);
        for (std::size_t i = 0; i < in * out; ++i) w[i] = blob[i];
        for (std::size_t i = 0; i < out; ++i) b[i] = blob[in * out + i];
        m.weights.push_back(std::move(w));
        m.biases.push_back(std::move(b));
    }
    return m;
}

} // namespace tfc
