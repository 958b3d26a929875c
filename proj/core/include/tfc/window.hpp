#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tfc {

enum class WindowKind { hann, gauss, kaiser, rect };

std::string window_kind_name(WindowKind k);
WindowKind window_kind_from_name(const std::string& name);

/// Analysis window description. `shape` is the kind-specific parameter:
/// gauss -> edge value of the sampled Gaussian (e.g. 1e-4), kaiser -> beta,
/// ignored for hann/rect.
struct WindowSpec {
    WindowKind kind = WindowKind::hann;
    std::size_t length = 128;
    double shape = 0.0;

    static WindowSpec hann(std::size_t length) { return {WindowKind::hann, length, 0.0}; }
    static WindowSpec gauss(std::size_t length, double edge_value = 1e-4) {
        return {WindowKind::gauss, length, edge_value};
    }
    static WindowSpec kaiser(std::size_t length, double beta) {
        return {WindowKind::kaiser, length, beta};
    }
    static WindowSpec rect(std::size_t length) { return {WindowKind::rect, length, 0.0}; }
};

/// Samples the window; peak value 1. Periodic hann (COLA-friendly at L/2^k
/// hops). Length >= 4 enforced per the WindowSpec contract.
std::vector<double> make_window(const WindowSpec& spec);

/// Sampled derivative d/dn of the Gaussian window, used by synchrosqueezing.
/// Defined analytically for the gauss kind only; throws otherwise.
std::vector<double> make_window_derivative(const WindowSpec& spec);

} // namespace tfc
