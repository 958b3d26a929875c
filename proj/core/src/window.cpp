#include "tfc/window.hpp"

#include <cmath>
#include <stdexcept>

namespace tfc {

std::string window_kind_name(WindowKind k) {
    switch (k) {
        case WindowKind::hann: return "hann";
        case WindowKind::gauss: return "gauss";
        case WindowKind::kaiser: return "kaiser";
        case WindowKind::rect: return "rect";
    }
    throw std::logic_error("unreachable window kind");
}

WindowKind window_kind_from_name(const std::string& name) {
    if (name == "hann") return WindowKind::hann;
    if (name == "gauss") return WindowKind::gauss;
    if (name == "kaiser") return WindowKind::kaiser;
    if (name == "rect") return WindowKind::rect;
    throw std::invalid_argument("unknown window kind: " + name);
}

namespace {

double bessel_i0(double x) {
    // Power series; converges quickly for the beta range used here.
    double sum = 1.0, term = 1.0;
    const double q = x * x / 4.0;
    for (int k = 1; k < 64; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

} // namespace

std::vector<double> make_window(const WindowSpec& spec) {
    const std::size_t L = spec.length;
    if (L < 4) throw std::invalid_argument("window length must be >= 4");
    std::vector<double> w(L);
    switch (spec.kind) {
        case WindowKind::rect:
            for (auto& v : w) v = 1.0;
            break;
        case WindowKind::hann:
            // Periodic form: exact COLA at hops L/2^k.
            for (std::size_t n = 0; n < L; ++n)
                w[n] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(n) / static_cast<double>(L));
            break;
        case WindowKind::gauss: {
            const double edge = (spec.shape > 0.0 && spec.shape < 1.0) ? spec.shape : 1e-4;
            const double c = static_cast<double>(L / 2);
            const double sigma = c / std::sqrt(2.0 * std::log(1.0 / edge));
            for (std::size_t n = 0; n < L; ++n) {
                const double d = static_cast<double>(n) - c;
                w[n] = std::exp(-d * d / (2.0 * sigma * sigma));
            }
            break;
        }
        case WindowKind::kaiser: {
            const double beta = spec.shape > 0.0 ? spec.shape : 8.0;
            const double denom = bessel_i0(beta);
            const double half = static_cast<double>(L - 1) / 2.0;
            for (std::size_t n = 0; n < L; ++n) {
                const double r = (static_cast<double>(n) - half) / half;
                w[n] = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / denom;
            }
            break;
        }
    }
    return w;
}

std::vector<double> make_window_derivative(const WindowSpec& spec) {
    if (spec.kind != WindowKind::gauss)
        throw std::invalid_argument("derivative window is defined for the gauss kind only");
    const std::size_t L = spec.length;
    if (L < 4) throw std::invalid_argument("window length must be >= 4");
    const double edge = (spec.shape > 0.0 && spec.shape < 1.0) ? spec.shape : 1e-4;
    const double c = static_cast<double>(L / 2);
    const double sigma = c / std::sqrt(2.0 * std::log(1.0 / edge));
    std::vector<double> w(L);
    for (std::size_t n = 0; n < L; ++n) {
        const double d = static_cast<double>(n) - c;
        w[n] = -(d / (sigma * sigma)) * std::exp(-d * d / (2.0 * sigma * sigma));
    }
    return w;
}

} // namespace tfc
