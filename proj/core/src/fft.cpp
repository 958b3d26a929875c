#include "tfc/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace tfc {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
};

std::mutex g_plan_mutex;
std::map<std::size_t, PlanPair>& plan_cache() {
    static std::map<std::size_t, PlanPair> cache;
    return cache;
}

fftw_plan get_plan(std::size_t n, bool inverse) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto& entry = plan_cache()[n];
    fftw_plan& p = inverse ? entry.inv : entry.fwd;
    if (!p) {
        // In-place guru plan on a scratch buffer; FFTW_ESTIMATE plans do not
        // touch the arrays, and the plan is reusable via fftw_execute_dft.
        fftw_complex* buf = fftw_alloc_complex(n);
        p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                             inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        if (!p) throw std::runtime_error("fftw plan creation failed");
    }
    return p;
}

} // namespace

void fft_inplace(std::vector<std::complex<double>>& data, bool inverse) {
    if (data.empty()) throw std::invalid_argument("fft: empty input");
    fftw_plan p = get_plan(data.size(), inverse);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(data.size());
        for (auto& v : data) v *= scale;
    }
}

std::vector<std::complex<double>> fft(std::vector<std::complex<double>> data) {
    fft_inplace(data, false);
    return data;
}

std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> data) {
    fft_inplace(data, true);
    return data;
}

} // namespace tfc
