#include "chlab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "chlab/error.hpp"

namespace chlab::spectral {

namespace {

// FFTW planning is not thread-safe; execution on plan-owned buffers is, as
// long as each thread owns its plans.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class Plan {
public:
    explicit Plan(std::size_t n) : n_(n) {
        real_ = fftw_alloc_real(n);
        spec_ = fftw_alloc_complex(n / 2 + 1);
        std::lock_guard lock(planner_mutex());
        const int ni = static_cast<int>(n);
        r2c_ = fftw_plan_dft_r2c_1d(ni, real_, spec_, FFTW_ESTIMATE);
        c2r_ = fftw_plan_dft_c2r_1d(ni, spec_, real_, FFTW_ESTIMATE);
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(c2r_);
        fftw_destroy_plan(r2c_);
        fftw_free(spec_);
        fftw_free(real_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    std::vector<Complex> forward(std::span<const double> u) {
        std::copy(u.begin(), u.end(), real_);
        fftw_execute(r2c_);
        std::vector<Complex> out(n_ / 2 + 1);
        for (std::size_t m = 0; m < out.size(); ++m) out[m] = {spec_[m][0], spec_[m][1]};
        return out;
    }

    std::vector<double> inverse(std::span<const Complex> c) {
        for (std::size_t m = 0; m < n_ / 2 + 1; ++m) {
            spec_[m][0] = c[m].real();
            spec_[m][1] = c[m].imag();
        }
        fftw_execute(c2r_);
        const double scale = 1.0 / static_cast<double>(n_);
        std::vector<double> out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = real_[i] * scale;
        return out;
    }

private:
    std::size_t n_;
    double* real_ = nullptr;
    fftw_complex* spec_ = nullptr;
    fftw_plan r2c_ = nullptr;
    fftw_plan c2r_ = nullptr;
};

Plan& plan_for(std::size_t n) {
    thread_local std::unordered_map<std::size_t, std::unique_ptr<Plan>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<Plan>(n)).first;
    return *it->second;
}

void check_size(std::size_t n) {
    if (n < 2 || (n & (n - 1)) != 0) throw InvalidArgument("FFT length must be a power of two");
}

}  // namespace

std::vector<Complex> forward(std::span<const double> u) {
    check_size(u.size());
    return plan_for(u.size()).forward(u);
}

std::vector<double> inverse(std::span<const Complex> coeffs, std::size_t n) {
    check_size(n);
    if (coeffs.size() != n / 2 + 1) throw InvalidArgument("spectrum length must be N/2+1");
    return plan_for(n).inverse(coeffs);
}

std::vector<double> derivative(std::span<const double> u, const Grid1D& grid) {
    const std::size_t nyq = u.size() / 2;
    return apply(u, grid, [nyq](double k, std::size_t m) {
        return m == nyq ? Complex{0.0, 0.0} : Complex{0.0, k};
    });
}

std::vector<double> centered_difference(std::span<const double> u, const Grid1D& grid) {
    const std::size_t n = u.size();
    std::vector<double> out(n);
    const double inv = 0.5 / grid.dx();
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = (u[(i + 1) % n] - u[(i + n - 1) % n]) * inv;
    }
    return out;
}

std::vector<double> dealias(std::span<const double> u) {
    auto c = forward(u);
    for (std::size_t m = 0; m < c.size(); ++m) {
        if (!kept_by_two_thirds(m, u.size())) c[m] = 0.0;
    }
    return inverse(c, u.size());
}

}  // namespace chlab::spectral
