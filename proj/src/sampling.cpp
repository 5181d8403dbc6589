#include "slantsub/sampling.hpp"

#include <atomic>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace slantsub {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

ExecMode g_default_mode =
#ifdef SLANTSUB_HAVE_OPENMP
    ExecMode::Parallel;
#else
    ExecMode::Serial;
#endif

} // namespace

Rng::Rng(std::uint64_t seed) {
    // splitmix64 expansion; guarantees a nonzero xoshiro state.
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + next_unit() * (hi - lo);
}

Eigen::VectorXd Rng::uniform_vector(int n, double lo, double hi) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed ^ (0x8e1f0f6a53cc7399ULL * (index + 1));
    return splitmix64(x);
}

ExecMode default_exec_mode() { return g_default_mode; }
void set_default_exec_mode(ExecMode mode) { g_default_mode = mode; }

std::vector<double> sample_defect_matrix(
    std::size_t count, std::size_t width, std::uint64_t seed, ExecMode mode,
    const std::function<void(std::size_t, Rng&, std::span<double>)>& fn) {
    std::vector<double> out(count * width, 0.0);
    std::exception_ptr first_error = nullptr;
    std::mutex error_mutex;

    auto body = [&](std::size_t i) {
        Rng rng(derive_stream(seed, i));
        std::span<double> row(out.data() + i * width, width);
        try {
            fn(i, rng, row);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

#ifdef _OPENMP
    if (mode == ExecMode::Parallel) {
        const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < count; ++i) body(i);
    }
#else
    (void)mode;
    for (std::size_t i = 0; i < count; ++i) body(i);
#endif

    if (first_error) std::rethrow_exception(first_error);
    return out;
}

double column_max(const std::vector<double>& matrix, std::size_t width, std::size_t col) {
    double best = 0.0;
    for (std::size_t i = col; i < matrix.size(); i += width)
        if (matrix[i] > best) best = matrix[i];
    return best;
}

double column_mean(const std::vector<double>& matrix, std::size_t width, std::size_t col) {
    if (matrix.empty()) return 0.0;
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = col; i < matrix.size(); i += width) {
        sum += matrix[i];
        ++n;
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

} // namespace slantsub
