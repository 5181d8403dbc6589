#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace slantsub {

/// xoshiro256++ with splitmix64 seeding. Chosen because it is small, fast and
/// fully specified, so sample streams reproduce bit-for-bit across builds.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform in [0, 1), 53-bit resolution.
    double next_unit();

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);

    /// Component-wise uniform vector in [lo, hi)^n.
    Eigen::VectorXd uniform_vector(int n, double lo, double hi);

private:
    std::uint64_t state_[4];
};

/// Stream seed for sample `index` under master `seed`. Every sample owns its
/// own generator, so results do not depend on evaluation order.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index);

enum class ExecMode { Serial, Parallel };

/// Parallel when built with OpenMP, serial otherwise.
ExecMode default_exec_mode();
void set_default_exec_mode(ExecMode mode);

/// Evaluates `fn(i, rng, row)` for i in [0, count) and returns the count x width
/// defect matrix in row-major order. The Parallel mode distributes samples over
/// OpenMP threads; outputs are written into per-sample slots and reductions are
/// done by the caller in index order, so both modes produce identical bytes.
/// Exceptions thrown by fn are captured and rethrown after the loop joins.
std::vector<double> sample_defect_matrix(
    std::size_t count, std::size_t width, std::uint64_t seed, ExecMode mode,
    const std::function<void(std::size_t, Rng&, std::span<double>)>& fn);

double column_max(const std::vector<double>& matrix, std::size_t width, std::size_t col);
double column_mean(const std::vector<double>& matrix, std::size_t width, std::size_t col);

} // namespace slantsub
