#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace litclust {

/// splitmix64 finalizer; used for seed derivation.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Sub-seed for stream `index` (a restart or a Monte Carlo trial) of a run
/// seeded with `seed`: splitmix64(seed ^ splitmix64(index)). Every parallel
/// kernel derives per-task generators this way, so results do not depend
/// on which thread runs which task.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Seeded generator with portable sampling helpers. The standard
/// distributions are implementation-defined, so bounded integers, shuffles
/// and normals are drawn here instead to keep outputs identical everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal (Box-Muller, no cached second value).
    double normal();

    template <typename T>
    void shuffle(std::span<T> values)
    {
        for (std::size_t i = values.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace litclust
