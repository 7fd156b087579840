#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

#include "rbmelm/matrix.hpp"

namespace rbmelm {

/// Deterministic random stream: one seed, one sequence, on every platform.
/// Distributions are implemented on top of the raw mt19937_64 output rather
/// than through std:: distribution objects, whose draw sequences differ
/// between standard library vendors.
class RngState {
public:
    explicit RngState(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform draw on [lo, hi).
    double uniform(double lo, double hi) {
        if (!(lo < hi)) throw std::invalid_argument("RngState::uniform: requires lo < hi");
        return lo + (hi - lo) * next_unit();
    }

    /// Gaussian draw, polar method. stddev == 0 degenerates to the mean.
    double normal(double mean, double stddev) {
        if (stddev < 0.0) throw std::invalid_argument("RngState::normal: requires stddev >= 0");
        if (stddev == 0.0) return mean;
        double u, v, s;
        do {
            u = 2.0 * next_unit() - 1.0;
            v = 2.0 * next_unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        return mean + stddev * u * std::sqrt(-2.0 * std::log(s) / s);
    }

    /// True with probability p. p <= 0 never fires, p >= 1 always does.
    bool bernoulli(double p) { return next_unit() < p; }

private:
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Child seed for an independent, label-addressed stream (FNV-1a over the
/// label mixed into the base seed through the splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::uint64_t z = base ^ h;
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// rows x cols matrix of i.i.d. uniform draws on [lo, hi], filled row by row.
inline Matrix sample_uniform(RngState& rng, double lo, double hi, Index rows, Index cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("sample_uniform: shape must be at least 1x1");
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

/// rows x cols matrix of i.i.d. N(mean, stddev^2) draws, filled row by row.
inline Matrix sample_normal(RngState& rng, double mean, double stddev, Index rows, Index cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("sample_normal: shape must be at least 1x1");
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = rng.normal(mean, stddev);
    return m;
}

}  // namespace rbmelm
