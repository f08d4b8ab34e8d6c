#pragma once

#include <cstdint>
#include <random>

namespace cbm {

/// Seeded 64-bit random stream. Satisfies UniformRandomBitGenerator.
///
/// Independent substreams are derived from (seed, index) through a SplitMix64
/// mix, so a replication's draws depend only on its index and never on which
/// thread runs it or in what order.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed);

    static RandomStream substream(std::uint64_t seed, std::uint64_t index);

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform on the open interval (0, 1), 53 bits of resolution.
    double uniform();

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Gamma(shape, rate) variate (Marsaglia-Tsang, with the U^(1/shape) boost
/// for shape < 1).
double sample_gamma(double shape, double rate, RandomStream& rng);

/// log of a Gamma(shape, 1) variate. Stays finite when shape is so small
/// that the variate itself underflows.
double sample_log_gamma(double shape, RandomStream& rng);

double sample_normal(double mu, double sigma, RandomStream& rng);

/// Beta(a, b) variate built from two log-gamma draws.
double sample_beta(double a, double b, RandomStream& rng);

double sample_exponential(double rate, RandomStream& rng);

}  // namespace cbm
