#include "cbm/random.hpp"

#include <cmath>

#include "cbm/errors.hpp"

namespace cbm {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double RandomStream::uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double sample_normal(double mu, double sigma, RandomStream& rng) {
    if (!(sigma > 0.0)) throw DomainError("sample_normal: sigma must be positive");
    // Box-Muller, one variate per call so the stream position is the only state.
    const double r = std::sqrt(-2.0 * std::log(rng.uniform()));
    return mu + sigma * r * std::cos(2.0 * M_PI * rng.uniform());
}

double sample_log_gamma(double shape, RandomStream& rng) {
    if (!(shape > 0.0)) throw DomainError("sample_gamma: shape must be positive");
    if (shape < 1.0) {
        // G(a) = G(a + 1) * U^(1/a)
        return sample_log_gamma(shape + 1.0, rng) + std::log(rng.uniform()) / shape;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = sample_normal(0.0, 1.0, rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d * v);
    }
}

double sample_gamma(double shape, double rate, RandomStream& rng) {
    if (!(shape > 0.0) || !(rate > 0.0)) throw DomainError("sample_gamma: shape and rate must be positive");
    return std::exp(sample_log_gamma(shape, rng)) / rate;
}

double sample_beta(double a, double b, RandomStream& rng) {
    const double la = sample_log_gamma(a, rng);
    const double lb = sample_log_gamma(b, rng);
    // X / (X + Y) = 1 / (1 + exp(lb - la))
    return 1.0 / (1.0 + std::exp(lb - la));
}

double sample_exponential(double rate, RandomStream& rng) {
    if (!(rate > 0.0)) throw DomainError("sample_exponential: rate must be positive");
    return -std::log(rng.uniform()) / rate;
}

}  // namespace cbm
