#pragma once

#include <cmath>
#include <cstdint>

namespace leomec::rng {

// splitmix64 step; also used to derive stream seeds from (seed, index) pairs.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based splitmix64 stream. Every trial gets its own stream derived
// from (master seed, trial index), which makes runs reproducible under any
// thread count. Samplers are hand-rolled so the byte-identical-output
// contract does not depend on libstdc++ distribution internals.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    static Stream substream(std::uint64_t seed, std::uint64_t index) {
        return Stream(mix64(seed ^ mix64(index + 0x517cc1b727220a95ULL)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform on (0, 1), 53-bit mantissa, never exactly 0
    double u01() {
        const double v = (next_u64() >> 11) * 0x1.0p-53;
        return v > 0.0 ? v : 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    double exponential(double rate = 1.0) { return -std::log(u01()) / rate; }

    // Marsaglia polar method
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * u01() - 1.0;
            v = 2.0 * u01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // Marsaglia-Tsang for shape >= 1, with the boost trick for shape < 1.
    double gamma(double shape, double scale) {
        if (shape < 1.0) {
            const double u = u01();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = u01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

    // Inversion by sequential search; fine for the modest means used here.
    long long poisson(double mean) {
        const double limit = std::exp(-mean);
        long long k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= u01();
        } while (p > limit);
        return k - 1;
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace leomec::rng
