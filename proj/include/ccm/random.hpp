#pragma once

// Counter-based splittable random generation. Streams are derived from a
// (seed, counter) pair, so results never depend on evaluation order and are
// identical across platforms.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <span>

#include "ccm/vec.hpp"

namespace ccm {

namespace detail {

inline std::uint64_t splitmix64_step(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // decorrelate nearby seeds
        next_u64();
        next_u64();
    }

    // Stream for a (seed, counter) pair; equal pairs give equal streams.
    static Rng split(std::uint64_t seed, std::uint64_t counter) {
        std::uint64_t s = seed;
        const std::uint64_t a = detail::splitmix64_step(s);
        s = counter ^ a;
        const std::uint64_t b = detail::splitmix64_step(s);
        return Rng(b);
    }

    std::uint64_t next_u64() { return detail::splitmix64_step(state_); }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

    // Marsaglia polar method; the spare value keeps call parity deterministic.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform(-1.0, 1.0);
            v = uniform(-1.0, 1.0);
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    Vec gaussian_vec(std::size_t n) {
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = gaussian();
        return v;
    }

    Vec unit_vector(std::size_t n) {
        for (;;) {
            Vec v = gaussian_vec(n);
            const double len = v.norm();
            if (len > 1e-6) return v / len;
        }
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// FNV-1a over the raw bytes of a coordinate list; used to derive
// deterministic perturbation directions from vertex pools.
inline std::uint64_t hash_coordinates(std::span<const Point> points) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    auto mix = [&h](const void* data, std::size_t len) {
        const unsigned char* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 0x100000001B3ull;
        }
    };
    for (const Point& pt : points) {
        for (double x : pt.coords()) {
            std::uint64_t bits;
            std::memcpy(&bits, &x, sizeof bits);
            mix(&bits, sizeof bits);
        }
    }
    return h;
}

} // namespace ccm
