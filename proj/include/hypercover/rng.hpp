#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace hypercover {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// mt19937_64 wrapped with fully specified draw functions. The std
/// distributions are implementation-defined; these are not, so fixed
/// seeds reproduce across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform in [0, bound). Modulo draw; bias is negligible for
    /// bound << 2^64 and determinism matters more here.
    std::uint64_t below(std::uint64_t bound) { return gen_() % bound; }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (one value per call, no cache).
    double normal() {
        double u1 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    /// In-place Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace hypercover
