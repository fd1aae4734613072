#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

namespace act {

struct RngState {
    std::uint64_t state = 0;
    double spare = 0.0;
    bool has_spare = false;

    bool operator==(const RngState&) const = default;
};

// Small deterministic generator (splitmix64). The standard distributions are
// implementation-defined, so draws go through our own mappings to keep runs
// bit-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    explicit Rng(const RngState& s) : state_(s.state), spare_(s.spare), has_spare_(s.has_spare) {}

    RngState state() const { return {state_, spare_, has_spare_}; }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [lo, hi], inclusive. Bitmask rejection, no modulo bias.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t range = static_cast<std::uint64_t>(hi - lo);
        if (range == 0) return lo;
        std::uint64_t mask = ~0ULL;
        mask >>= std::countl_zero(range | 1ULL);
        std::uint64_t draw;
        do {
            draw = next_u64() & mask;
        } while (draw > range);
        return lo + static_cast<std::int64_t>(draw);
    }

    // Uniform in [0, 1).
    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform_real(); }

    // +1 or -1 with equal probability.
    int sign() { return (next_u64() & 1ULL) ? 1 : -1; }

    // Box-Muller; the spare value is cached.
    double normal(double mu = 0.0, double sigma = 1.0) {
        if (has_spare_) {
            has_spare_ = false;
            return mu + sigma * spare_;
        }
        double u1 = uniform_real();
        double u2 = uniform_real();
        while (u1 <= 0.0) u1 = uniform_real();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return mu + sigma * r * std::cos(a);
    }

    // Number of failures before the first success of a Bernoulli(p) stream.
    std::uint64_t geometric(double p) {
        double u = uniform_real();
        while (u <= 0.0) u = uniform_real();
        const double g = std::floor(std::log(u) / std::log1p(-p));
        return g < 0.0 ? 0 : static_cast<std::uint64_t>(g);
    }

    // First k elements of a uniform random permutation (partial Fisher-Yates).
    template <typename T>
    void partial_shuffle(std::vector<T>& items, std::size_t k) {
        const std::size_t n = items.size();
        if (k > n) k = n;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j =
                static_cast<std::size_t>(uniform_int(static_cast<std::int64_t>(i),
                                                     static_cast<std::int64_t>(n - 1)));
            std::swap(items[i], items[j]);
        }
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Derives an independent stream seed from a master seed and a stream tag.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * (tag + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace act
