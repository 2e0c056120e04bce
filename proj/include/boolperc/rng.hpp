#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace boolperc {

// Identifies one random stream. The stream is a pure function of the triple,
// so replications can run on any worker in any order and still reproduce.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t replication_index = 0;
    std::string stream_label;

    SeedSpec with_replication(std::uint64_t i) const {
        return {master_seed, i, stream_label};
    }
    // Derives a sub-stream, e.g. for the increment half of a coupled pair.
    SeedSpec sub(std::string_view suffix) const {
        return {master_seed, replication_index, stream_label + std::string(suffix)};
    }
    std::string summary() const {
        return std::to_string(master_seed) + "/" + std::to_string(replication_index) + "/" +
               stream_label;
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace detail

// Philox4x32-10 counter-based generator. The key carries the master seed and
// the high counter words carry the (replication, label) stream id, so blocks
// never collide across streams of the same master seed.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(const SeedSpec& s) {
        const std::uint64_t k = detail::splitmix64(s.master_seed);
        key_[0] = static_cast<std::uint32_t>(k);
        key_[1] = static_cast<std::uint32_t>(k >> 32);
        const std::uint64_t stream = detail::splitmix64(
            s.replication_index ^ detail::splitmix64(detail::fnv1a64(s.stream_label)));
        stream_lo_ = static_cast<std::uint32_t>(stream);
        stream_hi_ = static_cast<std::uint32_t>(stream >> 32);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }

    result_type operator()() {
        if (buf_pos_ >= 2) refill();
        const std::uint64_t lo = buf_[2 * buf_pos_];
        const std::uint64_t hi = buf_[2 * buf_pos_ + 1];
        ++buf_pos_;
        return lo | (hi << 32);
    }

    // 53-bit uniform in [0, 1).
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean < 30.0) return poisson_small(mean);
        return poisson_ptrd(mean);
    }

private:
    static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
        const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(p >> 32);
        lo = static_cast<std::uint32_t>(p);
    }

    void refill() {
        std::uint32_t x0 = static_cast<std::uint32_t>(block_);
        std::uint32_t x1 = static_cast<std::uint32_t>(block_ >> 32);
        std::uint32_t x2 = stream_lo_;
        std::uint32_t x3 = stream_hi_;
        std::uint32_t k0 = key_[0];
        std::uint32_t k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(0xD2511F53u, x0, hi0, lo0);
            mulhilo(0xCD9E8D57u, x2, hi1, lo1);
            const std::uint32_t y0 = hi1 ^ x1 ^ k0;
            const std::uint32_t y1 = lo1;
            const std::uint32_t y2 = hi0 ^ x3 ^ k1;
            const std::uint32_t y3 = lo0;
            x0 = y0;
            x1 = y1;
            x2 = y2;
            x3 = y3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        buf_ = {x0, x1, x2, x3};
        ++block_;
        buf_pos_ = 0;
    }

    std::uint64_t poisson_small(double mean) {
        const double limit = std::exp(-mean);
        std::uint64_t n = 0;
        double prod = uniform01();
        while (prod > limit) {
            ++n;
            prod *= uniform01();
        }
        return n;
    }

    // Hormann's PTRD transformed-rejection sampler, exact for large means.
    std::uint64_t poisson_ptrd(double mean) {
        const double smu = std::sqrt(mean);
        const double b = 0.931 + 2.53 * smu;
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            double u = uniform01() - 0.5;
            const double v = uniform01();
            const double us = 0.5 - std::abs(u);
            const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
            if (k < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
                k * std::log(mean) - mean - std::lgamma(k + 1.0))
                return static_cast<std::uint64_t>(k);
        }
    }

    std::array<std::uint32_t, 2> key_{};
    std::uint32_t stream_lo_ = 0;
    std::uint32_t stream_hi_ = 0;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int buf_pos_ = 2;
};

} // namespace boolperc
