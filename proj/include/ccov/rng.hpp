#pragma once

// Seedable random streams with O(1) stream derivation.
//
// Every stochastic routine in the library draws from an Rng obtained via
// Rng::stream(seed, stream_id). Streams depend only on (seed, stream_id),
// never on thread scheduling, so partitioning work across any number of
// workers reproduces the single-threaded result bit for bit.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ccov {

namespace detail {

// splitmix64 finalizer (Vigna); used for seeding and stream mixing.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// xoshiro256++ core with Box-Muller normal sampling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) { seed_state(seed, 0); }

    // Deterministically derived independent stream. stream_id is typically a
    // unit index, bootstrap-resample index, or optimizer-start index.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        Rng r(0);
        r.seed_state(seed, stream_id);
        return r;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]; safe as a log() argument.
    double uniform01_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Uniform integer in [0, n). Lemire multiply-shift.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::uniform_below: n must be positive");
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller; the paired draw is cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform01_pos();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        cached_ = r * std::sin(theta);
        have_cached_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    // Index into `cumulative`, the inclusive prefix sums of nonnegative
    // weights with cumulative.back() == total weight.
    std::size_t choice_by_cumulative(const std::vector<double>& cumulative) {
        const double u = uniform01() * cumulative.back();
        std::size_t lo = 0, hi = cumulative.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (u < cumulative[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    void seed_state(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t x = detail::mix64(seed ^ 0x5851f42d4c957f2dULL);
        x = detail::mix64(x + stream_id * 0x9e3779b97f4a7c15ULL);
        bool all_zero = true;
        for (auto& w : s_) {
            w = detail::mix64(x);
            x = w ^ (x + 0xd1342543de82ef95ULL);
            all_zero &= (w == 0);
        }
        if (all_zero) s_[0] = 1;  // xoshiro requires a nonzero state
        have_cached_ = false;
        cached_ = 0.0;
    }

    std::array<std::uint64_t, 4> s_{};
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace ccov
