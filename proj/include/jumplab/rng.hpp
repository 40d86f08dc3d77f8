#ifndef JUMPLAB_RNG_HPP
#define JUMPLAB_RNG_HPP

#include <cmath>
#include <cstdint>

namespace jumplab {

// SplitMix64 step (Steele/Lea/Flood; Vigna's fixed-increment variant).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// One replica stream. The initial state is a mix of (master seed, stream
// index), so distinct indices give statistically independent streams and a
// given (seed, index) pair always reproduces the same draws, regardless of
// which worker thread consumes them.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::uint64_t s = master_seed;
        std::uint64_t a = splitmix64(s);
        s = stream_index ^ 0xD1B54A32D192ED03ULL;
        std::uint64_t b = splitmix64(s);
        state_ = a ^ (b + 0x9E3779B97F4A7C15ULL);
        // warm up
        splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in (0,1)
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    // index uniform in {0, ..., n-1}
    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::uint64_t state_;
};

}  // namespace jumplab

#endif
