#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace msfs::sim {

// Reproducible random source keyed by (seed, stream path). Each agent or
// repetition takes its own stream so runs never share state.
class Rng {
public:
    using result_type = std::uint64_t;

    Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
        std::vector<std::uint32_t> words{lo(seed), hi(seed), 0x9e3779b9u};
        for (auto s : stream) {
            words.push_back(lo(s));
            words.push_back(hi(s));
        }
        std::seed_seq seq(words.begin(), words.end());
        engine_.seed(seq);
    }
    Rng(std::uint64_t seed, std::uint64_t stream) : Rng(seed, {stream}) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    // Uniform double in [0, 1) built from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
        return d(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    static std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
    static std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }
    std::mt19937_64 engine_;
};

inline Rng rng_stream(std::uint64_t seed, std::uint64_t stream_id) { return Rng(seed, stream_id); }

} // namespace msfs::sim
