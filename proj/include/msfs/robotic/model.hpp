#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "msfs/core/error.hpp"
#include "msfs/sim/rng.hpp"

namespace msfs::robotic {

inline constexpr int kRooms = 4;
inline constexpr int kRobots = 100;
inline constexpr std::array<int, kRooms> kObjects{70, 70, 30, 30};
inline constexpr int kTotalObjects = 200;

enum class RcStrategy { Main, MainShort, GroundTruth, Random };

inline const std::vector<RcStrategy>& all_rc_strategies() {
    static const std::vector<RcStrategy> v{RcStrategy::Main, RcStrategy::MainShort, RcStrategy::GroundTruth,
                                           RcStrategy::Random};
    return v;
}

inline std::string to_string(RcStrategy s) {
    switch (s) {
        case RcStrategy::Main: return "main";
        case RcStrategy::MainShort: return "main_short";
        case RcStrategy::GroundTruth: return "ground_truth";
        case RcStrategy::Random: return "random";
    }
    return "?";
}

inline RcStrategy parse_rc_strategy(const std::string& s) {
    for (auto k : all_rc_strategies())
        if (to_string(k) == s) return k;
    throw ConfigError("unknown robotic-collective strategy: " + s);
}

inline bool uses_pipeline(RcStrategy s) { return s == RcStrategy::Main || s == RcStrategy::MainShort; }

inline int default_horizon(RcStrategy s) { return s == RcStrategy::MainShort ? 10 : 100; }

// Memory units: 10 at S0, 6M+24 at S1, 4 at S2 for the estimating strategies;
// the bypass strategies keep only the 6 estimates and 4 decision units.
inline int c_syn_rc(RcStrategy s, int M = -1) {
    if (!uses_pipeline(s)) return 10;
    if (M < 0) M = default_horizon(s);
    return 6 * M + 38;
}

struct RcParams {
    int M = -1;  // sensing horizon; -1 picks the strategy default
    double p_move = 0.1;
    double ema = 0.1;
    int partners = 2;
    int steps = 2000;

    void validate() const {
        if (M == 0 || M < -1) throw ConfigError("sensing horizon M must be positive");
        if (p_move < 0 || p_move > 1) throw ConfigError("p_move must lie in [0,1]");
        if (ema <= 0 || ema > 1) throw ConfigError("ema rate must lie in (0,1]");
        if (partners < 0) throw ConfigError("partners must be non-negative");
        if (steps < 1) throw ConfigError("steps must be positive");
    }
};

// Six estimates over the relevant rooms: objects first, then robots.
using Estimates = std::array<double, 6>;
using Relevant = std::array<int, 3>;

// Current room first, then its two ring neighbours by ascending index. The
// order doubles as the demand tie-break.
inline Relevant relevant_rooms(int room) {
    const int a = (room + kRooms - 1) % kRooms, b = (room + 1) % kRooms;
    return {room, std::min(a, b), std::max(a, b)};
}

inline bool adjacent(int a, int b) { return (a - b + kRooms) % kRooms == 1 || (b - a + kRooms) % kRooms == 1; }

inline void normalize_halves(Estimates& v) {
    for (int half = 0; half < 2; ++half) {
        double s = 0;
        for (int j = 0; j < 3; ++j) s += v[3 * half + j];
        if (s > 0)
            for (int j = 0; j < 3; ++j) v[3 * half + j] /= s;
    }
}

inline constexpr double kTieTolerance = 1e-12;

struct Demand {
    std::array<double, 3> phi{};
    std::array<bool, 3> defined{};
    int best = -1;  // index into the relevant rooms
};

inline Demand estimate_demand(const Estimates& v) {
    Demand d;
    for (int j = 0; j < 3; ++j) {
        const double den = v[j] + v[j + 3];
        d.defined[j] = den > 0;
        d.phi[j] = den > 0 ? v[j] / den : 0.0;
        if (d.defined[j] && (d.best < 0 || d.phi[j] > d.phi[d.best] + kTieTolerance)) d.best = j;
    }
    if (d.best < 0) throw DomainError("demand undefined in every relevant room");
    return d;
}

struct RoomWorld {
    std::array<int, kRooms> objects = kObjects;
    std::array<int, kRooms> robots{};

    void check() const {
        int o = 0, r = 0;
        for (int k = 0; k < kRooms; ++k) {
            o += objects[k];
            r += robots[k];
        }
        if (o != kTotalObjects || r != kRobots) throw ValidationError("room counts not conserved");
    }
};

// Actual counts over a room's relevant rooms, normalized like the estimates.
inline Estimates actual_counts(const RoomWorld& w, int room) {
    const auto rel = relevant_rooms(room);
    Estimates v{};
    for (int j = 0; j < 3; ++j) {
        v[j] = w.objects[rel[j]];
        v[j + 3] = w.robots[rel[j]];
    }
    normalize_halves(v);
    return v;
}

// Sliding window of 0/1 detections with a running sum.
class SmaBuffer {
public:
    explicit SmaBuffer(int capacity = 1) : data_(capacity, 0) {}
    void push(bool hit) {
        if (count_ == static_cast<int>(data_.size())) sum_ -= data_[head_];
        else ++count_;
        data_[head_] = hit;
        sum_ += hit;
        head_ = (head_ + 1) % static_cast<int>(data_.size());
    }
    double mean() const { return count_ ? static_cast<double>(sum_) / count_ : 0.0; }
    int size() const { return count_; }

private:
    std::vector<std::uint8_t> data_;
    int head_ = 0, count_ = 0, sum_ = 0;
};

struct Robot {
    int room = 0;
    int goal = 0;
    int est_room = 0;  // room whose relevant set v refers to
    Estimates v{};
    // Per absolute room; own observations persist after the robot leaves.
    std::array<SmaBuffer, kRooms> sense_obj, sense_rob;
    std::array<double, kRooms> comm_obj{}, comm_rob{};
};

// Moves at most one room per step, only when not in the goal room.
inline void locomote(Robot& r, RoomWorld& w, sim::Rng& rng, double p_move) {
    if (r.room == r.goal) return;
    if (!rng.bernoulli(p_move)) return;
    int next = r.goal;
    if (!adjacent(r.room, r.goal)) {
        // Goals are always relevant rooms, so this only happens for injected goals.
        const int cw = (r.goal - r.room + kRooms) % kRooms;
        next = cw <= kRooms / 2 ? (r.room + 1) % kRooms : (r.room + kRooms - 1) % kRooms;
    }
    --w.robots[r.room];
    ++w.robots[next];
    r.room = next;
}

}  // namespace msfs::robotic
