#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "msfs/measures/value.hpp"
#include "msfs/robotic/model.hpp"
#include "msfs/sim/batch.hpp"

namespace msfs::robotic {

using measures::Maybe;

inline constexpr std::array<int, 3> kWindows{10, 100, 500};

inline double semantic_delta_rc(const std::vector<Estimates>& prev, const std::vector<Estimates>& now) {
    if (prev.size() != now.size() || now.empty()) throw ValidationError("estimate sets cover different robots");
    double s = 0;
    for (std::size_t i = 0; i < now.size(); ++i) {
        double m = 0;
        for (int j = 0; j < 6; ++j) m = std::max(m, std::abs(prev[i][j] - now[i][j]));
        s += m;
    }
    return s / static_cast<double>(now.size());
}

struct TruthDeltas {
    double counts = 0, full = 0, partial = 0;
};

inline TruthDeltas delta_truth_rc(const RoomWorld& w, const std::vector<Robot>& robots) {
    TruthDeltas d;
    for (const auto& r : robots) {
        const auto actual = actual_counts(w, r.est_room);
        for (int j = 0; j < 6; ++j) d.counts += std::abs(r.v[j] - actual[j]);
        const int best = relevant_rooms(r.est_room)[estimate_demand(actual).best];
        if (r.goal != best) {
            d.full += 1;
            if (r.goal != r.est_room) d.partial += 1;
        }
    }
    const double n = static_cast<double>(robots.size());
    d.counts /= 6 * n;
    d.full /= n;
    d.partial /= n;
    return d;
}

inline double delta_goal_rc(const RoomWorld& w) {
    double s = 0;
    for (int k = 0; k < kRooms; ++k)
        s += std::abs(static_cast<double>(w.objects[k]) / kTotalObjects - static_cast<double>(w.robots[k]) / kRobots);
    return s / kRooms;
}

// Per-step record of one repetition; index t = 0..steps.
struct RcRun {
    std::vector<Maybe> delta_sm;
    std::vector<TruthDeltas> delta_th;
    std::vector<double> delta_gl;
    std::vector<std::array<int, kRooms>> robots;
};

class RcSimulation {
public:
    RcSimulation(RcStrategy s, RcParams p, std::uint64_t seed, std::uint64_t rep)
        : strategy_(s), params_(p), rng_(seed, {0x52ULL, static_cast<std::uint64_t>(s), rep}) {
        params_.validate();
        if (params_.M < 0) params_.M = default_horizon(s);
        robots_.resize(kRobots);
        for (int i = 0; i < kRobots; ++i) {
            auto& r = robots_[i];
            r.room = r.goal = i % kRooms;
            for (int k = 0; k < kRooms; ++k) {
                r.sense_obj[k] = SmaBuffer(params_.M);
                r.sense_rob[k] = SmaBuffer(params_.M);
                r.comm_obj[k] = r.comm_rob[k] = 1.0 / 3.0;
            }
            ++world_.robots[r.room];
        }
        for (auto& r : robots_) {
            r.est_room = r.room;
            if (uses_pipeline(s)) r.v.fill(1.0 / 3.0);
            else r.v = bypass_estimate(r);
            pick_goal(r);
        }
    }

    const RoomWorld& world() const { return world_; }
    const std::vector<Robot>& robots() const { return robots_; }
    std::vector<Robot>& robots() { return robots_; }

    std::vector<Estimates> estimates() const {
        std::vector<Estimates> e;
        e.reserve(robots_.size());
        for (const auto& r : robots_) e.push_back(r.v);
        return e;
    }

    // Model update for one step: every robot senses, communicates and picks a
    // goal from the same snapshot of the others' estimates.
    void decide() {
        std::vector<Shared> snapshot;
        snapshot.reserve(robots_.size());
        for (const auto& r : robots_) snapshot.push_back({r.est_room, r.v});
        std::array<std::vector<int>, kRooms> occupants;
        for (int i = 0; i < kRobots; ++i) occupants[robots_[i].room].push_back(i);

        for (int i = 0; i < kRobots; ++i) {
            auto& r = robots_[i];
            if (uses_pipeline(strategy_)) update_pipeline(i, snapshot, occupants[r.room]);
            else r.v = bypass_estimate(r);
            r.est_room = r.room;
            pick_goal(r);
        }
    }

    void move() {
        for (auto& r : robots_) locomote(r, world_, rng_, params_.p_move);
    }

    // Step t: move, decide, then measure against the world the decision saw.
    RcRun run() {
        RcRun out;
        out.delta_sm.push_back(measures::NA);
        record(out);
        for (int t = 1; t <= params_.steps; ++t) {
            move();
            const auto prev = estimates();
            decide();
            out.delta_sm.push_back(semantic_delta_rc(prev, estimates()));
            record(out);
        }
        return out;
    }

private:
    void record(RcRun& out) const {
        world_.check();
        out.delta_th.push_back(delta_truth_rc(world_, robots_));
        out.delta_gl.push_back(delta_goal_rc(world_));
        out.robots.push_back(world_.robots);
    }

    static void pick_goal(Robot& r) {
        try {
            r.goal = relevant_rooms(r.est_room)[estimate_demand(r.v).best];
        } catch (const DomainError&) {
            // degenerate estimates keep the previous goal
        }
    }

    struct Shared {
        int room;
        Estimates v;
    };

    Estimates bypass_estimate(const Robot& r) {
        if (strategy_ == RcStrategy::GroundTruth) return actual_counts(world_, r.room);
        Estimates v;
        for (auto& x : v) x = rng_.uniform();
        normalize_halves(v);
        return v;
    }

    void update_pipeline(int i, const std::vector<Shared>& snapshot, const std::vector<int>& roommates) {
        auto& r = robots_[i];
        const int k = r.room;
        const auto rel = relevant_rooms(k);

        // Detections under the robot's body, proportional to local density.
        const int others = world_.robots[k] - 1;
        r.sense_obj[k].push(rng_.bernoulli(static_cast<double>(world_.objects[k]) / kTotalObjects));
        r.sense_rob[k].push(rng_.bernoulli(static_cast<double>(others) / kRobots));

        // Up to `partners` distinct roommates, drawn uniformly.
        std::vector<int> pool;
        for (int j : roommates)
            if (j != i) pool.push_back(j);
        const int n = std::min<int>(params_.partners, static_cast<int>(pool.size()));
        for (int c = 0; c < n; ++c) {
            const int pick = c + static_cast<int>(rng_.below(pool.size() - c));
            std::swap(pool[c], pool[pick]);
            // A partner that just arrived still holds estimates over its old
            // relevant rooms; only rooms both robots model are taken.
            const auto& got = snapshot[pool[c]];
            const auto theirs = relevant_rooms(got.room);
            for (int j = 0; j < 3; ++j) {
                const int room = theirs[j];
                if (std::find(rel.begin(), rel.end(), room) == rel.end()) continue;
                r.comm_obj[room] += params_.ema * (got.v[j] - r.comm_obj[room]);
                r.comm_rob[room] += params_.ema * (got.v[j + 3] - r.comm_rob[room]);
            }
        }

        Estimates v;
        for (int j = 0; j < 3; ++j) {
            v[j] = 0.5 * (r.sense_obj[rel[j]].mean() + r.comm_obj[rel[j]]);
            v[j + 3] = 0.5 * (r.sense_rob[rel[j]].mean() + r.comm_rob[rel[j]]);
        }
        normalize_halves(v);
        r.v = v;
    }

    RcStrategy strategy_;
    RcParams params_;
    sim::Rng rng_;
    RoomWorld world_;
    std::vector<Robot> robots_;
};

inline RcRun run_rc(RcStrategy s, const RcParams& p, std::uint64_t seed, std::uint64_t rep) {
    return RcSimulation(s, p, seed, rep).run();
}

// Derived per-step measures of one run or of the pooled mean run.
struct RcMeasures {
    std::vector<Maybe> delta_sm;
    std::array<std::vector<double>, 3> delta_th;  // counts, full, partial
    std::array<std::vector<Maybe>, 3> v_sm_th, e_sm_th;
    std::vector<double> delta_gl;
    std::array<std::vector<Maybe>, 3> v_pr_gl, e_pr_gl;  // per window in kWindows
    double c_syn = 0;
};

inline RcMeasures derive_measures(const std::vector<Maybe>& delta_sm, const std::array<std::vector<double>, 3>& th,
                                  const std::vector<double>& gl, double c_syn) {
    RcMeasures m;
    m.delta_sm = delta_sm;
    m.delta_th = th;
    m.delta_gl = gl;
    m.c_syn = c_syn;
    const std::size_t T = gl.size();
    for (int k = 0; k < 3; ++k) {
        m.v_sm_th[k].assign(T, measures::NA);
        m.e_sm_th[k].assign(T, measures::NA);
        for (std::size_t t = 1; t < T; ++t) {
            m.v_sm_th[k][t] = th[k][t - 1] - th[k][t];
            m.e_sm_th[k][t] = measures::efficiency(*m.v_sm_th[k][t], c_syn);
        }
        const std::size_t w = kWindows[k];
        m.v_pr_gl[k].assign(T, measures::NA);
        m.e_pr_gl[k].assign(T, measures::NA);
        for (std::size_t t = w; t < T; ++t) {
            m.v_pr_gl[k][t] = gl[t - w] - gl[t];
            m.e_pr_gl[k][t] = measures::efficiency(*m.v_pr_gl[k][t], c_syn);
        }
    }
    return m;
}

inline RcMeasures measures_of(const RcRun& run, double c_syn) {
    std::array<std::vector<double>, 3> th;
    for (const auto& d : run.delta_th) {
        th[0].push_back(d.counts);
        th[1].push_back(d.full);
        th[2].push_back(d.partial);
    }
    return derive_measures(run.delta_sm, th, run.delta_gl, c_syn);
}

// Mean over repetitions of every per-step quantity, then the derived measures.
struct RcPooled {
    RcStrategy strategy{};
    int repetitions = 0;
    RcMeasures mean;
    std::vector<RcRun> runs;
};

inline RcPooled run_rc_batch(RcStrategy s, const RcParams& p, std::uint64_t seed, int repetitions, int jobs = 1,
                             bool keep_runs = false) {
    std::vector<RcRun> runs(repetitions);
    sim::parallel_for(repetitions, jobs, [&](std::size_t r) { runs[r] = run_rc(s, p, seed, r); });
    const std::size_t T = runs.front().delta_gl.size();
    std::vector<Maybe> sm(T, measures::NA);
    std::array<std::vector<double>, 3> th;
    for (auto& v : th) v.assign(T, 0.0);
    std::vector<double> gl(T, 0.0);
    for (const auto& run : runs)
        for (std::size_t t = 0; t < T; ++t) {
            if (run.delta_sm[t]) sm[t] = sm[t].value_or(0.0) + *run.delta_sm[t] / repetitions;
            th[0][t] += run.delta_th[t].counts / repetitions;
            th[1][t] += run.delta_th[t].full / repetitions;
            th[2][t] += run.delta_th[t].partial / repetitions;
            gl[t] += run.delta_gl[t] / repetitions;
        }
    RcPooled out;
    out.strategy = s;
    out.repetitions = repetitions;
    RcParams q = p;
    out.mean = derive_measures(sm, th, gl, c_syn_rc(s, q.M));
    if (keep_runs) out.runs = std::move(runs);
    return out;
}

}  // namespace msfs::robotic
