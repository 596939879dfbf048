#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "msfs/core/error.hpp"
#include "msfs/measures/value.hpp"
#include "msfs/sim/rng.hpp"

namespace msfs::task {

using measures::Maybe;
using measures::NA;

inline constexpr int kWorkers = 4;
inline constexpr int kMids = 2;
inline constexpr int kChildren = 2;

enum class Strategy { BB, Md, RS, RB, St };

inline const std::array<Strategy, 5>& all_strategies() {
    static const std::array<Strategy, 5> s{Strategy::BB, Strategy::Md, Strategy::RS, Strategy::RB, Strategy::St};
    return s;
}

inline std::string to_string(Strategy s) {
    switch (s) {
    case Strategy::BB: return "BB";
    case Strategy::Md: return "Md";
    case Strategy::RS: return "RS";
    case Strategy::RB: return "RB";
    case Strategy::St: return "St";
    }
    return "?";
}

inline Strategy parse_strategy(const std::string& name) {
    for (auto s : all_strategies())
        if (to_string(s) == name) return s;
    throw ConfigError("task-distribution: unknown strategy '" + name + "'");
}

// Per-step switching probability of a worker.
inline double switch_probability(Strategy s) {
    switch (s) {
    case Strategy::BB:
    case Strategy::RS: return 0.15;
    case Strategy::RB: return 0.5;
    default: return 0.0;
    }
}

inline bool uses_hierarchy(Strategy s) { return s == Strategy::BB || s == Strategy::Md; }

// Snapshot of every agent variable at one step. Control values follow each
// strategy's own sign: BB reports z - v_g (negative means "more on k1"),
// Md reports how many workers should still switch (positive).
struct TaskHierarchy {
    int goal = 4;
    std::array<int, kWorkers> state{};
    std::array<Maybe, kWorkers> worker_ctrl{NA, NA, NA, NA};
    std::array<Maybe, kMids> mid_abs{NA, NA};
    std::array<Maybe, kMids> mid_ctrl{NA, NA};
    Maybe top_abs = NA;
    Maybe top_ctrl = NA;

    // Bookkeeping for the pragmatic deltas of the step that produced this snapshot.
    int scope = 0;
    int switched = 0;
    int t = 0;

    int on_k1() const {
        int z = 0;
        for (int s : state) z += s;
        return z;
    }

    // The 14 agent variables in a fixed order; NA stays NA.
    std::vector<Maybe> variables() const {
        std::vector<Maybe> v;
        for (int s : state) v.push_back(static_cast<double>(s));
        for (auto& c : worker_ctrl) v.push_back(c);
        for (auto& a : mid_abs) v.push_back(a);
        for (auto& c : mid_ctrl) v.push_back(c);
        v.push_back(top_abs);
        v.push_back(top_ctrl);
        return v;
    }
};

inline int parent_of(int worker) { return worker / kChildren; }

// Both halves get the rounded-up share: 4 and 3 both split into 2.
inline int ceil_split(int error) {
    const int mag = (std::abs(error) + 1) / 2;
    return error < 0 ? -mag : mag;
}

// Decides whether a worker with a live switch opportunity actually switches.
using SwitchDraw = std::function<bool(int t, int worker)>;

inline SwitchDraw random_draws(sim::Rng& rng, double p) {
    return [&rng, p](int, int) { return rng.bernoulli(p); };
}

// Replays a prescribed list of (step, worker) switches.
inline SwitchDraw scripted_draws(std::vector<std::pair<int, int>> script) {
    return [script = std::move(script)](int t, int w) {
        for (auto [st, sw] : script)
            if (st == t && sw == w) return true;
        return false;
    };
}

inline TaskHierarchy initial_hierarchy(int goal = 4, std::array<int, kWorkers> state = {0, 0, 0, 0}) {
    if (goal < 0 || goal > kWorkers) throw ValidationError("task-distribution: goal outside 0..4");
    TaskHierarchy h;
    h.goal = goal;
    h.state = state;
    return h;
}

namespace detail {

inline std::array<int, kWorkers> reported(const TaskHierarchy& h, bool error_inject) {
    auto r = h.state;
    if (error_inject) r[0] = 1;
    return r;
}

// Managers abstract the reported states of the current step and the top
// computes its control error from them.
inline void abstract_and_process(TaskHierarchy& h, Strategy s, bool error_inject) {
    const auto rep = reported(h, error_inject);
    int total = 0;
    for (int j = 0; j < kMids; ++j) {
        const int a = rep[kChildren * j] + rep[kChildren * j + 1];
        h.mid_abs[j] = a;
        total += a;
    }
    h.top_abs = total;
    h.top_ctrl = (s == Strategy::Md) ? h.goal - total : total - h.goal;
}

} // namespace detail

inline TaskHierarchy start_scenario(Strategy s, int goal = 4, bool error_inject = false) {
    auto h = initial_hierarchy(goal);
    if (uses_hierarchy(s)) detail::abstract_and_process(h, s, error_inject);
    return h;
}

// One simulation step. State ascends one scale per step and control
// descends one scale per step, so a worker acts on the top's error two
// steps after it was computed.
inline TaskHierarchy feedback_cycle_step(const TaskHierarchy& prev, Strategy s, const SwitchDraw& draw,
                                         bool error_inject = false) {
    TaskHierarchy h = prev;
    h.t = prev.t + 1;
    h.scope = 0;
    h.switched = 0;

    if (!uses_hierarchy(s)) {
        const double p = switch_probability(s);
        if (p > 0.0) {
            for (int w = 0; w < kWorkers; ++w) {
                ++h.scope;
                if (draw(h.t, w)) {
                    h.state[w] = 1 - h.state[w];
                    ++h.switched;
                }
            }
        }
        return h;
    }

    // Reification to workers: share of the mid-manager control from the previous step.
    const auto prev_rep = detail::reported(prev, error_inject);
    for (int j = 0; j < kMids; ++j) {
        const Maybe c = prev.mid_ctrl[j];
        const int a = kChildren * j, b = a + 1;
        if (!c) {
            h.worker_ctrl[a] = h.worker_ctrl[b] = NA;
            continue;
        }
        if (s == Strategy::BB) {
            h.worker_ctrl[a] = h.worker_ctrl[b] = *c / kChildren;
        } else {
            // Md names the children to switch, those it last saw on k0.
            int remaining = static_cast<int>(*c);
            for (int w : {a, b}) {
                const bool pick = remaining > 0 && prev_rep[w] == 0;
                h.worker_ctrl[w] = pick ? 1.0 : 0.0;
                if (pick) --remaining;
            }
        }
    }

    // Adaptation: k0 workers told that more k1 is needed may switch. A
    // mid-manager's control caps how many of its children switch this step.
    std::array<int, kMids> used{};
    for (int w = 0; w < kWorkers; ++w) {
        const Maybe c = h.worker_ctrl[w];
        if (!c || h.state[w] != 0) continue;
        const bool wants = (s == Strategy::BB) ? *c < 0 : *c > 0;
        if (!wants) continue;
        const int j = parent_of(w);
        const int cap = static_cast<int>(std::abs(*prev.mid_ctrl[j]));
        if (used[j] >= cap) continue;
        ++h.scope;
        const bool go = (s == Strategy::Md) ? true : draw(h.t, w);
        if (go) {
            h.state[w] = 1;
            ++used[j];
            ++h.switched;
        }
    }

    // Reification to mid-managers from the top's previous error.
    if (prev.top_ctrl) {
        const int err = static_cast<int>(*prev.top_ctrl);
        if (s == Strategy::BB) {
            h.mid_ctrl = {static_cast<double>(ceil_split(err)), static_cast<double>(ceil_split(err))};
        } else {
            // Md: the top assigns its error to the mid-managers whose children it
            // last saw on k0; each mid-manager then drops the ones it sees done.
            const auto rep_now = detail::reported(h, error_inject);
            int remaining = err;
            for (int j = 0; j < kMids; ++j) {
                const int seen_k0 = kChildren - static_cast<int>(*prev.mid_abs[j]);
                const int share = std::max(0, std::min(remaining, seen_k0));
                remaining -= share;
                const int k0_now = kChildren - (rep_now[kChildren * j] + rep_now[kChildren * j + 1]);
                h.mid_ctrl[j] = static_cast<double>(std::min(share, k0_now));
            }
        }
    } else {
        h.mid_ctrl = {NA, NA};
    }

    detail::abstract_and_process(h, s, error_inject);
    return h;
}

// Runs `steps` steps after t0 and returns the snapshots t0..t_steps.
inline std::vector<TaskHierarchy> run_scenario(Strategy s, int steps, const SwitchDraw& draw,
                                               bool error_inject = false, int goal = 4) {
    std::vector<TaskHierarchy> out{start_scenario(s, goal, error_inject)};
    for (int i = 0; i < steps; ++i) out.push_back(feedback_cycle_step(out.back(), s, draw, error_inject));
    return out;
}

// Two workers switch at t2 and the other two at t3.
inline std::vector<std::pair<int, int>> scripted_bb_switches() { return {{2, 0}, {2, 2}, {3, 1}, {3, 3}}; }

} // namespace msfs::task
