#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "msfs/task/hierarchy.hpp"
#include "msfs/task/syntactic.hpp"

namespace msfs::task {

inline constexpr int kClasses = kWorkers + 1;
using TransitionMatrix = std::array<std::array<double, kClasses>, kClasses>;

inline TransitionMatrix identity_matrix() {
    TransitionMatrix m{};
    for (int i = 0; i < kClasses; ++i) m[i][i] = 1.0;
    return m;
}

inline TransitionMatrix multiply(const TransitionMatrix& a, const TransitionMatrix& b) {
    TransitionMatrix c{};
    for (int i = 0; i < kClasses; ++i)
        for (int k = 0; k < kClasses; ++k)
            for (int j = 0; j < kClasses; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline TransitionMatrix matrix_power(const TransitionMatrix& m, int k) {
    TransitionMatrix r = identity_matrix();
    for (int i = 0; i < k; ++i) r = multiply(r, m);
    return r;
}

inline double binomial_pmf(int n, int k, double p) {
    if (k < 0 || k > n) return 0.0;
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

// Class chain over z = number of workers on k1, goal v_g = 4. With
// error_inject, managers read worker 0 as k1, so they see min(z + 1, 4).
inline TransitionMatrix build_transition_matrix(Strategy s, bool error_inject = false) {
    TransitionMatrix m{};
    const double p = switch_probability(s);
    for (int z = 0; z < kClasses; ++z) {
        const int seen = error_inject ? std::min(z + 1, kWorkers) : z;
        switch (s) {
        case Strategy::BB: {
            const int eligible = seen < kWorkers ? kWorkers - z : 0;
            for (int k = 0; k <= eligible; ++k) m[z][z + k] += binomial_pmf(eligible, k, p);
            break;
        }
        case Strategy::Md:
            m[z][z + (kWorkers - seen)] = 1.0;
            break;
        case Strategy::RS:
        case Strategy::RB:
            // k1 workers that stay times k0 workers that switch.
            for (int stay = 0; stay <= z; ++stay)
                for (int up = 0; up <= kWorkers - z; ++up)
                    m[z][stay + up] += binomial_pmf(z, stay, 1.0 - p) * binomial_pmf(kWorkers - z, up, p);
            break;
        case Strategy::St:
            m[z][z] = 1.0;
            break;
        }
    }
    return m;
}

inline constexpr std::array<double, kClasses> kGoalStateValues{0.0, 0.25, 0.5, 0.75, 1.0};

// Steps before control from the top first reaches the workers.
inline constexpr int kControlLatency = 2;

// Adaptation rounds completed by step m. Hierarchical strategies wait for
// control to descend; the others act from the first step.
inline int adaptation_rounds(Strategy s, int m, int latency = kControlLatency) {
    if (uses_hierarchy(s)) return std::max(0, m - latency + 1);
    return m;
}

struct GoalValue {
    int m = 0;
    double p_goal = 0;      // probability of being at the goal at step m
    double v_adapt = 0;     // V_pr,adp from the start state
    double p_goal_keep = 0;
    double v_goal = 0;      // V_pr,gl
};

inline GoalValue pragmatic_goal_value_td(Strategy s, int m, bool error_inject = false, int start = 0,
                                         int latency = kControlLatency) {
    if (m < 0) throw ValidationError("pragmatic goal value: m must be >= 0");
    GoalValue g;
    g.m = m;
    const auto step = build_transition_matrix(s, error_inject);
    const auto mm = matrix_power(step, adaptation_rounds(s, m, latency));
    const int goal = kWorkers;
    g.p_goal = mm[start][goal];
    double v_goal_keep = 0.0;
    for (int w = 0; w < kClasses; ++w) {
        g.v_adapt += kGoalStateValues[w] * mm[start][w];
        v_goal_keep += kGoalStateValues[w] * mm[goal][w];
    }
    if (m == 0) return g;
    const double sv = kGoalStateValues[start];
    g.p_goal_keep = g.v_adapt >= sv ? 2.0 - v_goal_keep : v_goal_keep;
    g.v_goal = g.p_goal_keep == 0.0 ? -1.0 : (g.v_adapt - sv) / g.p_goal_keep;
    return g;
}

struct GoalCurvePoint {
    GoalValue value;
    Maybe efficiency = NA;
};

// V_pr,gl for m = 0..horizon, with E_pr,gl as the running mean over
// m steps divided by the cycle content.
inline std::vector<GoalCurvePoint> goal_value_curve(Strategy s, int horizon, bool error_inject = false,
                                                    int latency = kControlLatency) {
    std::vector<GoalCurvePoint> out;
    const Maybe c = c_syn_td(s);
    double running = 0.0;
    for (int m = 0; m <= horizon; ++m) {
        GoalCurvePoint p;
        p.value = pragmatic_goal_value_td(s, m, error_inject, 0, latency);
        if (m > 0) {
            running += p.value.v_goal;
            if (c) p.efficiency = running / (m * *c);
        }
        out.push_back(p);
    }
    return out;
}

struct ErrorInjectionResult {
    double clean = 0;
    double faulty = 0;
    double relative_loss = 0; // 1 - faulty / clean
};

inline ErrorInjectionResult error_injection_experiment(Strategy s, int m, int latency = kControlLatency) {
    ErrorInjectionResult r;
    r.clean = pragmatic_goal_value_td(s, m, false, 0, latency).v_goal;
    r.faulty = pragmatic_goal_value_td(s, m, true, 0, latency).v_goal;
    r.relative_loss = r.clean == 0.0 ? 0.0 : 1.0 - r.faulty / r.clean;
    return r;
}

} // namespace msfs::task
