#pragma once

#include <cmath>
#include <vector>

#include "msfs/task/hierarchy.hpp"

namespace msfs::task {

// Sum of absolute changes over all agent variables; an undefined value counts as 0.
inline double semantic_delta_td(const TaskHierarchy& prev, const TaskHierarchy& now) {
    const auto a = prev.variables();
    const auto b = now.variables();
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(b[i].value_or(0.0) - a[i].value_or(0.0));
    return sum;
}

inline constexpr double kDeltaTruthMax = 4.0;
inline constexpr double kSemanticEfficiencyCoef = 10.0;

struct TruthRow {
    double delta_th = 0;   // Est_1 - Obs_0, signed
    double sv_th = 0;      // 1 - |delta_th / 4|
    Maybe value = NA;      // V_sm,th
    Maybe efficiency = NA; // E_sm,th
    bool degenerate = false;
};

// Observed error of the workers, in the strategy's own control convention.
inline double observed_error(const TaskHierarchy& h, Strategy s) {
    const double z = h.on_k1();
    return s == Strategy::Md ? h.goal - z : z - h.goal;
}

inline double estimated_error(const TaskHierarchy& h) {
    double est = 0.0;
    for (auto& c : h.mid_ctrl) est += c.value_or(0.0);
    return est;
}

// Three-branch value of a change in truth state value: NA without a prior,
// 0 without change, otherwise the normalized difference.
inline Maybe truth_value_change(Maybe sv_prev, Maybe sv_now, bool* degenerate = nullptr) {
    if (!sv_prev || !sv_now) return NA;
    if (*sv_prev == *sv_now) return 0.0;
    const double den = *sv_now + *sv_prev;
    if (den == 0.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return (*sv_now - *sv_prev) / den;
}

inline std::vector<TruthRow> semantic_truth_td(const std::vector<TaskHierarchy>& series, Strategy s,
                                               Maybe c_syn_cycle) {
    std::vector<TruthRow> rows;
    Maybe prev_sv = NA;
    for (const auto& h : series) {
        TruthRow r;
        r.delta_th = estimated_error(h) - observed_error(h, s);
        r.sv_th = 1.0 - std::abs(r.delta_th / kDeltaTruthMax);
        r.value = truth_value_change(prev_sv, r.sv_th, &r.degenerate);
        if (r.value && c_syn_cycle)
            r.efficiency = ((*r.value + 1.0) / 2.0) / *c_syn_cycle * kSemanticEfficiencyCoef;
        prev_sv = r.sv_th;
        rows.push_back(r);
    }
    return rows;
}

struct PragmaticDeltaRow {
    double scope = 0;    // Delta_pr,sp
    Maybe adaptation;    // Delta_pr,ad
};

inline std::vector<PragmaticDeltaRow> pragmatic_deltas_td(const std::vector<TaskHierarchy>& series) {
    std::vector<PragmaticDeltaRow> rows;
    for (std::size_t i = 0; i < series.size(); ++i) {
        PragmaticDeltaRow r;
        r.scope = series[i].scope;
        if (i >= 2) r.adaptation = static_cast<double>(series[i].switched - series[i - 1].switched);
        rows.push_back(r);
    }
    return rows;
}

inline std::vector<double> semantic_delta_series(const std::vector<TaskHierarchy>& series) {
    std::vector<double> out;
    for (std::size_t i = 1; i < series.size(); ++i) out.push_back(semantic_delta_td(series[i - 1], series[i]));
    return out;
}

} // namespace msfs::task
