#pragma once

#include <map>
#include <utility>
#include <vector>

#include "msfs/measures/entropy.hpp"
#include "msfs/task/hierarchy.hpp"

namespace msfs::task {

struct SyntacticTable {
    // Per-variable entropies (bits).
    double worker_state = 0, mid_abs = 0, top_abs = 0;
    double worker_ctrl = 0, mid_ctrl = 0, top_ctrl = 0;
    // Information per scale: sums over independent sources, a single term for broadcasts.
    double info_S0_abs = 0, info_S1_abs = 0, info_S2_abs = 0;
    double info_S0_ctrl = 0, info_S1_ctrl = 0, info_S2_ctrl = 0;
    // Resources per scale: every variable is stored, whatever its source.
    double res_S0_abs = 0, res_S1_abs = 0, res_S2_abs = 0;
    double res_S0_ctrl = 0, res_S1_ctrl = 0, res_S2_ctrl = 0;
    Maybe cycle = NA;
};

inline constexpr double kMdCycleContent = 24.0;

namespace detail {
inline double entropy_of(const std::map<double, double>& mass) {
    std::vector<double> p;
    for (auto& [v, m] : mass) p.push_back(m);
    return measures::shannon_entropy(p);
}
} // namespace detail

// Entropies of the BB variables over all 16 equally likely worker
// configurations, with v_g = 4.
inline SyntacticTable bb_syntactic_table(int goal = 4) {
    std::map<double, double> w, m, top, wc, mc, tc;
    for (int cfg = 0; cfg < 16; ++cfg) {
        const double p = 1.0 / 16.0;
        int s[kWorkers];
        int z = 0;
        for (int i = 0; i < kWorkers; ++i) z += (s[i] = (cfg >> i) & 1);
        const int err = z - goal;
        const int mid_err = ceil_split(err);
        w[s[0]] += p;
        m[s[0] + s[1]] += p;
        top[z] += p;
        tc[err] += p;
        mc[mid_err] += p;
        wc[mid_err / 2.0] += p;
    }
    SyntacticTable t;
    t.worker_state = detail::entropy_of(w);
    t.mid_abs = detail::entropy_of(m);
    t.top_abs = detail::entropy_of(top);
    t.worker_ctrl = detail::entropy_of(wc);
    t.mid_ctrl = detail::entropy_of(mc);
    t.top_ctrl = detail::entropy_of(tc);

    t.info_S0_abs = kWorkers * t.worker_state;
    t.info_S1_abs = kMids * t.mid_abs;
    t.info_S2_abs = t.top_abs;
    t.info_S2_ctrl = t.top_ctrl;
    t.info_S1_ctrl = t.mid_ctrl;
    t.info_S0_ctrl = t.worker_ctrl;

    t.res_S0_abs = kWorkers * t.worker_state;
    t.res_S1_abs = kMids * t.mid_abs;
    t.res_S2_abs = t.top_abs;
    t.res_S0_ctrl = kWorkers * t.worker_ctrl;
    t.res_S1_ctrl = kMids * t.mid_ctrl;
    t.res_S2_ctrl = t.top_ctrl;
    t.cycle = t.res_S0_abs + t.res_S1_abs + t.res_S2_abs + t.res_S0_ctrl + t.res_S1_ctrl + t.res_S2_ctrl;
    return t;
}

// Cycle content per strategy. Md's 24 is a fixed figure; RS stores one bit
// per worker; RB and St carry no reported content.
inline Maybe c_syn_td(Strategy s) {
    switch (s) {
    case Strategy::BB: return bb_syntactic_table().cycle;
    case Strategy::Md: return kMdCycleContent;
    case Strategy::RS: return static_cast<double>(kWorkers);
    default: return NA;
    }
}

inline double inter_scale_entropy_delta(double h_from, double h_to) { return h_to - h_from; }

} // namespace msfs::task
