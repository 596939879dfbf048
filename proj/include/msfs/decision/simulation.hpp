#pragma once

#include <cmath>
#include <vector>

#include "msfs/decision/model.hpp"
#include "msfs/measures/value.hpp"
#include "msfs/sim/batch.hpp"

namespace msfs::decision {

using measures::Maybe;

struct CycleRecord {
    int start = 0, end = 0;  // steps; end - start = t_cn
    double o_coll = 0;
    int t_cn = 1;
    double w_a = 0;  // at cycle end
};

struct CdRun {
    std::vector<CycleRecord> cycles;
    std::vector<double> w_trace;  // W_A at t = 0..t_end
    int t_end = 0;
    bool collapsed = false;
};

inline bool collapsed(double w, const CdParams& p) { return w <= p.lower + 1e-9 || w >= p.upper - 1e-9; }

// Direction of the environment under an effective collective opinion.
inline double environment_step(double w, double o_coll, double delta) {
    if (o_coll < w) return std::min(1.0, w + delta);
    if (o_coll > w) return std::max(0.0, w - delta);
    return w;
}

inline CdRun run_cd(CdStrategy s, const CdParams& p, std::uint64_t seed, std::uint64_t rep) {
    p.validate();
    // Strategies share one stream per (N, R, repetition): same placement and
    // starting grid, so strategy comparisons are paired.
    sim::Rng rng(seed, {0xCDULL, static_cast<std::uint64_t>(p.N), static_cast<std::uint64_t>(p.R), rep});
    InfoGrid grid(p.w_start, rng);
    const auto agents = place_agents(p.N, rng);
    std::vector<double> opinions(p.N, 0.0);
    bool first = true;

    CdRun run;
    run.w_trace.push_back(grid.weight());
    Maybe effective;  // no collective opinion acts before the first cycle closes
    int t = 0;
    while (t < p.horizon && !run.collapsed) {
        if (s != CdStrategy::RandomTOT) {
            for (int i = 0; i < p.N; ++i) {
                if (s == CdStrategy::RandomOP) {
                    opinions[i] = static_cast<double>(rng.below(kOpinionLevels)) / (kOpinionLevels - 1);
                } else {
                    const double scan = scan_mean(grid, agents[i], p.R);
                    opinions[i] = first ? scan : p.alpha * scan + (1 - p.alpha) * opinions[i];
                }
            }
        }
        first = false;
        const auto c = reach_consensus(s == CdStrategy::RandomTOT ? std::vector<double>{0.0} : opinions, s, p.kappa, rng);

        const int start = t;
        while (t - start < c.t_cn && t < p.horizon) {
            ++t;
            if (effective) grid.set_weight(environment_step(grid.weight(), *effective, p.delta_env), rng);
            run.w_trace.push_back(grid.weight());
            if (collapsed(grid.weight(), p)) {
                run.collapsed = true;
                break;
            }
        }
        if (t - start < c.t_cn) break;  // cut off by collapse or horizon
        effective = c.o_coll;
        run.cycles.push_back({start, t, c.o_coll, c.t_cn, grid.weight()});
    }
    run.t_end = t;
    return run;
}

// Per-cycle measures; the first cycle has no predecessor, so its deltas are NA.
struct CdCycleMeasures {
    std::vector<Maybe> delta_sm, delta_pr, v_sm_th, v_pr_gl;
    std::vector<double> delta_th, delta_gl;
};

inline double delta_goal_cd(double w) { return 1 - 2 * std::abs(0.5 - w); }

inline CdCycleMeasures cycle_measures(const CdRun& run, bool literal_goal_sign = false) {
    CdCycleMeasures m;
    const auto& c = run.cycles;
    for (std::size_t i = 0; i < c.size(); ++i) {
        m.delta_th.push_back(std::abs(c[i].o_coll - c[i].w_a));
        m.delta_gl.push_back(delta_goal_cd(c[i].w_a));
        if (i == 0) {
            m.delta_sm.push_back(measures::NA);
            m.delta_pr.push_back(measures::NA);
            m.v_sm_th.push_back(measures::NA);
            m.v_pr_gl.push_back(measures::NA);
            continue;
        }
        m.delta_sm.push_back(std::abs(c[i - 1].o_coll - c[i].o_coll));
        m.delta_pr.push_back(std::abs(c[i - 1].w_a - c[i].w_a));
        m.v_sm_th.push_back(m.delta_th[i - 1] - m.delta_th[i]);
        const double dg = m.delta_gl[i] - m.delta_gl[i - 1];
        m.v_pr_gl.push_back(literal_goal_sign ? -dg : dg);
    }
    return m;
}

// Mean with the number of values that entered it, used as the pooling weight.
struct Avg {
    double sum = 0;
    int n = 0;
    void add(double v) {
        sum += v;
        ++n;
    }
    void add(Maybe v) {
        if (v) add(*v);
    }
    void merge(const Avg& o) {
        sum += o.sum;
        n += o.n;
    }
    Maybe mean() const { return n ? Maybe(sum / n) : measures::NA; }
};

struct CdSummary {
    int t_end = 0;
    bool collapsed = false;
    int cycles = 0;
    Avg delta_sm, delta_pr, delta_th, v_sm_th, v_pr_gl;
    double c_syn = 0;
    Maybe e_sm_th() const { return measures::efficiency(v_sm_th.mean(), Maybe(c_syn)); }
    Maybe e_pr_gl() const { return measures::efficiency(v_pr_gl.mean(), Maybe(c_syn)); }
};

inline CdSummary summarize(const CdRun& run, double c_syn, bool literal_goal_sign = false) {
    const auto m = cycle_measures(run, literal_goal_sign);
    CdSummary s;
    s.t_end = run.t_end;
    s.collapsed = run.collapsed;
    s.cycles = static_cast<int>(run.cycles.size());
    s.c_syn = c_syn;
    for (std::size_t i = 0; i < run.cycles.size(); ++i) {
        s.delta_sm.add(m.delta_sm[i]);
        s.delta_pr.add(m.delta_pr[i]);
        s.delta_th.add(m.delta_th[i]);
        s.v_sm_th.add(m.v_sm_th[i]);
        s.v_pr_gl.add(m.v_pr_gl[i]);
    }
    return s;
}

// One (N, R, strategy) grid point over many seeds. Survival is a plain mean
// over simulations; cycle measures are pooled so that each simulation weighs
// by its number of cycles.
struct CdPoint {
    CdStrategy strategy{};
    int N = 0, R = 0;
    int repetitions = 0;
    double mean_survival = 0;
    Avg delta_sm, delta_pr, delta_th, v_sm_th, v_pr_gl;
    double c_syn = 0;
    std::vector<CdSummary> runs;
    Maybe e_sm_th() const { return measures::efficiency(v_sm_th.mean(), Maybe(c_syn)); }
    Maybe e_pr_gl() const { return measures::efficiency(v_pr_gl.mean(), Maybe(c_syn)); }
};

inline CdPoint run_cd_point(CdStrategy s, const CdParams& p, std::uint64_t seed, int repetitions, int jobs = 1) {
    p.validate();
    if (repetitions < 1) throw ConfigError("repetitions must be at least 1");
    CdPoint out;
    out.strategy = s;
    out.N = p.N;
    out.R = p.R;
    out.repetitions = repetitions;
    out.c_syn = c_syn_cd(p.N, p.R, s).total();
    out.runs.resize(repetitions);
    sim::parallel_for(repetitions, jobs, [&](std::size_t r) {
        out.runs[r] = summarize(run_cd(s, p, seed, r), out.c_syn, p.literal_goal_sign);
    });
    for (const auto& r : out.runs) {
        out.mean_survival += static_cast<double>(r.t_end) / repetitions;
        out.delta_sm.merge(r.delta_sm);
        out.delta_pr.merge(r.delta_pr);
        out.delta_th.merge(r.delta_th);
        out.v_sm_th.merge(r.v_sm_th);
        out.v_pr_gl.merge(r.v_pr_gl);
    }
    return out;
}

}  // namespace msfs::decision
