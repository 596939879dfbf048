#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "msfs/cli/config.hpp"
#include "msfs/cli/registry.hpp"
#include "msfs/cli/table.hpp"
#include "msfs/decision/simulation.hpp"
#include "msfs/oscillators/calibration.hpp"
#include "msfs/oscillators/measures.hpp"
#include "msfs/robotic/simulation.hpp"
#include "msfs/task/markov.hpp"
#include "msfs/task/measures.hpp"

namespace msfs::cli {

inline constexpr std::uint64_t kDefaultSeed = 1;

// A validated experiment. Everything that can be wrong with a config is
// reported while planning, so a failing config writes no files.
struct Plan {
    std::string case_study, experiment;
    std::uint64_t seed = kDefaultSeed;
    json effective;  // the config with every default filled in
    std::function<std::vector<Table>(int jobs, bool full_trace)> run;
};

namespace detail {

template <class S, class Parse, class Name>
std::vector<S> pick_strategies(Fields& f, const std::vector<S>& all, Parse parse, Name name, json& eff) {
    std::vector<std::string> names;
    for (const auto& s : all) names.push_back(name(s));
    names = f.get<std::vector<std::string>>("strategies", names);
    if (names.empty()) Fields::fail("strategies", "at least one strategy is required");
    std::vector<S> out;
    for (const auto& n : names) {
        try {
            out.push_back(parse(n));
        } catch (const ConfigError&) {
            Fields::fail("strategies", "unknown strategy '" + n + "'");
        }
    }
    eff["strategies"] = names;
    return out;
}

// Model-level checks rethrown with the config path.
template <class F>
void checked(const std::string& where, F&& check) {
    try {
        check();
    } catch (const ConfigError& e) {
        Fields::fail(where, e.what());
    } catch (const std::invalid_argument& e) {
        Fields::fail(where, e.what());
    }
}

inline std::string flag(bool b) { return b ? "1" : "0"; }

}  // namespace detail

// ---- task-distribution ----

inline Plan plan_td(Plan plan, Fields& top) {
    using namespace task;
    json& eff = plan.effective;
    const auto strategies = detail::pick_strategies(
        top, std::vector<Strategy>(all_strategies().begin(), all_strategies().end()), parse_strategy,
        [](Strategy s) { return to_string(s); }, eff);
    Fields p = top.object("params");

    if (plan.experiment == "ex_all") {
        const int horizon = p.get<int>("horizon", 50);
        const int latency = p.get<int>("latency", kControlLatency);
        const auto inject = p.get<std::vector<bool>>("error_inject", {false});
        p.finish();
        if (horizon < 0) Fields::fail("params.horizon", "must be non-negative");
        if (latency < 1) Fields::fail("params.latency", "must be at least 1");
        if (inject.empty()) Fields::fail("params.error_inject", "needs at least one value");
        eff["params"] = {{"horizon", horizon}, {"latency", latency}, {"error_inject", inject}};
        plan.run = [=](int, bool) {
            Table t{"td_ex_all", "msfs.td.ex_all/1",
                    {"strategy", "error_inject", "m", "p_goal", "v_pr_adp", "p_goal_keep", "v_pr_gl", "e_pr_gl"}, {}};
            for (auto s : strategies)
                for (bool e : inject)
                    for (const auto& pt : goal_value_curve(s, horizon, e, latency)) {
                        const auto& g = pt.value;
                        t.add({to_string(s), detail::flag(e), num(g.m), num(g.p_goal), num(g.v_adapt),
                               num(g.p_goal_keep), num(g.v_goal), num(pt.efficiency)});
                    }
            return std::vector<Table>{t};
        };
        return plan;
    }

    // ex_scenario
    const int steps = p.get<int>("steps", 6);
    const int goal = p.get<int>("goal", 4);
    const bool inject = p.get<bool>("error_inject", false);
    const std::string draws = p.get<std::string>("draws", "scripted");
    std::vector<std::pair<int, int>> script = scripted_bb_switches();
    if (p.has("script")) {
        const auto raw = p.get<std::vector<std::vector<int>>>("script", {});
        script.clear();
        for (const auto& e : raw) {
            if (e.size() != 2 || e[1] < 0 || e[1] >= kWorkers || e[0] < 1)
                Fields::fail("params.script", "entries are [step >= 1, worker 0..3]");
            script.emplace_back(e[0], e[1]);
        }
    } else {
        p.get<json>("script", json());
    }
    p.finish();
    if (steps < 1) Fields::fail("params.steps", "must be at least 1");
    if (goal < 0 || goal > kWorkers) Fields::fail("params.goal", "must lie in 0..4");
    if (draws != "scripted" && draws != "random") Fields::fail("params.draws", "expected 'scripted' or 'random'");
    json js = json::array();
    for (auto [st, w] : script) js.push_back({st, w});
    eff["params"] = {{"steps", steps}, {"goal", goal}, {"error_inject", inject}, {"draws", draws}, {"script", js}};

    const std::uint64_t seed = plan.seed;
    plan.run = [=](int, bool) {
        Table t{"td_scenario", "msfs.td.scenario/1",
                {"strategy", "t", "delta_sm_sys", "delta_th", "sv_th", "v_sm_th", "e_sm_th", "delta_pr_sp",
                 "delta_pr_ad", "workers_on_k1"},
                {}};
        for (std::size_t k = 0; k < strategies.size(); ++k) {
            const auto s = strategies[k];
            sim::Rng rng(seed, {0x7DULL, static_cast<std::uint64_t>(s)});
            const SwitchDraw draw = draws == "scripted" ? scripted_draws(script) : random_draws(rng, switch_probability(s));
            const auto series = run_scenario(s, steps, draw, inject, goal);
            const auto dsm = semantic_delta_series(series);
            const auto truth = semantic_truth_td(series, s, c_syn_td(s));
            const auto prag = pragmatic_deltas_td(series);
            for (int i = 0; i < steps; ++i)
                t.add({to_string(s), num(i), num(dsm[i]), num(truth[i].delta_th), num(truth[i].sv_th),
                       num(truth[i].value), num(truth[i].efficiency), num(prag[i].scope), num(prag[i].adaptation),
                       num(series[i].on_k1())});
        }
        return std::vector<Table>{t};
    };
    return plan;
}

// ---- robotic-collective ----

inline Plan plan_rc(Plan plan, Fields& top) {
    using namespace robotic;
    json& eff = plan.effective;
    const auto strategies = detail::pick_strategies(top, all_rc_strategies(), parse_rc_strategy,
                                                    [](RcStrategy s) { return to_string(s); }, eff);
    Fields f = top.object("params");
    RcParams p;
    p.M = f.get<int>("M", p.M);
    p.p_move = f.get<double>("p_move", p.p_move);
    p.ema = f.get<double>("ema", p.ema);
    p.partners = f.get<int>("partners", p.partners);
    p.steps = f.get<int>("steps", p.steps);
    const int reps = f.get<int>("repetitions", 100);
    f.finish();
    detail::checked("params", [&] { p.validate(); });
    if (reps < 1) Fields::fail("params.repetitions", "must be at least 1");
    eff["params"] = {{"M", p.M},         {"p_move", p.p_move}, {"ema", p.ema},
                     {"partners", p.partners}, {"steps", p.steps},   {"repetitions", reps}};

    const std::uint64_t seed = plan.seed;
    plan.run = [=](int jobs, bool full) {
        std::vector<std::string> cols{"strategy", "t", "delta_sm"};
        for (const char* k : {"delta_th", "v_sm_th", "e_sm_th"})
            for (const char* v : {"counts", "full", "partial"}) cols.push_back(std::string(k) + "_" + v);
        cols.push_back("delta_gl");
        for (const char* k : {"v_pr_gl", "e_pr_gl"})
            for (int w : kWindows) cols.push_back(std::string(k) + "_" + std::to_string(w));
        Table steps{"rc_steps", "msfs.rc.steps/1", cols, {}};
        Table rooms{"rc_rooms", "msfs.rc.rooms/1", {"strategy", "t"}, {}};
        for (int k = 0; k < kRooms; ++k) rooms.columns.push_back("robots_" + std::to_string(k));

        for (auto s : strategies) {
            const auto pooled = run_rc_batch(s, p, seed, reps, jobs, full);
            const auto& m = pooled.mean;
            for (std::size_t t = 0; t < m.delta_gl.size(); ++t) {
                std::vector<std::string> row{to_string(s), num(t), num(m.delta_sm[t])};
                for (int k = 0; k < 3; ++k) row.push_back(num(m.delta_th[k][t]));
                for (int k = 0; k < 3; ++k) row.push_back(num(m.v_sm_th[k][t]));
                for (int k = 0; k < 3; ++k) row.push_back(num(m.e_sm_th[k][t]));
                row.push_back(num(m.delta_gl[t]));
                for (int k = 0; k < 3; ++k) row.push_back(num(m.v_pr_gl[k][t]));
                for (int k = 0; k < 3; ++k) row.push_back(num(m.e_pr_gl[k][t]));
                steps.add(std::move(row));
            }
            if (!full) continue;
            for (std::size_t t = 0; t < m.delta_gl.size(); ++t) {
                std::vector<std::string> row{to_string(s), num(t)};
                for (int k = 0; k < kRooms; ++k) {
                    double sum = 0;
                    for (const auto& r : pooled.runs) sum += r.robots[t][k];
                    row.push_back(num(sum / reps));
                }
                rooms.add(std::move(row));
            }
        }
        std::vector<Table> out{steps};
        if (full) out.push_back(rooms);
        return out;
    };
    return plan;
}

// ---- collective-decision ----

inline Plan plan_cd(Plan plan, Fields& top) {
    using namespace decision;
    json& eff = plan.effective;
    const auto strategies = detail::pick_strategies(top, all_cd_strategies(), parse_cd_strategy,
                                                    [](CdStrategy s) { return to_string(s); }, eff);
    Fields f = top.object("params");
    const std::vector<int> full_range = [] {
        std::vector<int> v;
        for (int i = 1; i <= 30; ++i) v.push_back(i);
        return v;
    }();
    const auto Ns = f.int_range("N", full_range);
    const auto Rs = f.int_range("R", full_range);
    CdParams p;
    p.alpha = f.get<double>("alpha", p.alpha);
    p.kappa = f.get<double>("kappa", p.kappa);
    p.delta_env = f.get<double>("delta_env", p.delta_env);
    p.w_start = f.get<double>("w_start", p.w_start);
    p.lower = f.get<double>("lower", p.lower);
    p.upper = f.get<double>("upper", p.upper);
    p.horizon = f.get<int>("horizon", p.horizon);
    p.literal_goal_sign = f.get<bool>("literal_goal_sign", p.literal_goal_sign);
    const int reps = f.get<int>("repetitions", 40);
    f.finish();
    if (Ns.empty() || Rs.empty()) Fields::fail("params", "N and R need at least one value");
    for (int n : Ns)
        for (int r : Rs) {
            CdParams q = p;
            q.N = n;
            q.R = r;
            detail::checked("params", [&] { q.validate(); });
        }
    if (reps < 1) Fields::fail("params.repetitions", "must be at least 1");
    eff["params"] = {{"N", Ns},           {"R", Rs},           {"alpha", p.alpha},
                     {"kappa", p.kappa},   {"delta_env", p.delta_env}, {"w_start", p.w_start},
                     {"lower", p.lower},   {"upper", p.upper},   {"horizon", p.horizon},
                     {"literal_goal_sign", p.literal_goal_sign}, {"repetitions", reps}};

    const std::uint64_t seed = plan.seed;
    plan.run = [=](int jobs, bool full) {
        const std::vector<std::string> run_cols{"N",        "R",        "strategy", "seed",    "t_collapse",
                                                "collapsed", "cycles",  "delta_sm", "delta_pr", "delta_th",
                                                "v_sm_th",  "v_pr_gl",  "c_syn_cycle", "e_sm_th", "e_pr_gl"};
        Table points{"cd_points", "msfs.cd.points/1",
                     {"strategy", "N", "R", "repetitions", "mean_survival", "delta_sm", "delta_pr", "delta_th",
                      "v_sm_th", "v_pr_gl", "c_syn_cycle", "e_sm_th", "e_pr_gl"},
                     {}};
        Table cycles{"cd_cycles", "msfs.cd.cycles/1",
                     {"strategy", "N", "R", "seed", "cycle", "start", "end", "o_coll", "t_cn", "w_a"},
                     {}};
        std::vector<Table> out;
        for (auto s : strategies) {
            Table runs{"cd_runs_" + to_string(s), "msfs.cd.runs/1", run_cols, {}};
            for (int n : Ns)
                for (int r : Rs) {
                    CdParams q = p;
                    q.N = n;
                    q.R = r;
                    const auto pt = run_cd_point(s, q, seed, reps, jobs);
                    for (int k = 0; k < reps; ++k) {
                        const auto& x = pt.runs[k];
                        runs.add({num(n), num(r), to_string(s), num(k), num(x.t_end), detail::flag(x.collapsed),
                                  num(x.cycles), num(x.delta_sm.mean()), num(x.delta_pr.mean()),
                                  num(x.delta_th.mean()), num(x.v_sm_th.mean()), num(x.v_pr_gl.mean()), num(x.c_syn),
                                  num(x.e_sm_th()), num(x.e_pr_gl())});
                    }
                    points.add({to_string(s), num(n), num(r), num(reps), num(pt.mean_survival),
                                num(pt.delta_sm.mean()), num(pt.delta_pr.mean()), num(pt.delta_th.mean()),
                                num(pt.v_sm_th.mean()), num(pt.v_pr_gl.mean()), num(pt.c_syn), num(pt.e_sm_th()),
                                num(pt.e_pr_gl())});
                    if (!full) continue;
                    for (int k = 0; k < reps; ++k) {
                        const auto run = run_cd(s, q, seed, k);
                        for (std::size_t c = 0; c < run.cycles.size(); ++c) {
                            const auto& cy = run.cycles[c];
                            cycles.add({to_string(s), num(n), num(r), num(k), num(c), num(cy.start), num(cy.end),
                                        num(cy.o_coll), num(cy.t_cn), num(cy.w_a)});
                        }
                    }
                }
            out.push_back(std::move(runs));
        }
        out.push_back(std::move(points));
        if (full) out.push_back(std::move(cycles));
        return out;
    };
    return plan;
}

// ---- hierarchical-oscillators ----

inline Plan plan_ho(Plan plan, Fields& top) {
    using namespace oscillators;
    json& eff = plan.effective;
    const auto& known = ho_systems();
    const auto systems = detail::pick_strategies(
        top, known,
        [&](const std::string& n) {
            for (const auto& k : known)
                if (k == n) return n;
            throw ConfigError(n);
        },
        [](const std::string& s) { return s; }, eff);
    Fields f = top.object("params");

    if (plan.experiment == "calibrate") {
        const double W = f.get<double>("W", 0.5);
        f.finish();
        if (W < 0 || W > 1) Fields::fail("params.W", "must lie in [0,1]");
        eff["params"] = {{"W", W}};
        plan.run = [=](int jobs, bool) {
            const auto sweep = calibration_sweep(jobs, W);
            const auto* best = select_calibrated(sweep);
            Table t{"ho_calibration", "msfs.ho.calibration/1",
                    {"F", "tau", "sync_two", "sync_three", "amp_two", "amp_three", "keep_two", "keep_three", "usable",
                     "selected"},
                    {}};
            for (const auto& pt : sweep)
                t.add({num(pt.F), num(pt.tau), num(pt.sync2), num(pt.sync3), num(pt.amp2), num(pt.amp3),
                       num(pt.keep2), num(pt.keep3), detail::flag(pt.usable()), detail::flag(&pt == best)});
            return std::vector<Table>{t};
        };
        return plan;
    }

    const auto F = f.numbers("F", {kCalibratedF});
    const auto tau = f.numbers("tau", {kCalibratedTau});
    HoConfig base;
    base.W = f.get<double>("W", base.W);
    base.PP = f.get<int>("PP", base.PP);
    base.h = f.get<double>("h", base.h);
    base.t_end = f.get<double>("t_end", base.t_end);
    base.literal_goal_sign = f.get<bool>("literal_goal_sign", base.literal_goal_sign);
    const auto x0 = f.get<std::vector<double>>("x0", {base.x0.begin(), base.x0.end()});
    const auto y0 = f.get<std::vector<double>>("y0", {});
    const int every = f.get<int>("sample_every", 10);
    f.finish();
    if (x0.size() != 4) Fields::fail("params.x0", "needs 4 values");
    if (!y0.empty() && y0.size() != 4) Fields::fail("params.y0", "needs 4 values");
    if (every < 1) Fields::fail("params.sample_every", "must be at least 1");
    std::copy(x0.begin(), x0.end(), base.x0.begin());
    if (!y0.empty()) {
        base.y0.emplace();
        std::copy(y0.begin(), y0.end(), base.y0->begin());
    }

    std::vector<HoConfig> configs;
    for (const auto& name : systems) {
        HoConfig c = base;
        c.sizes = name == "two_scale" ? std::vector<int>{4, 1} : std::vector<int>{4, 2, 1};
        const std::size_t M = c.sizes.size();
        auto per_scale = [&](const std::vector<double>& v, const char* key) {
            if (v.size() == 1) return std::vector<double>(M, v[0]);
            if (v.size() != M)
                Fields::fail(std::string("params.") + key, "needs 1 value or one per scale of " + name);
            return v;
        };
        c.F = per_scale(F, "F");
        c.tau = per_scale(tau, "tau");
        detail::checked("params", [&] { c.validate(); });
        configs.push_back(c);
    }
    eff["params"] = {{"F", F},     {"tau", tau},       {"W", base.W},   {"PP", base.PP},
                     {"h", base.h}, {"t_end", base.t_end}, {"x0", x0}, {"y0", y0},
                     {"literal_goal_sign", base.literal_goal_sign}, {"sample_every", every}};

    plan.run = [=](int jobs, bool full) {
        std::vector<Table> traces(systems.size());
        std::vector<std::vector<std::string>> summary(systems.size());
        sim::parallel_for(systems.size(), jobs, [&](std::size_t k) {
            const auto& cfg = configs[k];
            const auto H = integrate_dde(cfg);
            const auto m = compute_measures(cfg, H);
            const auto& hier = H.hier;
            Table& t = traces[k];
            t.name = "ho_" + systems[k];
            t.schema = "msfs.ho.trace/1";
            t.columns = {"t"};
            for (const char* v : {"x", "y"}) {
                if (*v == 'y' && !full) break;
                for (int s = 0; s < hier.scales(); ++s)
                    for (int i = 0; i < hier.sizes[s]; ++i)
                        t.columns.push_back(std::string(v) + "_" + std::to_string(s) + "_" + std::to_string(i));
            }
            for (const char* c : {"delta_sm", "v_sm_th", "e_sm_th", "delta_pr", "delta_gl", "v_pr_gl", "e_pr_gl"})
                t.columns.push_back(c);
            for (int n = 0; n <= H.steps; n += every) {
                std::vector<std::string> row{num(H.t(n))};
                for (int j = 0; j < hier.count(); ++j) row.push_back(num(H.X[j][n]));
                if (full)
                    for (int j = 0; j < hier.count(); ++j) row.push_back(num(H.Y[j][n]));
                for (const auto* v : {&m.delta_sm, &m.v_sm_th, &m.e_sm_th, &m.delta_pr, &m.delta_gl, &m.v_pr_gl,
                                      &m.e_pr_gl})
                    row.push_back(num((*v)[n]));
                t.add(std::move(row));
            }
            summary[k] = {systems[k], num(m.c_syn), num(time_to_sync(H, kSyncThreshold)),
                          num(trailing_amplitude(H))};
        });
        Table s{"ho_summary", "msfs.ho.summary/1", {"system", "c_syn", "time_to_sync", "trailing_amplitude"}, {}};
        for (auto& r : summary) s.add(std::move(r));
        traces.push_back(std::move(s));
        return traces;
    };
    return plan;
}

// ---- dispatch ----

inline Plan plan_experiment(const json& cfg, std::optional<std::uint64_t> seed_override = std::nullopt) {
    Fields top(cfg, "");
    Plan plan;
    plan.case_study = top.require<std::string>("case_study");
    const CaseStudy* cs = find_case_study(plan.case_study);
    if (!cs) Fields::fail("case_study", "unknown case study '" + plan.case_study + "'");
    plan.experiment = top.get<std::string>("experiment", cs->experiments.front());
    bool known = false;
    for (const auto& e : cs->experiments) known = known || e == plan.experiment;
    if (!known) Fields::fail("experiment", "unknown experiment '" + plan.experiment + "' for " + plan.case_study);
    plan.seed = top.get<std::uint64_t>("seed", kDefaultSeed);
    if (seed_override) plan.seed = *seed_override;
    top.get<std::string>("description", "");

    plan.effective = {{"case_study", plan.case_study}, {"experiment", plan.experiment}, {"seed", plan.seed}};
    if (plan.case_study == "task-distribution")
        plan = plan_td(std::move(plan), top);
    else if (plan.case_study == "robotic-collective")
        plan = plan_rc(std::move(plan), top);
    else if (plan.case_study == "collective-decision")
        plan = plan_cd(std::move(plan), top);
    else
        plan = plan_ho(std::move(plan), top);
    top.finish();
    return plan;
}

}  // namespace msfs::cli
