#include <catch_amalgamated.hpp>

#include <array>
#include <bit>
#include <cmath>
#include <vector>

#include "msfs/task/markov.hpp"
#include "msfs/task/measures.hpp"
#include "msfs/task/syntactic.hpp"

using namespace msfs;
using namespace msfs::task;
using Catch::Approx;

namespace {

// Worker-level chain over all 16 configurations, projected onto classes z.
// BB: every k0 worker may switch up (v_g = 4 keeps the error negative).
// RS/RB: every worker flips with probability p.
TransitionMatrix brute_force_projection(Strategy s) {
    const double p = s == Strategy::RB ? 0.5 : 0.15;
    std::array<std::array<double, 16>, 16> worker{};
    for (int c = 0; c < 16; ++c) {
        for (int d = 0; d < 16; ++d) {
            double prob = 1.0;
            for (int i = 0; i < 4; ++i) {
                const int from = (c >> i) & 1, to = (d >> i) & 1;
                if (s == Strategy::BB) {
                    if (from == 1) prob *= (to == 1);
                    else prob *= to ? p : 1.0 - p;
                } else {
                    prob *= (from != to) ? p : 1.0 - p;
                }
            }
            worker[c][d] = prob;
        }
    }
    TransitionMatrix cls{};
    std::array<int, 5> members{};
    for (int c = 0; c < 16; ++c) {
        const int z = std::popcount(static_cast<unsigned>(c));
        ++members[z];
        for (int d = 0; d < 16; ++d) cls[z][std::popcount(static_cast<unsigned>(d))] += worker[c][d];
    }
    for (int z = 0; z < 5; ++z)
        for (auto& v : cls[z]) v /= members[z];
    return cls;
}

const TransitionMatrix kPrintedM{{{0.522, 0.3684, 0.0975, 0.0114, 0.0005},
                                {0, 0.6141, 0.3251, 0.0573, 0.0034},
                                {0, 0, 0.723, 0.255, 0.0225},
                                {0, 0, 0, 0.85, 0.15},
                                {0, 0, 0, 0, 1}}};

std::vector<double> values_of(const std::vector<Maybe>& v) {
    std::vector<double> out;
    for (auto& x : v) out.push_back(x.value_or(-999));
    return out;
}

} // namespace

TEST_CASE("strategy names round-trip", "[task]") {
    for (auto s : all_strategies()) CHECK(parse_strategy(to_string(s)) == s);
    CHECK_THROWS_AS(parse_strategy("XX"), ConfigError);
}

TEST_CASE("BB syntactic content per variable and cycle", "[task][syntactic]") {
    const auto t = bb_syntactic_table();
    CHECK(t.worker_state == Approx(1.0));
    CHECK(t.mid_abs == Approx(1.5));
    CHECK(t.top_abs == Approx(2.03).margin(0.005));
    CHECK(t.top_ctrl == Approx(2.03).margin(0.005));
    // Mid-manager errors over the 16 configurations: 2 (5/16), 1 (10/16), 0 (1/16).
    const double oracle = -(1 / 16.0) * std::log2(1 / 16.0) - (10 / 16.0) * std::log2(10 / 16.0) -
                          (5 / 16.0) * std::log2(5 / 16.0);
    CHECK(t.mid_ctrl == Approx(oracle).epsilon(1e-12));
    CHECK(t.worker_ctrl == Approx(oracle).epsilon(1e-12));
    CHECK(t.mid_ctrl == Approx(1.198).margin(0.0005));
    CHECK(t.res_S0_ctrl == Approx(4.79).margin(0.005));
    CHECK(t.res_S1_ctrl == Approx(2.396).margin(0.001));
    CHECK(*t.cycle == Approx(18.248).margin(0.005));
    CHECK(*c_syn_td(Strategy::Md) == 24.0);
    CHECK(*c_syn_td(Strategy::RS) == 4.0);
    CHECK_FALSE(c_syn_td(Strategy::RB).has_value());
    CHECK_FALSE(c_syn_td(Strategy::St).has_value());
}

TEST_CASE("inter-scale entropy deltas", "[task][syntactic]") {
    const auto t = bb_syntactic_table();
    CHECK(inter_scale_entropy_delta(t.info_S0_abs, t.info_S1_abs) == Approx(-1.0));
    CHECK(inter_scale_entropy_delta(t.info_S1_abs, t.info_S2_abs) == Approx(-0.97).margin(0.005));
    CHECK(inter_scale_entropy_delta(t.info_S2_ctrl, t.info_S1_ctrl) == Approx(-0.8).margin(0.05));
    CHECK(inter_scale_entropy_delta(2.0, 2.0) == 0.0);
}

TEST_CASE("BB transition matrix", "[task][markov]") {
    const auto m = build_transition_matrix(Strategy::BB);
    const auto oracle = brute_force_projection(Strategy::BB);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            CHECK(m[i][j] == Approx(oracle[i][j]).margin(1e-12));
            // Printed matrix, at half a unit of its last printed digit.
            CHECK(m[i][j] == Approx(kPrintedM[i][j]).margin(5.0001e-4));
        }
    CHECK(m[0][4] == Approx(0.0005).margin(1e-5));
    CHECK(m[3][3] == Approx(0.85));
    CHECK(m[3][4] == Approx(0.15));
}

TEST_CASE("random strategies match the worker-level chain", "[task][markov]") {
    for (auto s : {Strategy::RS, Strategy::RB}) {
        const auto m = build_transition_matrix(s);
        const auto oracle = brute_force_projection(s);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) CHECK(m[i][j] == Approx(oracle[i][j]).margin(1e-12));
    }
}

TEST_CASE("transition matrices stay row-stochastic", "[task][markov][property]") {
    for (auto s : all_strategies())
        for (bool err : {false, true}) {
            const auto m = build_transition_matrix(s, err);
            for (int k : {1, 7, 50}) {
                const auto mk = matrix_power(m, k);
                for (auto& row : mk) {
                    double sum = 0.0;
                    for (double v : row) {
                        CHECK(v >= 0.0);
                        sum += v;
                    }
                    CHECK(sum == Approx(1.0).margin(1e-9));
                }
            }
        }
    const auto bb = build_transition_matrix(Strategy::BB);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < i; ++j) CHECK(bb[i][j] == 0.0);
}

TEST_CASE("goal is absorbing and approached monotonically", "[task][markov][property]") {
    for (auto s : {Strategy::BB, Strategy::Md}) {
        double prev = 0.0;
        for (int m = 0; m <= 80; ++m) {
            const double p = pragmatic_goal_value_td(s, m).p_goal;
            CHECK(p >= prev - 1e-15);
            prev = p;
        }
        CHECK(prev == Approx(1.0).margin(1e-3));
    }
}

TEST_CASE("pragmatic goal values", "[task][markov]") {
    for (int m = 2; m <= 50; ++m) CHECK(pragmatic_goal_value_td(Strategy::Md, m).v_goal == 1.0);
    for (int m = 0; m <= 50; ++m) CHECK(pragmatic_goal_value_td(Strategy::St, m).v_goal == 0.0);
    for (int m = 1; m <= 50; ++m) CHECK(pragmatic_goal_value_td(Strategy::RB, m).v_goal == Approx(1.0 / 3.0));
    CHECK(pragmatic_goal_value_td(Strategy::RS, 20).v_goal == Approx(1.0 / 3.0).margin(0.01));
    CHECK(pragmatic_goal_value_td(Strategy::RB, 5).p_goal_keep == Approx(1.5));
    CHECK(pragmatic_goal_value_td(Strategy::RS, 30).p_goal_keep == Approx(1.5).margin(0.01));
    CHECK(pragmatic_goal_value_td(Strategy::BB, 0).v_goal == 0.0);

    // BB from 0000 keeps the goal, so V_pr,gl is the expected share on k1
    // after m - 1 rounds of Binomial switching.
    for (int m : {2, 10, 20, 30, 50})
        CHECK(pragmatic_goal_value_td(Strategy::BB, m).v_goal == Approx(1.0 - std::pow(0.85, m - 1)).epsilon(1e-12));

    for (auto s : all_strategies())
        for (int m = 0; m <= 50; ++m) {
            const double v = pragmatic_goal_value_td(s, m, m % 2 == 0).v_goal;
            CHECK(v >= -1.0);
            CHECK(v <= 1.0);
        }
}

TEST_CASE("p_goal-keep of zero gives -1", "[task][markov]") {
    // Starting at the goal under a chain that always leaves it.
    GoalValue g = pragmatic_goal_value_td(Strategy::RB, 1, false, 4);
    CHECK(g.v_goal < 0.0);
    CHECK(g.p_goal_keep == Approx(0.5));
}

TEST_CASE("error injection", "[task][markov]") {
    CHECK(error_injection_experiment(Strategy::Md, 50).relative_loss == Approx(0.25).margin(1e-12));
    CHECK(error_injection_experiment(Strategy::BB, 50).relative_loss == Approx(0.23).margin(0.02));
    for (auto s : {Strategy::RS, Strategy::RB, Strategy::St})
        CHECK(error_injection_experiment(s, 50).relative_loss == 0.0);
}

TEST_CASE("pragmatic efficiency curve", "[task][markov]") {
    const auto bb = goal_value_curve(Strategy::BB, 50);
    const auto md = goal_value_curve(Strategy::Md, 50);
    REQUIRE(bb.size() == 51);
    CHECK_FALSE(bb[0].efficiency.has_value());
    double sum = 0.0;
    for (int i = 1; i <= 50; ++i) sum += bb[i].value.v_goal;
    CHECK(*bb[50].efficiency == Approx(sum / (50 * *c_syn_td(Strategy::BB))));
    // BB overtakes Md in the long run, by about 16%.
    CHECK(*bb[50].efficiency / *md[50].efficiency == Approx(1.16).margin(0.01));
    CHECK_FALSE(goal_value_curve(Strategy::St, 5)[5].efficiency.has_value());
}

TEST_CASE("BB scenario replay", "[task][scenario]") {
    const auto series = run_scenario(Strategy::BB, 6, scripted_draws(scripted_bb_switches()));
    CHECK(semantic_delta_series(series) == std::vector<double>{4, 12, 10, 4, 2, 0});
    const auto truth = semantic_truth_td(series, Strategy::BB, c_syn_td(Strategy::BB));
    const std::vector<double> dth{4, 0, -2, -2, 0, 0}, sv{0, 1, 0.5, 0.5, 1, 1};
    for (int t = 0; t < 6; ++t) {
        CHECK(truth[t].delta_th == dth[t]);
        CHECK(truth[t].sv_th == sv[t]);
    }
    CHECK_FALSE(truth[0].value.has_value());
    const std::vector<double> v{1, -1.0 / 3, 0, 1.0 / 3, 0};
    for (int t = 1; t < 6; ++t) CHECK(*truth[t].value == Approx(v[t - 1]));
    CHECK(*truth[3].efficiency == Approx(0.27).margin(0.005));
    CHECK(*truth[5].efficiency == Approx(0.27).margin(0.005));
    // The normalized efficiency formula, evaluated independently.
    CHECK(*truth[1].efficiency == Approx(10.0 / 18.2504).margin(1e-4));

    const auto prag = pragmatic_deltas_td(series);
    const std::vector<double> scope{0, 0, 4, 2, 0, 0};
    for (int t = 0; t < 6; ++t) CHECK(prag[t].scope == scope[t]);
    CHECK_FALSE(prag[0].adaptation.has_value());
    CHECK_FALSE(prag[1].adaptation.has_value());
    CHECK(*prag[2].adaptation == 2);
    CHECK(*prag[3].adaptation == 0);
    CHECK(*prag[4].adaptation == -2);
    CHECK(*prag[5].adaptation == 0);
    CHECK(series[4].state == std::array<int, 4>{1, 1, 1, 1});
}

TEST_CASE("Md scenario replay", "[task][scenario]") {
    const auto series = run_scenario(Strategy::Md, 6, scripted_draws({}));
    const auto truth = semantic_truth_td(series, Strategy::Md, c_syn_td(Strategy::Md));
    const std::vector<double> dth{-4, 0, 0, 0, 0, 0};
    for (int t = 0; t < 6; ++t) CHECK(truth[t].delta_th == dth[t]);
    CHECK(*truth[1].value == 1.0);
    for (int t = 2; t < 6; ++t) {
        CHECK(*truth[t].value == 0.0);
        CHECK(*truth[t].efficiency == Approx(0.208).margin(0.001));
    }
    const auto prag = pragmatic_deltas_td(series);
    CHECK(prag[2].scope == 4);
    CHECK(prag[3].scope == 0);
    CHECK(*prag[2].adaptation == 4);
    CHECK(*prag[3].adaptation == -4);
    CHECK(semantic_delta_series(series)[0] == 4);
}

TEST_CASE("hierarchy invariants", "[task][scenario][property]") {
    sim::Rng rng(31, 2);
    for (auto s : all_strategies()) {
        auto draws = random_draws(rng, switch_probability(s));
        auto series = run_scenario(s, 50, draws);
        for (const auto& h : series) {
            if (!uses_hierarchy(s)) continue;
            CHECK(*h.mid_abs[0] == h.state[0] + h.state[1]);
            CHECK(*h.mid_abs[1] == h.state[2] + h.state[3]);
            CHECK(*h.top_abs == *h.mid_abs[0] + *h.mid_abs[1]);
        }
        if (s == Strategy::St)
            for (const auto& h : series) CHECK(h.state == std::array<int, 4>{0, 0, 0, 0});
    }
}

TEST_CASE("goal state is absorbing in replay", "[task][scenario]") {
    auto h = initial_hierarchy(4, {1, 1, 1, 1});
    sim::Rng rng(1, 1);
    auto draws = random_draws(rng, 1.0);
    auto series = std::vector<TaskHierarchy>{h};
    auto start = start_scenario(Strategy::BB);
    start.state = {1, 1, 1, 1};
    series = {start};
    for (int i = 0; i < 20; ++i) series.push_back(feedback_cycle_step(series.back(), Strategy::BB, draws));
    for (const auto& x : series) {
        CHECK(x.state == std::array<int, 4>{1, 1, 1, 1});
        CHECK(x.switched == 0);
    }
    CHECK(values_of({series.back().top_ctrl}) == std::vector<double>{0});
}

TEST_CASE("error injection in replay keeps worker 0 on k0 for Md", "[task][scenario]") {
    const auto series = run_scenario(Strategy::Md, 10, scripted_draws({}), true);
    CHECK(series.back().state == std::array<int, 4>{0, 1, 1, 1});
}
