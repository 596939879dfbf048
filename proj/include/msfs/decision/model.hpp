#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "msfs/core/error.hpp"
#include "msfs/measures/entropy.hpp"
#include "msfs/sim/rng.hpp"

namespace msfs::decision {

inline constexpr int kGridSide = 58;
inline constexpr int kCells = kGridSide * kGridSide;
inline constexpr int kInnerSide = 50;
inline constexpr int kInnerOffset = (kGridSide - kInnerSide) / 2;
// Opinions drawn without perception take two-decimal values in [0,1].
inline constexpr int kOpinionLevels = 101;

enum class CdStrategy { Consensus, RandomOP, RandomCN, RandomTOT };

inline const std::vector<CdStrategy>& all_cd_strategies() {
    static const std::vector<CdStrategy> v{CdStrategy::Consensus, CdStrategy::RandomOP, CdStrategy::RandomCN,
                                           CdStrategy::RandomTOT};
    return v;
}

inline std::string to_string(CdStrategy s) {
    switch (s) {
        case CdStrategy::Consensus: return "consensus";
        case CdStrategy::RandomOP: return "random_op";
        case CdStrategy::RandomCN: return "random_cn";
        case CdStrategy::RandomTOT: return "random_tot";
    }
    return "?";
}

inline CdStrategy parse_cd_strategy(const std::string& s) {
    for (auto k : all_cd_strategies())
        if (to_string(k) == s) return k;
    throw ConfigError("unknown collective-decision strategy: " + s);
}

struct CdParams {
    int N = 5;
    int R = 5;
    double alpha = 0.5;  // weight of the fresh scan against the previous opinion
    double kappa = 2.0;  // consensus steps per agent per unit of divergence
    double delta_env = 0.002;
    double w_start = 0.6;
    double lower = 0.10, upper = 0.90;
    int horizon = 5000;
    bool literal_goal_sign = false;

    void validate() const {
        if (N < 1 || N > 30) throw ConfigError("N must lie in [1,30]");
        if (R < 1 || R > 30) throw ConfigError("R must lie in [1,30]");
        if (!(alpha > 0 && alpha <= 1)) throw ConfigError("alpha must lie in (0,1]");
        if (!(kappa > 0)) throw ConfigError("kappa must be positive");
        if (!(delta_env > 0 && delta_env < 1)) throw ConfigError("delta_env must lie in (0,1)");
        if (!(lower >= 0 && lower < upper && upper <= 1)) throw ConfigError("collapse bounds must satisfy 0<=lower<upper<=1");
        if (!(w_start > lower && w_start < upper)) throw ConfigError("w_start must lie strictly between the collapse bounds");
        if (horizon < 1) throw ConfigError("horizon must be positive");
    }
};

// Binary information sources; the A-count always equals round(W_A * cells).
class InfoGrid {
public:
    InfoGrid(double w, sim::Rng& rng) : cells_(kCells, 0), where_(kCells) {
        for (int c = 0; c < kCells; ++c) {
            where_[c] = static_cast<int>(b_.size());
            b_.push_back(c);
        }
        set_weight(w, rng);
    }

    double weight() const { return w_; }
    int a_count() const { return static_cast<int>(a_.size()); }
    std::uint8_t at(int row, int col) const { return cells_[row * kGridSide + col]; }

    // Flips the fewest uniformly chosen cells that match the new weight.
    void set_weight(double w, sim::Rng& rng) {
        w_ = std::clamp(w, 0.0, 1.0);
        const int target = static_cast<int>(std::lround(w_ * kCells));
        while (a_count() < target) flip(b_, a_, 1, rng);
        while (a_count() > target) flip(a_, b_, 0, rng);
    }

private:
    void flip(std::vector<int>& from, std::vector<int>& to, std::uint8_t value, sim::Rng& rng) {
        const int k = static_cast<int>(rng.below(from.size()));
        const int cell = from[k];
        where_[from.back()] = k;
        from[k] = from.back();
        from.pop_back();
        where_[cell] = static_cast<int>(to.size());
        to.push_back(cell);
        cells_[cell] = value;
    }

    double w_ = 0;
    std::vector<std::uint8_t> cells_;
    std::vector<int> where_;
    std::vector<int> a_, b_;
};

struct Offset {
    int dr, dc;
};

// Cells around an agent in scan order: own cell, then Chebyshev rings, each
// ring walked by angle counter-clockwise from east.
inline const std::vector<Offset>& scan_pattern() {
    static const std::vector<Offset> order = [] {
        std::vector<Offset> v;
        const int reach = kInnerOffset;
        for (int dr = -reach; dr <= reach; ++dr)
            for (int dc = -reach; dc <= reach; ++dc) v.push_back({dr, dc});
        auto key = [](const Offset& o) {
            const int ring = std::max(std::abs(o.dr), std::abs(o.dc));
            double a = std::atan2(-static_cast<double>(o.dr), static_cast<double>(o.dc));
            if (a < 0) a += 2 * M_PI;
            return std::pair<int, double>{ring, a};
        };
        std::stable_sort(v.begin(), v.end(), [&](const Offset& x, const Offset& y) { return key(x) < key(y); });
        return v;
    }();
    return order;
}

struct Position {
    int row, col;
};

inline double scan_mean(const InfoGrid& g, Position p, int R) {
    const auto& order = scan_pattern();
    if (R < 1 || R > static_cast<int>(order.size())) throw DomainError("scan size outside the pattern");
    int s = 0;
    for (int k = 0; k < R; ++k) s += g.at(p.row + order[k].dr, p.col + order[k].dc);
    return static_cast<double>(s) / R;
}

// Distinct cells of the inner region, uniformly chosen.
inline std::vector<Position> place_agents(int N, sim::Rng& rng) {
    std::vector<int> idx(kInnerSide * kInnerSide);
    for (int i = 0; i < static_cast<int>(idx.size()); ++i) idx[i] = i;
    std::vector<Position> out;
    for (int i = 0; i < N; ++i) {
        const int pick = i + static_cast<int>(rng.below(idx.size() - i));
        std::swap(idx[i], idx[pick]);
        out.push_back({kInnerOffset + idx[i] / kInnerSide, kInnerOffset + idx[i] % kInnerSide});
    }
    return out;
}

inline int consensus_time(int N, double maxdiv, double kappa) {
    return std::max(1, static_cast<int>(std::ceil(kappa * N * maxdiv - 1e-9)));
}

struct Consensus {
    double o_coll = 0;
    int t_cn = 1;
};

inline Consensus reach_consensus(const std::vector<double>& opinions, CdStrategy s, double kappa, sim::Rng& rng) {
    if (opinions.empty()) throw DomainError("consensus needs at least one opinion");
    switch (s) {
        case CdStrategy::RandomCN:
            return {opinions.size() == 1 ? opinions[0] : opinions[rng.below(opinions.size())], 1};
        case CdStrategy::RandomTOT:
            return {static_cast<double>(rng.below(kOpinionLevels)) / (kOpinionLevels - 1), 1};
        default: break;
    }
    double sum = 0;
    const auto [lo, hi] = std::minmax_element(opinions.begin(), opinions.end());
    for (double o : opinions) sum += o;
    const int N = static_cast<int>(opinions.size());
    return {sum / N, consensus_time(N, *hi - *lo, kappa)};
}

// ---- syntactic content ----

inline std::vector<double> binomial_half(int n) {
    std::vector<double> p(n + 1);
    for (int k = 0; k <= n; ++k)
        p[k] = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) - n * std::log(2.0));
    return p;
}

// Sum of N independent uniform draws on {0..levels-1}.
inline std::vector<double> uniform_sum(int N, int levels) {
    std::vector<double> p{1.0};
    for (int i = 0; i < N; ++i) {
        std::vector<double> q(p.size() + levels - 1, 0.0);
        for (std::size_t a = 0; a < p.size(); ++a)
            for (int b = 0; b < levels; ++b) q[a + b] += p[a] / levels;
        p = std::move(q);
    }
    return p;
}

struct CdSyntactic {
    double h_opinion = 0;  // per agent
    double h_s1 = 0, h_s2 = 0;
    double total() const { return h_s1 + h_s2; }
};

// Every source is a fair coin, so a scanned opinion is Binomial(R, 1/2)/R and
// the mean of N of them is Binomial(N*R, 1/2)/(N*R).
inline CdSyntactic c_syn_cd(int N, int R, CdStrategy s) {
    if (N < 1 || R < 1) throw DomainError("c_syn needs N, R >= 1");
    using measures::shannon_entropy;
    CdSyntactic c;
    const double h_scan = shannon_entropy(binomial_half(R));
    const double h_level = std::log2(static_cast<double>(kOpinionLevels));
    switch (s) {
        case CdStrategy::Consensus:
            c.h_opinion = h_scan;
            c.h_s2 = shannon_entropy(binomial_half(N * R));
            break;
        case CdStrategy::RandomOP:
            c.h_opinion = h_level;
            c.h_s2 = shannon_entropy(uniform_sum(N, kOpinionLevels));
            break;
        case CdStrategy::RandomCN:
            c.h_opinion = h_scan;
            c.h_s2 = h_scan;
            break;
        case CdStrategy::RandomTOT:
            c.h_opinion = 0;
            c.h_s2 = h_level;
            break;
    }
    c.h_s1 = N * c.h_opinion;
    return c;
}

}  // namespace msfs::decision
