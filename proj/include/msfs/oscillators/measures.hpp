#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "msfs/measures/density.hpp"
#include "msfs/measures/value.hpp"
#include "msfs/oscillators/model.hpp"

namespace msfs::oscillators {

using measures::Maybe;

struct SyntacticContent {
    std::vector<std::vector<double>> per_oscillator;  // [m][i]
    double total = 0;
};

// Bottom oscillators are uniform on [0,1]; an oscillator averaging n bottom
// values follows Bates(n). Content is 1 - JS(f || U)/log 2.
inline SyntacticContent c_syn_ho(const OscillatorHierarchy& h,
                                 std::size_t grid_points = measures::kDefaultGridPoints) {
    SyntacticContent out;
    const auto u = measures::uniform_density(grid_points);
    out.per_oscillator.resize(h.scales());
    for (int m = 0; m < h.scales(); ++m)
        for (int i = 0; i < h.sizes[m]; ++i) {
            const int n = h.descendants(m, i);
            const double js = n == 1 ? 0.0 : measures::js_divergence(measures::bates_density(n, grid_points), u);
            const double c = std::clamp(1.0 - js / std::log(2.0), 0.0, 1.0);
            out.per_oscillator[m].push_back(c);
            out.total += c;
        }
    return out;
}

struct HoMeasures {
    std::vector<double> t;
    std::vector<Maybe> delta_sm, v_sm_th, e_sm_th, delta_pr, delta_gl, v_pr_gl, e_pr_gl;
    double c_syn = 0;
};

namespace detail {
// Central difference on the grid; NA where a neighbour is missing.
inline std::vector<Maybe> central(const std::vector<double>& g, double h) {
    std::vector<Maybe> d(g.size(), measures::NA);
    for (std::size_t n = 1; n + 1 < g.size(); ++n) d[n] = (g[n + 1] - g[n - 1]) / (2 * h);
    return d;
}
}  // namespace detail

inline std::vector<double> bottom_variance(const ConcentrationHistory& H) {
    std::vector<double> v(H.steps + 1);
    for (int n = 0; n <= H.steps; ++n) {
        double mu = 0, s = 0;
        for (int i = 0; i < 4; ++i) mu += H.X[i][n];
        mu /= 4;
        for (int i = 0; i < 4; ++i) s += (H.X[i][n] - mu) * (H.X[i][n] - mu);
        v[n] = s / 4;
    }
    return v;
}

inline HoMeasures compute_measures(const HoConfig& cfg, const ConcentrationHistory& H) {
    const auto& hier = H.hier;
    const int N = H.steps;
    const double h = H.h;
    const int d0 = static_cast<int>(std::lround(cfg.tau[0] / h));
    HoMeasures out;
    out.c_syn = c_syn_ho(hier).total;
    out.t.resize(N + 1);
    for (int n = 0; n <= N; ++n) out.t[n] = H.t(n);

    std::vector<int> parent(4);
    for (int i = 0; i < 4; ++i) parent[i] = hier.flat(1, hier.parent[0][i]);

    // Knowledge held at the bottom: parent X delayed by tau_0. Its derivative is
    // read off the parent's record around t - tau_0 (flat before t = 0).
    out.delta_sm.assign(N + 1, measures::NA);
    for (int n = 0; n <= N; ++n) {
        const int k = n - d0;
        double s = 0;
        for (int i = 0; i < 4; ++i) {
            const int p = parent[i];
            s += (H.x_at(p, k + 1) - H.x_at(p, k - 1)) / (2 * h);
        }
        out.delta_sm[n] = s / 4;
    }

    std::vector<std::vector<double>> gap(4, std::vector<double>(N + 1));
    for (int n = 0; n <= N; ++n) {
        double xth = 0;
        for (int i = 0; i < 4; ++i) xth += H.X[i][n];
        xth /= 4;
        for (int i = 0; i < 4; ++i) gap[i][n] = std::abs(xth - H.x_at(parent[i], n - d0));
    }
    out.v_sm_th.assign(N + 1, measures::NA);
    out.delta_pr.assign(N + 1, measures::NA);
    for (int n = 1; n < N; ++n) {
        double v = 0, a = 0;
        for (int i = 0; i < 4; ++i) {
            v += (gap[i][n + 1] - gap[i][n - 1]) / (2 * h);
            a += (H.X[i][n + 1] - 2 * H.X[i][n] + H.X[i][n - 1]) / (h * h);
        }
        out.v_sm_th[n] = -v / 4;
        out.delta_pr[n] = a / 4;
    }

    const auto var = bottom_variance(H);
    out.delta_gl.assign(var.begin(), var.end());
    out.v_pr_gl = detail::central(var, h);
    const double sign = cfg.literal_goal_sign ? 1.0 : -1.0;
    for (auto& v : out.v_pr_gl)
        if (v) *v *= sign;

    out.e_sm_th.resize(N + 1);
    out.e_pr_gl.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        out.e_sm_th[n] = measures::efficiency(out.v_sm_th[n], out.c_syn);
        out.e_pr_gl[n] = measures::efficiency(out.v_pr_gl[n], out.c_syn);
    }
    return out;
}

// First time after which bottom-scale variance stays below the threshold;
// infinity if it never settles.
inline double time_to_sync(const ConcentrationHistory& H, double threshold = 1e-3) {
    const auto var = bottom_variance(H);
    int last_bad = -1;
    for (int n = 0; n <= H.steps; ++n)
        if (var[n] >= threshold) last_bad = n;
    if (last_bad == H.steps) return std::numeric_limits<double>::infinity();
    return H.t(last_bad + 1);
}

// Peak-to-peak swing of the bottom mean over a grid window; separates
// synchronized oscillation from a synchronized fixed point.
inline double window_amplitude(const ConcentrationHistory& H, int from, int to) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int n = std::max(0, from); n <= std::min(to, H.steps); ++n) {
        double mu = 0;
        for (int i = 0; i < 4; ++i) mu += H.X[i][n];
        mu /= 4;
        lo = std::min(lo, mu);
        hi = std::max(hi, mu);
    }
    return hi - lo;
}

inline double trailing_amplitude(const ConcentrationHistory& H, double window = 50.0) {
    return window_amplitude(H, H.steps - static_cast<int>(std::lround(window / H.h)), H.steps);
}

// Swing of the final window relative to the window 100 s earlier; below 1 the
// oscillation is dying out toward a fixed point.
inline double amplitude_persistence(const ConcentrationHistory& H, double window = 50.0, double gap = 100.0) {
    const int w = static_cast<int>(std::lround(window / H.h)), g = static_cast<int>(std::lround(gap / H.h));
    const double late = window_amplitude(H, H.steps - w, H.steps);
    const double early = window_amplitude(H, H.steps - w - g, H.steps - g);
    return early > 0 ? late / early : 0.0;
}

}  // namespace msfs::oscillators
