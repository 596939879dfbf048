#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "msfs/core/error.hpp"

namespace msfs::oscillators {

// Scale sizes and parent links. Oscillators are numbered scale by scale,
// bottom first, so the flat index of (m, i) is offset[m] + i.
struct OscillatorHierarchy {
    std::vector<int> sizes;
    std::vector<std::vector<int>> parent;  // parent[m][i] indexes scale m+1; empty for the top
    std::vector<std::vector<std::vector<int>>> children;

    int scales() const { return static_cast<int>(sizes.size()); }
    int count() const {
        int n = 0;
        for (int s : sizes) n += s;
        return n;
    }
    int flat(int m, int i) const {
        int o = 0;
        for (int k = 0; k < m; ++k) o += sizes[k];
        return o + i;
    }
    // Number of bottom-scale oscillators below (m, i); 1 at the bottom.
    int descendants(int m, int i) const {
        if (m == 0) return 1;
        int n = 0;
        for (int c : children[m][i]) n += descendants(m - 1, c);
        return n;
    }

    void validate() const {
        if (sizes.size() < 2) throw ConfigError("oscillator hierarchy needs at least two scales");
        if (sizes.front() != 4) throw ConfigError("bottom scale must hold 4 oscillators");
        if (sizes.back() != 1) throw ConfigError("top scale must hold exactly one oscillator");
        for (int m = 1; m < scales(); ++m)
            for (int i = 0; i < sizes[m]; ++i)
                if (children[m][i].empty()) throw ConfigError("non-bottom oscillator without children");
    }
};

// Bottom scale of 4 with each parent owning an equal contiguous block of
// children; sizes must divide evenly, e.g. (4,1) or (4,2,1).
inline OscillatorHierarchy make_hierarchy(const std::vector<int>& sizes) {
    OscillatorHierarchy h;
    h.sizes = sizes;
    const int M = static_cast<int>(sizes.size());
    h.parent.assign(M, {});
    h.children.assign(M, {});
    for (int m = 0; m < M; ++m) {
        if (sizes[m] < 1) throw ConfigError("scale sizes must be positive");
        h.children[m].assign(sizes[m], {});
    }
    for (int m = 0; m + 1 < M; ++m) {
        if (sizes[m] % sizes[m + 1] != 0) throw ConfigError("scale sizes must divide evenly");
        const int block = sizes[m] / sizes[m + 1];
        h.parent[m].resize(sizes[m]);
        for (int i = 0; i < sizes[m]; ++i) {
            h.parent[m][i] = i / block;
            h.children[m + 1][i / block].push_back(i);
        }
    }
    h.validate();
    return h;
}

inline OscillatorHierarchy two_scale() { return make_hierarchy({4, 1}); }
inline OscillatorHierarchy three_scale() { return make_hierarchy({4, 2, 1}); }

inline constexpr double kInternalDelay = 2.0;
inline constexpr double kHillScale = 0.5;
inline constexpr double kDecay = 0.5;
inline constexpr double kBasal = 0.1;

inline double hill3(double v) {
    const double r = v / kHillScale;
    return r * r * r;
}

// Right-hand side of the X equation given the lagged drive and lagged Y.
inline double dx_dt(double x, double gamma_lag, double y_lag, double F, int PP) {
    if (gamma_lag < 0 || y_lag < 0) throw DomainError("negative concentration in history");
    const double fg = F * gamma_lag;
    const double fg3 = fg * fg * fg;
    return (1.0 + PP * fg3) / (1.0 + fg3 + hill3(y_lag)) - kDecay * x + kBasal;
}

inline double dy_dt(double y, double x_lag) {
    if (x_lag < 0) throw DomainError("negative concentration in history");
    const double a = hill3(x_lag);
    return a / (1.0 + a) - kDecay * y + kBasal;
}

// Blend of reified (parent) and abstracted (children mean) X. The top scale
// has no parent term and the bottom scale no children term.
template <class LaggedX>
double gamma(const OscillatorHierarchy& h, int m, int i, double W, LaggedX&& x_of) {
    const bool top = m == h.scales() - 1;
    const bool bottom = m == 0;
    double parent = 0, mean = 0;
    if (!top) parent = x_of(h.flat(m + 1, h.parent[m][i]));
    if (!bottom) {
        for (int c : h.children[m][i]) mean += x_of(h.flat(m - 1, c));
        mean /= static_cast<double>(h.children[m][i].size());
    }
    if (top) return mean;
    if (bottom) return parent;
    return W * parent + (1.0 - W) * mean;
}

struct HoConfig {
    std::vector<int> sizes{4, 2, 1};
    std::vector<double> F;    // per scale
    std::vector<double> tau;  // per scale, seconds
    double W = 0.5;
    int PP = 0;
    double h = 0.01;
    double t_end = 300.0;
    std::array<double, 4> x0{0.2, 0.4, 0.6, 0.8};
    std::optional<std::array<double, 4>> y0;  // defaults to x0
    bool literal_goal_sign = false;

    void validate() const {
        const std::size_t M = sizes.size();
        if (F.size() != M || tau.size() != M) throw ConfigError("F and tau need one value per scale");
        if (W < 0 || W > 1) throw ConfigError("W must lie in [0,1]");
        if (PP != 0 && PP != 1) throw ConfigError("PP must be 0 or 1");
        if (!(h > 0) || !(t_end > 0)) throw ConfigError("h and t_end must be positive");
        auto whole = [&](double d, const char* what) {
            const double k = d / h;
            if (std::abs(k - std::round(k)) > 1e-9 || std::round(k) < 1)
                throw ConfigError(std::string(what) + " must be a positive multiple of h");
        };
        for (double t : tau) whole(t, "tau");
        whole(kInternalDelay, "internal delay 2");
        whole(t_end, "t_end");
        for (double f : F)
            if (f < 0) throw ConfigError("F must be non-negative");
        for (double x : x0)
            if (x < 0) throw ConfigError("initial concentrations must be non-negative");
        if (y0)
            for (double y : *y0)
                if (y < 0) throw ConfigError("initial concentrations must be non-negative");
    }
};

// Time-stamped X and Y on the grid t_n = n h plus the right-hand sides at the
// grid points. Before t = 0 every oscillator holds its initial value.
struct ConcentrationHistory {
    OscillatorHierarchy hier;
    double h = 0.01;
    int steps = 0;
    std::vector<std::vector<double>> X, Y, fX, fY;

    double t(int n) const { return n * h; }

    // Grid read with constant pre-history.
    double x_at(int k, int n) const { return X[k][n < 0 ? 0 : n]; }

    // Cubic Hermite lookup at t = (n + s) h, s in [0, 1].
    double lag_lookup(const std::vector<double>& v, const std::vector<double>& f, int n, double s) const {
        if (n > steps) throw DomainError("history does not cover the requested lag");
        if (n < 0) return v[0];
        if (s == 0.0) return v[n];
        if (n + 1 > steps) throw DomainError("history does not cover the requested lag");
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * v[n] + (s3 - 2 * s2 + s) * h * f[n] + (-2 * s3 + 3 * s2) * v[n + 1] +
               (s3 - s2) * h * f[n + 1];
    }
};

inline ConcentrationHistory integrate_dde(const HoConfig& cfg) {
    cfg.validate();
    ConcentrationHistory H;
    H.hier = make_hierarchy(cfg.sizes);
    H.h = cfg.h;
    H.steps = static_cast<int>(std::lround(cfg.t_end / cfg.h));
    const auto& hier = H.hier;
    const int K = hier.count(), N = H.steps, M = hier.scales();
    H.X.assign(K, std::vector<double>(N + 1));
    H.Y = H.fX = H.fY = H.X;

    // Bottom values given, higher scales average their children.
    auto spread = [&](const std::array<double, 4>& bottom) {
        std::vector<double> v(K);
        for (int i = 0; i < 4; ++i) v[i] = bottom[i];
        for (int m = 1; m < M; ++m)
            for (int i = 0; i < hier.sizes[m]; ++i) {
                double s = 0;
                for (int c : hier.children[m][i]) s += v[hier.flat(m - 1, c)];
                v[hier.flat(m, i)] = s / hier.children[m][i].size();
            }
        return v;
    };
    const auto xi = spread(cfg.x0), yi = spread(cfg.y0.value_or(cfg.x0));
    for (int k = 0; k < K; ++k) {
        H.X[k][0] = xi[k];
        H.Y[k][0] = yi[k];
    }

    std::vector<int> scale_of(K), index_of(K), dtau(M);
    for (int m = 0; m < M; ++m) {
        dtau[m] = static_cast<int>(std::lround(cfg.tau[m] / cfg.h));
        for (int i = 0; i < hier.sizes[m]; ++i) {
            scale_of[hier.flat(m, i)] = m;
            index_of[hier.flat(m, i)] = i;
        }
    }
    const int d2 = static_cast<int>(std::lround(kInternalDelay / cfg.h));

    auto lagged = [&](const std::vector<double>& v, const std::vector<double>& f, int n, double s) {
        return H.lag_lookup(v, f, n, s);
    };
    auto rhs = [&](int k, int n, double s, double x, double y, double& fx, double& fy) {
        const int m = scale_of[k];
        const int nl = n - dtau[m];
        const double g = gamma(hier, m, index_of[k], cfg.W, [&](int j) { return lagged(H.X[j], H.fX[j], nl, s); });
        const double ylag = lagged(H.Y[k], H.fY[k], n - d2, s);
        const double xlag = lagged(H.X[k], H.fX[k], n - d2, s);
        fx = dx_dt(x, g, ylag, cfg.F[m], cfg.PP);
        fy = dy_dt(y, xlag);
    };

    for (int n = 0; n <= N; ++n) {
        for (int k = 0; k < K; ++k) rhs(k, n, 0.0, H.X[k][n], H.Y[k][n], H.fX[k][n], H.fY[k][n]);
        if (n == N) break;
        for (int k = 0; k < K; ++k) {
            const double x = H.X[k][n], y = H.Y[k][n], hh = cfg.h;
            const double k1x = H.fX[k][n], k1y = H.fY[k][n];
            double k2x, k2y, k3x, k3y, k4x, k4y;
            rhs(k, n, 0.5, x + 0.5 * hh * k1x, y + 0.5 * hh * k1y, k2x, k2y);
            rhs(k, n, 0.5, x + 0.5 * hh * k2x, y + 0.5 * hh * k2y, k3x, k3y);
            rhs(k, n, 1.0, x + hh * k3x, y + hh * k3y, k4x, k4y);
            H.X[k][n + 1] = x + hh / 6 * (k1x + 2 * k2x + 2 * k3x + k4x);
            H.Y[k][n + 1] = y + hh / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
        }
    }
    return H;
}

}  // namespace msfs::oscillators
