#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "msfs/core/error.hpp"

namespace msfs::measures {

inline constexpr std::size_t kDefaultGridPoints = 10000;

// A density on [0,1] sampled at grid points.
struct SampledDensity {
    std::vector<double> x;
    std::vector<double> f;
};

inline std::vector<double> unit_grid(std::size_t points = kDefaultGridPoints) {
    if (points < 2) throw ValidationError("grid needs at least 2 points");
    std::vector<double> x(points);
    for (std::size_t i = 0; i < points; ++i)
        x[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    return x;
}

template <class Fx, class Gx>
double trapezoid_integrate(const Fx& f, const Gx& grid) {
    const std::size_t n = std::size(grid);
    if (n < 2) throw ValidationError("trapezoid: grid needs at least 2 points");
    if (std::size(f) != n) throw ValidationError("trapezoid: samples and grid differ in length");
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double dx = grid[i] - grid[i - 1];
        if (!(dx > 0.0)) throw ValidationError("trapezoid: grid not strictly increasing");
        s += 0.5 * dx * (f[i] + f[i - 1]);
    }
    return s;
}

// Density of the mean of n independent uniform[0,1] draws.
inline double bates_pdf(int n, double x) {
    if (n < 1) throw ValidationError("bates_pdf: n must be >= 1");
    if (x < 0.0 || x > 1.0) return 0.0;
    if (n == 1) return 1.0;
    const double nx = n * x;
    double sum = 0.0, binom = 1.0, fact = 1.0;
    for (int k = 1; k < n; ++k) fact *= k;
    for (int k = 0; k <= n && k <= nx; ++k) {
        const double term = binom * std::pow(nx - k, n - 1);
        sum += (k % 2 == 0) ? term : -term;
        binom = binom * (n - k) / (k + 1);
    }
    return std::max(0.0, n / fact * sum);
}

inline SampledDensity sample_density(const std::function<double(double)>& pdf,
                                     std::size_t points = kDefaultGridPoints) {
    SampledDensity d{unit_grid(points), {}};
    d.f.reserve(points);
    for (double xi : d.x) d.f.push_back(pdf(xi));
    return d;
}

inline SampledDensity uniform_density(std::size_t points = kDefaultGridPoints) {
    return sample_density([](double) { return 1.0; }, points);
}

inline SampledDensity bates_density(int n, std::size_t points = kDefaultGridPoints) {
    if (n < 1) throw ValidationError("bates_pdf: n must be >= 1");
    return sample_density([n](double xi) { return bates_pdf(n, xi); }, points);
}

namespace detail {
inline void require_same_grid(const SampledDensity& a, const SampledDensity& b) {
    if (a.x.size() != b.x.size() || a.f.size() != a.x.size() || b.f.size() != b.x.size())
        throw ValidationError("densities are sampled on different grids");
    for (std::size_t i = 0; i < a.x.size(); ++i)
        if (a.x[i] != b.x[i]) throw ValidationError("densities are sampled on different grids");
}
} // namespace detail

// D_KL(p || q) by the trapezoid rule. `log_base` of e gives nats, 2 gives bits.
inline double kl_divergence(const SampledDensity& p, const SampledDensity& q,
                            double log_base = std::numbers::e) {
    detail::require_same_grid(p, q);
    std::vector<double> integrand(p.x.size(), 0.0);
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        if (p.f[i] <= 0.0) continue;
        if (q.f[i] <= 0.0)
            throw DomainError("kl_divergence: q vanishes where p is positive");
        integrand[i] = p.f[i] * std::log(p.f[i] / q.f[i]);
    }
    return std::max(0.0, trapezoid_integrate(integrand, p.x)) / std::log(log_base);
}

// Jensen-Shannon divergence in nats; lies in [0, log 2].
inline double js_divergence(const SampledDensity& f1, const SampledDensity& f2) {
    detail::require_same_grid(f1, f2);
    SampledDensity mid{f1.x, std::vector<double>(f1.x.size())};
    for (std::size_t i = 0; i < f1.x.size(); ++i) mid.f[i] = 0.5 * (f1.f[i] + f2.f[i]);
    const double js = 0.5 * kl_divergence(f1, mid) + 0.5 * kl_divergence(f2, mid);
    return std::min(js, std::numbers::ln2);
}

} // namespace msfs::measures
