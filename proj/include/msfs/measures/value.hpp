#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "msfs/core/error.hpp"

namespace msfs::measures {

// A measure that may be undefined ("NA"). NA is never the same as zero.
using Maybe = std::optional<double>;
inline constexpr std::nullopt_t NA = std::nullopt;

inline Maybe state_value_delta(Maybe sv_now, Maybe sv_prev) {
    if (!sv_now || !sv_prev) return NA;
    return *sv_now - *sv_prev;
}

inline double state_value_delta(double sv_now, double sv_prev) { return sv_now - sv_prev; }

inline double efficiency(double value, double c_syn) {
    if (c_syn == 0.0) throw DomainError("efficiency: syntactic content is zero");
    return value / c_syn;
}

inline Maybe efficiency(Maybe value, Maybe c_syn) {
    if (!value || !c_syn) return NA;
    return efficiency(*value, *c_syn);
}

enum class StateRole { truth, optimal, goal };

struct StateValueSeries {
    StateRole role = StateRole::truth;
    std::vector<double> times;
    std::vector<double> values;

    void push(double t, double v) {
        if (!times.empty() && !(t > times.back()))
            throw ValidationError("state value series: times must increase");
        times.push_back(t);
        values.push_back(v);
    }

    // Value change over each window of `theta` samples; NA until a full window exists.
    std::vector<Maybe> window_deltas(std::size_t theta) const {
        std::vector<Maybe> out(values.size(), NA);
        for (std::size_t i = theta; i < values.size(); ++i)
            out[i] = values[i] - values[i - theta];
        return out;
    }
};

struct MeasureSeries {
    std::string kind;
    double theta = 1.0;
    std::vector<double> times;
    std::vector<Maybe> values;

    void push(double t, Maybe v) {
        times.push_back(t);
        values.push_back(v);
    }
};

} // namespace msfs::measures
