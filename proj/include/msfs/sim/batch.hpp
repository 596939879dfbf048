#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "msfs/core/error.hpp"
#include "msfs/measures/value.hpp"

namespace msfs::sim {

struct ExperimentConfig {
    std::string case_study;
    std::string strategy;
    std::map<std::string, double> params;
    std::uint64_t seed = 1;
    double horizon = 1;
    int repetitions = 1;

    double param(const std::string& key, double fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }

    void validate() const {
        if (!(horizon > 0)) throw ConfigError("horizon must be positive");
        if (repetitions < 1) throw ConfigError("repetitions must be at least 1");
    }
};

// Tabular record of one repetition: named columns of possibly-NA values,
// plus the step indices where feedback cycles close.
struct RunTrace {
    std::vector<std::string> columns;
    std::vector<std::vector<measures::Maybe>> rows;
    std::vector<std::size_t> cycle_boundaries;

    void check_boundaries(std::size_t horizon) const {
        for (std::size_t i = 0; i < cycle_boundaries.size(); ++i) {
            if (cycle_boundaries[i] > horizon)
                throw ValidationError("cycle boundary beyond horizon");
            if (i > 0 && cycle_boundaries[i] <= cycle_boundaries[i - 1])
                throw ValidationError("cycle boundaries must increase");
        }
    }
};

// Runs body(i) for i in [0, n) on up to `jobs` threads. Results are written by
// index, so the output never depends on scheduling.
template <class Body>
void parallel_for(std::size_t n, int jobs, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

template <class Result>
std::vector<Result> run_batch(const ExperimentConfig& cfg,
                              const std::function<Result(const ExperimentConfig&, int)>& run_one,
                              int jobs = 1) {
    cfg.validate();
    std::vector<Result> out(static_cast<std::size_t>(cfg.repetitions));
    parallel_for(out.size(), jobs, [&](std::size_t i) { out[i] = run_one(cfg, static_cast<int>(i)); });
    return out;
}

inline double aggregate_weighted(const std::vector<double>& values, const std::vector<double>& weights) {
    if (values.size() != weights.size()) throw ValidationError("aggregate: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (weights[i] < 0.0) throw ValidationError("aggregate: negative weight");
        num += values[i] * weights[i];
        den += weights[i];
    }
    if (den == 0.0) throw DomainError("aggregate: all weights are zero");
    return num / den;
}

} // namespace msfs::sim
