#pragma once

#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "msfs/core/error.hpp"

namespace msfs::measures {

inline constexpr double kProbTolerance = 1e-9;

struct DiscreteDistribution {
    std::vector<std::string> outcomes;
    std::vector<double> probs;

    void validate() const {
        if (outcomes.size() != probs.size())
            throw ValidationError("distribution: outcomes and probs differ in length");
        double total = 0.0;
        for (double p : probs) {
            if (!(p >= 0.0)) throw ValidationError("distribution: negative probability");
            total += p;
        }
        if (std::abs(total - 1.0) > kProbTolerance)
            throw ValidationError("distribution: probabilities sum to " + std::to_string(total));
    }

    // Builds a distribution from non-negative weights; labels are the indices.
    static DiscreteDistribution from_weights(const std::vector<double>& w) {
        double total = std::accumulate(w.begin(), w.end(), 0.0);
        if (!(total > 0.0)) throw ValidationError("distribution: weights sum to zero");
        DiscreteDistribution d;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] < 0.0) throw ValidationError("distribution: negative weight");
            d.outcomes.push_back(std::to_string(i));
            d.probs.push_back(w[i] / total);
        }
        return d;
    }

    // Tabulates a sample of numeric outcomes with their probabilities, merging equal values.
    static DiscreteDistribution tabulate(const std::vector<std::pair<double, double>>& value_prob) {
        std::map<double, double> merged;
        for (auto [v, p] : value_prob) merged[v] += p;
        DiscreteDistribution d;
        for (auto [v, p] : merged) {
            d.outcomes.push_back(std::to_string(v));
            d.probs.push_back(p);
        }
        return d;
    }
};

// Shannon entropy in bits. Zero-probability terms contribute nothing.
inline double shannon_entropy(const DiscreteDistribution& d) {
    d.validate();
    double h = 0.0;
    for (double p : d.probs)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

inline double shannon_entropy(const std::vector<double>& probs) {
    DiscreteDistribution d;
    d.probs = probs;
    d.outcomes.resize(probs.size());
    return shannon_entropy(d);
}

} // namespace msfs::measures
